#include "problem_io.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "error.hpp"

namespace fgfp {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

struct TextPos {
  std::size_t line = 1;
  std::size_t column = 1;
};

std::string pointer_escape(std::string_view token) {
  std::string out;
  for (char c : token) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

/// Records the text position of every member key and value by JSON pointer.
/// Only run on text nlohmann has already accepted.
class JsonLocator {
 public:
  explicit JsonLocator(std::string_view text) { scan(text); }

  std::optional<TextPos> value(const std::string& ptr) const { return find(values_, ptr); }
  std::optional<TextPos> key(const std::string& ptr) const { return find(keys_, ptr); }

 private:
  struct Frame {
    bool object;
    std::string prefix;
    std::string key;
    std::size_t index = 0;
    bool want_key = true;
  };

  static std::optional<TextPos> find(const std::map<std::string, TextPos>& m, const std::string& k) {
    auto it = m.find(k);
    if (it == m.end()) return std::nullopt;
    return it->second;
  }

  void scan(std::string_view t) {
    std::vector<Frame> stack;
    TextPos pos;
    std::size_t i = 0;
    auto advance = [&] {
      if (t[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
      ++i;
    };
    auto skip_string = [&] {
      std::string s;
      advance();  // opening quote
      while (i < t.size() && t[i] != '"') {
        if (t[i] == '\\' && i + 1 < t.size()) {
          s += t[i + 1];
          advance();
        } else {
          s += t[i];
        }
        advance();
      }
      if (i < t.size()) advance();
      return s;
    };
    auto current_path = [&]() -> std::string {
      if (stack.empty()) return "";
      const Frame& f = stack.back();
      return f.object ? f.prefix + "/" + pointer_escape(f.key)
                      : f.prefix + "/" + std::to_string(f.index);
    };

    while (i < t.size()) {
      const char c = t[i];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ':') {
        advance();
        continue;
      }
      if (c == ',') {
        if (!stack.empty()) {
          if (stack.back().object) stack.back().want_key = true;
          else ++stack.back().index;
        }
        advance();
        continue;
      }
      if (c == '}' || c == ']') {
        if (!stack.empty()) stack.pop_back();
        advance();
        continue;
      }
      if (!stack.empty() && stack.back().object && stack.back().want_key && c == '"') {
        const TextPos at = pos;
        stack.back().key = skip_string();
        stack.back().want_key = false;
        keys_[current_path()] = at;
        continue;
      }
      const std::string path = current_path();
      values_[path] = pos;
      if (c == '{' || c == '[') {
        stack.push_back(Frame{c == '{', path, {}, 0, true});
        advance();
      } else if (c == '"') {
        skip_string();
      } else {
        while (i < t.size() && t[i] != ',' && t[i] != '}' && t[i] != ']' && t[i] != ' ' &&
               t[i] != '\n' && t[i] != '\t' && t[i] != '\r')
          advance();
      }
    }
  }

  std::map<std::string, TextPos> values_;
  std::map<std::string, TextPos> keys_;
};

TextPos position_of_byte(std::string_view text, std::size_t byte) {
  TextPos pos;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

class Reader {
 public:
  Reader(std::string_view text, std::string_view source) : text_(text), source_(source) {
    try {
      root_ = json::parse(text_.begin(), text_.end());
    } catch (const json::parse_error& e) {
      const TextPos p = position_of_byte(text_, e.byte);
      throw Error(ErrorKind::Input, anchor(p) + "invalid JSON: " + strip_prefix(e.what()));
    }
    locator_.emplace(text_);
  }

  const json& root() const { return root_; }

  [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
    std::optional<TextPos> p = locator_->value(ptr);
    if (!p) p = locator_->key(ptr);
    throw Error(ErrorKind::Input, anchor(p.value_or(TextPos{})) + describe(ptr) + msg);
  }

  [[noreturn]] void fail_key(const std::string& ptr, const std::string& msg) const {
    std::optional<TextPos> p = locator_->key(ptr);
    if (!p) p = locator_->value(ptr);
    throw Error(ErrorKind::Input, anchor(p.value_or(TextPos{})) + describe(ptr) + msg);
  }

  [[noreturn]] void fail_at(const std::string& ptr, std::size_t offset, const std::string& msg) const {
    TextPos p = locator_->value(ptr).value_or(TextPos{});
    p.column += offset;
    throw Error(ErrorKind::Input, anchor(p) + describe(ptr) + msg);
  }

  const json& object(const json& j, const std::string& ptr,
                     std::initializer_list<const char*> allowed) const {
    if (!j.is_object()) fail(ptr, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      const bool known = std::any_of(allowed.begin(), allowed.end(),
                                     [&](const char* a) { return it.key() == a; });
      if (!known) fail_key(ptr + "/" + pointer_escape(it.key()), "unknown key '" + it.key() + "'");
    }
    return j;
  }

  const json& member(const json& obj, const std::string& ptr, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(ptr, std::string("missing required key '") + key + "'");
    return *it;
  }

  const json* optional_member(const json& obj, const char* key) const {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }

  double number(const json& j, const std::string& ptr) const {
    if (!j.is_number()) fail(ptr, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(ptr, "number is not finite");
    return v;
  }

  std::string string(const json& j, const std::string& ptr) const {
    if (!j.is_string()) fail(ptr, "expected a string");
    return j.get<std::string>();
  }

  std::vector<double> numbers(const json& j, const std::string& ptr,
                              std::optional<std::size_t> len = std::nullopt) const {
    if (!j.is_array()) fail(ptr, "expected an array of numbers");
    if (len && j.size() != *len) {
      fail(ptr, "expected " + std::to_string(*len) + " entries, found " + std::to_string(j.size()));
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], ptr + "/" + std::to_string(i)));
    return out;
  }

  // Numbers, or "-inf" / "inf" for an unbounded side.
  std::vector<double> bounds(const json& j, const std::string& ptr, std::size_t len, bool lower) const {
    if (!j.is_array()) fail(ptr, "expected an array");
    if (j.size() != len) {
      fail(ptr, "expected " + std::to_string(len) + " entries, found " + std::to_string(j.size()));
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string p = ptr + "/" + std::to_string(i);
      if (j[i].is_string()) {
        const std::string s = j[i].get<std::string>();
        if (lower && s == "-inf") out.push_back(-HUGE_VAL);
        else if (!lower && s == "inf") out.push_back(HUGE_VAL);
        else fail(p, lower ? "expected a number or \"-inf\"" : "expected a number or \"inf\"");
      } else {
        out.push_back(number(j[i], p));
      }
    }
    return out;
  }

  Point point(const json& j, const std::string& ptr, std::size_t dim) const {
    return Point(numbers(j, ptr, dim));
  }

 private:
  static std::string strip_prefix(const std::string& what) {
    // "[json.exception.parse_error.101] parse error at line 1, column 2: ..."
    const auto pos = what.find("] ");
    return pos == std::string::npos ? what : what.substr(pos + 2);
  }
  std::string anchor(const TextPos& p) const {
    return std::string(source_) + ":" + std::to_string(p.line) + ":" + std::to_string(p.column) + ": ";
  }
  static std::string describe(const std::string& ptr) {
    return ptr.empty() ? "" : ptr + ": ";
  }

  std::string_view text_;
  std::string_view source_;
  json root_;
  std::optional<JsonLocator> locator_;
};

// Runs `fn`, re-anchoring core-library errors at `ptr`.
template <typename Fn>
auto anchored(const Reader& r, const std::string& ptr, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    r.fail(ptr, e.what());
  }
}

SpaceSpec read_space(const Reader& r, const json& j, const std::string& ptr) {
  r.object(j, ptr, {"dim", "lower", "upper", "metric", "order", "sampling_box"});
  const json& jd = r.member(j, ptr, "dim");
  if (!jd.is_number_integer() || jd.get<long long>() < 1) r.fail(ptr + "/dim", "expected a positive integer");
  const auto dim = static_cast<std::size_t>(jd.get<long long>());
  std::vector<double> lower = r.bounds(r.member(j, ptr, "lower"), ptr + "/lower", dim, true);
  std::vector<double> upper = r.bounds(r.member(j, ptr, "upper"), ptr + "/upper", dim, false);
  for (std::size_t i = 0; i < dim; ++i) {
    if (lower[i] > upper[i]) r.fail(ptr + "/lower/" + std::to_string(i), "lower bound exceeds upper bound");
  }

  MetricSpec metric;
  if (const json* jm = r.optional_member(j, "metric")) {
    const std::string mp = ptr + "/metric";
    r.object(*jm, mp, {"kind", "weights"});
    const std::string kind = r.string(r.member(*jm, mp, "kind"), mp + "/kind");
    const json* jw = r.optional_member(*jm, "weights");
    if (kind == "L1") {
      if (jw) r.fail_key(mp + "/weights", "weights are only allowed for WEIGHTED_L1");
    } else if (kind == "WEIGHTED_L1") {
      if (!jw) r.fail(mp, "WEIGHTED_L1 requires 'weights'");
      auto w = r.numbers(*jw, mp + "/weights", dim);
      metric = anchored(r, mp + "/weights", [&] { return MetricSpec::weighted_l1(std::move(w)); });
    } else {
      r.fail(mp + "/kind", "unknown metric kind '" + kind + "' (expected L1 or WEIGHTED_L1)");
    }
  }

  OrderSpec order;
  if (const json* jo = r.optional_member(j, "order")) {
    const std::string op = ptr + "/order";
    r.object(*jo, op, {"kind", "extra_pairs", "slack"});
    const std::string kind_s = r.string(r.member(*jo, op, "kind"), op + "/kind");
    OrderKind kind;
    if (kind_s == "COMPONENTWISE") kind = OrderKind::Componentwise;
    else if (kind_s == "COMPONENTWISE_REVERSED") kind = OrderKind::ComponentwiseReversed;
    else if (kind_s == "DISCRETE") kind = OrderKind::Discrete;
    else if (kind_s == "DISCRETE_PLUS_PAIRS") kind = OrderKind::DiscretePlusPairs;
    else r.fail(op + "/kind", "unknown order kind '" + kind_s + "'");
    double slack = kDefaultSlack;
    if (const json* js = r.optional_member(*jo, "slack")) {
      slack = r.number(*js, op + "/slack");
      if (slack < 0.0) r.fail(op + "/slack", "slack must be nonnegative");
    }
    std::vector<std::pair<Point, Point>> pairs;
    if (const json* jp = r.optional_member(*jo, "extra_pairs")) {
      const std::string pp = op + "/extra_pairs";
      if (kind != OrderKind::DiscretePlusPairs) r.fail_key(pp, "extra_pairs are only allowed for DISCRETE_PLUS_PAIRS");
      if (!jp->is_array()) r.fail(pp, "expected an array of [a, b] pairs");
      for (std::size_t i = 0; i < jp->size(); ++i) {
        const std::string ip = pp + "/" + std::to_string(i);
        const json& pr = (*jp)[i];
        if (!pr.is_array() || pr.size() != 2) r.fail(ip, "expected a pair [a, b]");
        pairs.emplace_back(r.point(pr[0], ip + "/0", dim), r.point(pr[1], ip + "/1", dim));
      }
    }
    order = anchored(r, op, [&] { return OrderSpec(kind, std::move(pairs), slack); });
  }

  std::optional<Box> box;
  if (const json* jb = r.optional_member(j, "sampling_box")) {
    const std::string bp = ptr + "/sampling_box";
    r.object(*jb, bp, {"lower", "upper"});
    box = Box{r.numbers(r.member(*jb, bp, "lower"), bp + "/lower", dim),
              r.numbers(r.member(*jb, bp, "upper"), bp + "/upper", dim)};
    for (std::size_t i = 0; i < dim; ++i) {
      if (box->lower[i] > box->upper[i]) r.fail(bp + "/lower/" + std::to_string(i), "lower exceeds upper");
      if (box->lower[i] < lower[i] || box->upper[i] > upper[i]) {
        r.fail(bp, "sampling box must lie inside the space bounds");
      }
    }
  }

  return anchored(r, ptr, [&] {
    return SpaceSpec(dim, std::move(lower), std::move(upper), std::move(metric), std::move(order),
                     std::move(box));
  });
}

MapSpec read_map(const Reader& r, const json& j, const std::string& ptr, std::size_t first,
                 std::size_t second, std::size_t out) {
  const std::string text = r.string(j, ptr);
  try {
    return MapSpec::parse(text, first, second, out);
  } catch (const ParseError& e) {
    // +1 skips the opening quote; escape sequences are not expected in expressions.
    r.fail_at(ptr, std::min(e.position(), text.size() + 1), "expression error at column " +
                                                              std::to_string(e.position()) + ": " +
                                                              e.message());
  } catch (const Error& e) {
    r.fail(ptr, e.what());
  }
}

ojson bounds_json(const std::vector<double>& v, bool lower) {
  ojson a = ojson::array();
  for (double x : v) {
    if (std::isinf(x)) a.push_back(lower ? "-inf" : "inf");
    else a.push_back(x);
  }
  return a;
}

ojson space_json(const SpaceSpec& s) {
  ojson j;
  j["dim"] = s.dim();
  j["lower"] = bounds_json(s.lower(), true);
  j["upper"] = bounds_json(s.upper(), false);
  ojson m;
  if (s.metric().kind() == MetricKind::L1) {
    m["kind"] = "L1";
  } else {
    m["kind"] = "WEIGHTED_L1";
    m["weights"] = s.metric().weights();
  }
  j["metric"] = m;
  ojson o;
  switch (s.order().kind()) {
    case OrderKind::Componentwise: o["kind"] = "COMPONENTWISE"; break;
    case OrderKind::ComponentwiseReversed: o["kind"] = "COMPONENTWISE_REVERSED"; break;
    case OrderKind::Discrete: o["kind"] = "DISCRETE"; break;
    case OrderKind::DiscretePlusPairs: o["kind"] = "DISCRETE_PLUS_PAIRS"; break;
  }
  if (s.order().kind() == OrderKind::DiscretePlusPairs) {
    ojson pairs = ojson::array();
    for (const auto& [a, b] : s.order().extra_pairs()) pairs.push_back(ojson::array({to_json(a), to_json(b)}));
    o["extra_pairs"] = pairs;
  }
  o["slack"] = s.order().slack();
  j["order"] = o;
  j["sampling_box"] = {{"lower", s.sampling_box().lower}, {"upper", s.sampling_box().upper}};
  return j;
}

}  // namespace

ojson to_json(const Point& p) {
  ojson a = ojson::array();
  for (double c : p.coords()) a.push_back(c);
  return a;
}

ojson number_json(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

LoadedProblem parse_problem(std::string_view text, std::string_view source) {
  Reader r(text, source);
  const json& root = r.root();
  r.object(root, "", {"id", "citation", "spaces", "maps", "family", "seed", "expected"});

  LoadedProblem out{
      .problem = [&]() -> ProblemSpec {
        const json& spaces = r.object(r.member(root, "", "spaces"), "/spaces", {"X", "Y"});
        SpaceSpec X = read_space(r, r.member(spaces, "/spaces", "X"), "/spaces/X");
        SpaceSpec Y = read_space(r, r.member(spaces, "/spaces", "Y"), "/spaces/Y");

        const json& maps = r.object(r.member(root, "", "maps"), "/maps", {"F", "G"});
        MapSpec F = read_map(r, r.member(maps, "/maps", "F"), "/maps/F", X.dim(), Y.dim(), X.dim());
        MapSpec G = read_map(r, r.member(maps, "/maps", "G"), "/maps/G", Y.dim(), X.dim(), Y.dim());

        const json& fam = r.object(r.member(root, "", "family"), "/family", {"kind", "k", "l"});
        const std::string kind_s = r.string(r.member(fam, "/family", "kind"), "/family/kind");
        const auto kind = family_from_name(kind_s);
        if (!kind) {
          r.fail("/family/kind", "unknown family '" + kind_s +
                                     "' (expected SYM_HALF, LIN_ASYM, KANNAN or CHATTERJEA)");
        }
        const double k = r.number(r.member(fam, "/family", "k"), "/family/k");
        const double l = r.number(r.member(fam, "/family", "l"), "/family/l");
        ContractionFamily family =
            anchored(r, "/family", [&] { return ContractionFamily(*kind, k, l); });

        const json& seed = r.object(r.member(root, "", "seed"), "/seed", {"x0", "y0"});
        ProductPoint s{r.point(r.member(seed, "/seed", "x0"), "/seed/x0", X.dim()),
                       r.point(r.member(seed, "/seed", "y0"), "/seed/y0", Y.dim())};
        if (!X.contains(s.x)) r.fail("/seed/x0", "seed lies outside X");
        if (!Y.contains(s.y)) r.fail("/seed/y0", "seed lies outside Y");

        std::optional<ProductPoint> fixed;
        std::optional<bool> unique;
        if (const json* je = r.optional_member(root, "expected")) {
          r.object(*je, "/expected", {"fixed_point", "unique"});
          if (const json* jf = r.optional_member(*je, "fixed_point")) {
            r.object(*jf, "/expected/fixed_point", {"x", "y"});
            fixed = ProductPoint{
                r.point(r.member(*jf, "/expected/fixed_point", "x"), "/expected/fixed_point/x", X.dim()),
                r.point(r.member(*jf, "/expected/fixed_point", "y"), "/expected/fixed_point/y", Y.dim())};
          }
          if (const json* ju = r.optional_member(*je, "unique")) {
            if (!ju->is_boolean()) r.fail("/expected/unique", "expected true or false");
            unique = ju->get<bool>();
          }
        }
        return ProblemSpec{std::move(X), std::move(Y), std::move(F), std::move(G), family,
                           std::move(s), std::move(fixed), unique};
      }(),
      .id = std::nullopt,
      .citation = std::nullopt,
  };
  if (const json* ji = r.optional_member(root, "id")) out.id = r.string(*ji, "/id");
  if (const json* jc = r.optional_member(root, "citation")) out.citation = r.string(*jc, "/citation");
  anchored(r, "", [&] {
    out.problem.validate();
    return 0;
  });
  return out;
}

ojson problem_to_json(const ProblemSpec& p, const std::optional<std::string>& id,
                      const std::optional<std::string>& citation) {
  ojson j;
  if (id) j["id"] = *id;
  if (citation) j["citation"] = *citation;
  j["spaces"] = {{"X", space_json(p.X)}, {"Y", space_json(p.Y)}};
  j["maps"] = {{"F", p.F.source()}, {"G", p.G.source()}};
  j["family"] = {{"kind", family_name(p.family.kind())}, {"k", p.family.k()}, {"l", p.family.l()}};
  j["seed"] = {{"x0", to_json(p.seed.x)}, {"y0", to_json(p.seed.y)}};
  if (p.declared_fixed_point || p.expected_unique) {
    ojson e = ojson::object();
    if (p.declared_fixed_point) {
      e["fixed_point"] = {{"x", to_json(p.declared_fixed_point->x)},
                          {"y", to_json(p.declared_fixed_point->y)}};
    }
    if (p.expected_unique) e["unique"] = *p.expected_unique;
    j["expected"] = e;
  }
  return j;
}

std::vector<ProductPoint> parse_seeds(std::string_view text, std::string_view source,
                                      const ProblemSpec& problem) {
  Reader r(text, source);
  const json& root = r.object(r.root(), "", {"seeds"});
  const json& list = r.member(root, "", "seeds");
  if (!list.is_array()) r.fail("/seeds", "expected an array of seeds");
  std::vector<ProductPoint> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string ptr = "/seeds/" + std::to_string(i);
    const json& s = r.object(list[i], ptr, {"x0", "y0"});
    ProductPoint p{r.point(r.member(s, ptr, "x0"), ptr + "/x0", problem.X.dim()),
                   r.point(r.member(s, ptr, "y0"), ptr + "/y0", problem.Y.dim())};
    if (!problem.X.contains(p.x)) r.fail(ptr + "/x0", "seed lies outside X");
    if (!problem.Y.contains(p.y)) r.fail(ptr + "/y0", "seed lies outside Y");
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace fgfp
