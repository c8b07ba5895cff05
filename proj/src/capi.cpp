#include "fgfp/fgfp.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "corpus.hpp"
#include "error.hpp"
#include "problem_io.hpp"
#include "report.hpp"

struct fgfp_problem {
  fgfp::ProblemSpec spec;
  std::optional<std::string> id;
  std::optional<std::string> citation;
};

struct fgfp_solution {
  fgfp::FGFixedPointResult result;
};

namespace {

thread_local std::string last_error;

fgfp_status fail(fgfp_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

fgfp_status status_for(fgfp::ErrorKind kind) {
  switch (fgfp::exit_code_for(kind)) {
    case fgfp::kExitHypothesis: return FGFP_ERR_HYPOTHESIS;
    case fgfp::kExitNotConverged: return FGFP_ERR_NOT_CONVERGED;
    default: return FGFP_ERR_INPUT;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

fgfp::RunOptions convert(const fgfp_options* o) {
  fgfp_options d;
  fgfp_options_init(&d);
  if (!o) o = &d;
  fgfp::RunOptions r;
  r.tol = o->tol;
  r.max_iter = o->max_iter;
  r.sampler.rng_seed = o->rng_seed;
  r.sampler.samples_per_check = o->samples_per_check;
  r.force = o->force != 0;
  r.timing = o->timing != 0;
  return r;
}

template <typename Fn>
fgfp_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const fgfp::Error& e) {
    return fail(status_for(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FGFP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FGFP_ERR_INTERNAL, e.what());
  }
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

extern "C" {

void fgfp_options_init(fgfp_options* opts) {
  if (!opts) return;
  opts->tol = 1e-10;
  opts->max_iter = 10000;
  opts->rng_seed = 1;
  opts->samples_per_check = 2000;
  opts->force = 0;
  opts->timing = 0;
}

const char* fgfp_version(void) { return "1.0.0"; }

const char* fgfp_last_error(void) { return last_error.c_str(); }

void fgfp_free_string(char* s) { std::free(s); }

fgfp_status fgfp_problem_parse(const char* json, const char* source_name, fgfp_problem** out) {
  if (!json || !out) return fail(FGFP_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    fgfp::LoadedProblem lp = fgfp::parse_problem(json, source_name ? source_name : "<input>");
    *out = new fgfp_problem{std::move(lp.problem), std::move(lp.id), std::move(lp.citation)};
    return FGFP_OK;
  });
}

fgfp_status fgfp_problem_from_corpus(const char* id, fgfp_problem** out) {
  if (!id || !out) return fail(FGFP_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const fgfp::CorpusEntry* e = fgfp::find_entry(id);
    if (!e) return fail(FGFP_ERR_INPUT, std::string("unknown corpus id '") + id + "'");
    *out = new fgfp_problem{e->problem, e->id, e->citation};
    return FGFP_OK;
  });
}

void fgfp_problem_free(fgfp_problem* p) { delete p; }

fgfp_status fgfp_problem_to_json(const fgfp_problem* p, char** out) {
  if (!p || !out) return fail(FGFP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(dump(fgfp::problem_to_json(p->spec, p->id, p->citation)));
    return FGFP_OK;
  });
}

size_t fgfp_corpus_size(void) { return fgfp::builtin_problems().size(); }

fgfp_status fgfp_corpus_entry(size_t index, const char** id, const char** citation) {
  const auto& all = fgfp::builtin_problems();
  if (index >= all.size()) return fail(FGFP_ERR_INVALID_ARGUMENT, "corpus index out of range");
  if (id) *id = all[index].id.c_str();
  if (citation) *citation = all[index].citation.c_str();
  return FGFP_OK;
}

fgfp_status fgfp_check(const fgfp_problem* p, const fgfp_options* opts, int* exit_code,
                       char** report) {
  if (!p || !exit_code || !report) return fail(FGFP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    fgfp::CommandResult r = fgfp::run_check(p->spec, convert(opts));
    *report = dup(dump(r.report));
    *exit_code = r.exit_code;
    return FGFP_OK;
  });
}

fgfp_status fgfp_solve(const fgfp_problem* p, const fgfp_options* opts, int* exit_code,
                       char** report, char** trace_csv, fgfp_solution** solution) {
  if (!p || !exit_code || !report) return fail(FGFP_ERR_INVALID_ARGUMENT, "null argument");
  if (trace_csv) *trace_csv = nullptr;
  if (solution) *solution = nullptr;
  return guarded([&] {
    fgfp::CommandResult r = fgfp::run_solve(p->spec, convert(opts));
    *report = dup(dump(r.report));
    if (trace_csv && r.outcome) *trace_csv = dup(r.trace_csv);
    if (solution && r.outcome) *solution = new fgfp_solution{r.outcome->result};
    *exit_code = r.exit_code;
    return FGFP_OK;
  });
}

fgfp_status fgfp_unique(const fgfp_problem* p, const char* seeds_json, const char* seeds_source,
                        const fgfp_options* opts, int* exit_code, char** report) {
  if (!p || !exit_code || !report) return fail(FGFP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<fgfp::ProductPoint> seeds;
    if (seeds_json) seeds = fgfp::parse_seeds(seeds_json, seeds_source ? seeds_source : "<seeds>", p->spec);
    fgfp::CommandResult r = fgfp::run_unique(p->spec, seeds, convert(opts));
    *report = dup(dump(r.report));
    *exit_code = r.exit_code;
    return FGFP_OK;
  });
}

fgfp_status fgfp_corpus_run_all(const fgfp_options* opts, int* exit_code, char** report) {
  if (!exit_code || !report) return fail(FGFP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    fgfp::CommandResult r = fgfp::run_corpus_all(convert(opts));
    *report = dup(dump(r.report));
    *exit_code = r.exit_code;
    return FGFP_OK;
  });
}

void fgfp_solution_free(fgfp_solution* s) { delete s; }

int fgfp_solution_converged(const fgfp_solution* s) { return s && s->result.converged ? 1 : 0; }

size_t fgfp_solution_iterations(const fgfp_solution* s) { return s ? s->result.iterations : 0; }

size_t fgfp_solution_dim_x(const fgfp_solution* s) { return s ? s->result.x_star.dim() : 0; }

size_t fgfp_solution_dim_y(const fgfp_solution* s) { return s ? s->result.y_star.dim() : 0; }

static size_t copy_point(const fgfp::Point& p, double* buf, size_t len) {
  for (size_t i = 0; buf && i < len && i < p.dim(); ++i) buf[i] = p[i];
  return p.dim();
}

size_t fgfp_solution_x(const fgfp_solution* s, double* buf, size_t len) {
  return s ? copy_point(s->result.x_star, buf, len) : 0;
}

size_t fgfp_solution_y(const fgfp_solution* s, double* buf, size_t len) {
  return s ? copy_point(s->result.y_star, buf, len) : 0;
}

double fgfp_solution_residual_x(const fgfp_solution* s) { return s ? s->result.residual_x : 0.0; }

double fgfp_solution_residual_y(const fgfp_solution* s) { return s ? s->result.residual_y : 0.0; }

size_t fgfp_solution_bound_violations(const fgfp_solution* s) {
  return s ? s->result.bound_violations.size() : 0;
}

}  // extern "C"
