// fgfp: command-line front end over the C API.
//
//   fgfp solve  <problem.json> [--tol T] [--max-iter N] [--out F] [--trace F] [--force]
//   fgfp check  <problem.json>
//   fgfp unique <problem.json> --seeds <seeds.json>
//   fgfp corpus list | export <id> | run-all
//
// Exit codes: 0 success, 1 input error, 2 hypothesis failure, 3 non-convergence.

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fgfp/fgfp.h"

namespace {

struct Flags {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  std::uint64_t rng_seed = 1;
  std::size_t samples = 2000;
  bool force = false;
  bool timing = false;
  std::string out;
  std::string trace;
};

struct Failure {
  int code;
  std::string message;
};

using ProblemPtr = std::unique_ptr<fgfp_problem, decltype(&fgfp_problem_free)>;
using CString = std::unique_ptr<char, decltype(&fgfp_free_string)>;

CString own(char* s) { return CString(s, &fgfp_free_string); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{1, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{1, "cannot write '" + path + "'"};
  out << text;
}

void check(fgfp_status s) {
  if (s != FGFP_OK) {
    int code = s == FGFP_ERR_HYPOTHESIS ? 2 : s == FGFP_ERR_NOT_CONVERGED ? 3 : 1;
    throw Failure{code, fgfp_last_error()};
  }
}

ProblemPtr load(const std::string& path) {
  const std::string text = read_file(path);
  fgfp_problem* p = nullptr;
  check(fgfp_problem_parse(text.c_str(), path.c_str(), &p));
  return ProblemPtr(p, &fgfp_problem_free);
}

fgfp_options to_options(const Flags& f) {
  fgfp_options o;
  fgfp_options_init(&o);
  o.tol = f.tol;
  o.max_iter = f.max_iter;
  o.rng_seed = f.rng_seed;
  o.samples_per_check = f.samples;
  o.force = f.force ? 1 : 0;
  o.timing = f.timing ? 1 : 0;
  return o;
}

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--tol", f.tol, "step-sum stopping tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", f.max_iter, "iteration cap")->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "report path (default stdout)");
  cmd->add_flag("--force", f.force, "run even when hypotheses fail");
  cmd->add_option("--rng-seed", f.rng_seed, "sampler seed (default $FGFP_RNG_SEED or 1)");
  cmd->add_option("--samples", f.samples, "samples per hypothesis check")->check(CLI::PositiveNumber);
  cmd->add_flag("--timing", f.timing, "include wall-clock timing in the report");
}

std::optional<std::uint64_t> env_seed() {
  const char* v = std::getenv("FGFP_RNG_SEED");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const unsigned long long s = std::strtoull(v, &end, 10);
  if (errno != 0 || *end != '\0' || *v == '-') throw Failure{1, "FGFP_RNG_SEED is not an unsigned integer"};
  return s;
}

int run(int argc, char** argv) {
  CLI::App app{"FG-coupled fixed point solver"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fgfp_version());

  Flags flags;
  if (auto s = env_seed()) flags.rng_seed = *s;
  std::string file;
  std::string seeds_path;
  std::string export_id;

  CLI::App* solve = app.add_subcommand("solve", "audit hypotheses, iterate, verify bounds");
  solve->add_option("file", file, "problem file")->required();
  add_run_flags(solve, flags);
  solve->add_option("--trace", flags.trace, "trace CSV path");

  CLI::App* chk = app.add_subcommand("check", "hypothesis audit only");
  chk->add_option("file", file, "problem file")->required();
  add_run_flags(chk, flags);

  CLI::App* uniq = app.add_subcommand("unique", "solve from several seeds and compare limits");
  uniq->add_option("file", file, "problem file")->required();
  uniq->add_option("--seeds", seeds_path, "seeds file")->required();
  add_run_flags(uniq, flags);

  CLI::App* corpus = app.add_subcommand("corpus", "built-in problems");
  corpus->require_subcommand(1);
  CLI::App* list = corpus->add_subcommand("list", "print entry ids and citations");
  CLI::App* exp = corpus->add_subcommand("export", "write an entry as a problem file");
  exp->add_option("id", export_id, "entry id")->required();
  exp->add_option("--out", flags.out, "output path (default stdout)");
  CLI::App* all = corpus->add_subcommand("run-all", "solve every entry");
  add_run_flags(all, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const fgfp_options opts = to_options(flags);
  int exit_code = 0;
  char* report = nullptr;

  if (*solve) {
    ProblemPtr p = load(file);
    char* trace = nullptr;
    check(fgfp_solve(p.get(), &opts, &exit_code, &report, flags.trace.empty() ? nullptr : &trace, nullptr));
    CString r = own(report);
    CString t = own(trace);
    if (!flags.trace.empty() && t) write_output(flags.trace, t.get());
    write_output(flags.out, r.get());
    return exit_code;
  }
  if (*chk) {
    ProblemPtr p = load(file);
    check(fgfp_check(p.get(), &opts, &exit_code, &report));
    write_output(flags.out, own(report).get());
    return exit_code;
  }
  if (*uniq) {
    ProblemPtr p = load(file);
    const std::string seeds = read_file(seeds_path);
    check(fgfp_unique(p.get(), seeds.c_str(), seeds_path.c_str(), &opts, &exit_code, &report));
    write_output(flags.out, own(report).get());
    return exit_code;
  }
  if (*list) {
    std::string text;
    for (std::size_t i = 0; i < fgfp_corpus_size(); ++i) {
      const char* id = nullptr;
      const char* cite = nullptr;
      check(fgfp_corpus_entry(i, &id, &cite));
      text += std::string(id) + "\t" + cite + "\n";
    }
    write_output("", text);
    return 0;
  }
  if (*exp) {
    fgfp_problem* raw = nullptr;
    check(fgfp_problem_from_corpus(export_id.c_str(), &raw));
    ProblemPtr p(raw, &fgfp_problem_free);
    char* json = nullptr;
    check(fgfp_problem_to_json(p.get(), &json));
    write_output(flags.out, own(json).get());
    return 0;
  }
  if (*all) {
    check(fgfp_corpus_run_all(&opts, &exit_code, &report));
    write_output(flags.out, own(report).get());
    return exit_code;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Failure& f) {
    std::fprintf(stderr, "fgfp: error: %s\n", f.message.c_str());
    return f.code;
  }
}
