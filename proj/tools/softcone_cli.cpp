// softcone command-line front end. Talks to the library only through the C API.

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "softcone/softcone.h"

namespace {

struct Problem {
  softcone_problem* p = nullptr;
  ~Problem() { softcone_problem_free(p); }
};

struct Certificate {
  softcone_certificate* c = nullptr;
  ~Certificate() { softcone_certificate_free(c); }
};

struct Text {
  char* s = nullptr;
  ~Text() { softcone_string_free(s); }
};

int report_error(softcone_status s) {
  std::cerr << "softcone: " << softcone_status_name(s) << ": " << softcone_last_error() << "\n";
  return static_cast<int>(s);
}

bool write_file(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) {
    std::cerr << "softcone: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

// "<dir>/run.csv" -> "<dir>/run_maxnorm.csv"
std::string maxnorm_path(const std::string& trace) {
  const auto slash = trace.find_last_of('/');
  const auto dot = trace.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return trace + "_maxnorm.csv";
  return trace.substr(0, dot) + "_maxnorm" + trace.substr(dot);
}

softcone_status load(const std::string& path, std::optional<std::uint64_t> seed, Problem& out) {
  softcone_status s = softcone_problem_load_file(path.c_str(), &out.p);
  if (s != SOFTCONE_OK) return s;
  if (seed) softcone_problem_set_seed(out.p, *seed);
  if (softcone_problem_max_iter_is_default(out.p)) {
    if (const char* env = std::getenv("SOFTCONE_MAX_ITER")) {
      char* end = nullptr;
      errno = 0;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (errno != 0 || end == env || *end != '\0' || env[0] == '-') {
        std::cerr << "softcone: SOFTCONE_MAX_ITER must be a positive integer\n";
        return SOFTCONE_INVALID_INPUT;
      }
      s = softcone_problem_set_max_iter(out.p, v);
    }
  }
  return s;
}

int cmd_solve(const std::string& problem_path, const std::string& out_path, const std::string& trace_path,
              std::optional<std::uint64_t> seed, bool print_certificate) {
  Problem problem;
  if (const auto s = load(problem_path, seed, problem); s != SOFTCONE_OK) return report_error(s);

  Certificate cert;
  const softcone_status solved = softcone_solve(problem.p, &cert.c);
  const std::string solve_error = softcone_last_error();
  if (cert.c) {
    Text json;
    if (const auto s = softcone_certificate_json(cert.c, &json.s); s != SOFTCONE_OK) return report_error(s);
    if (out_path.empty()) {
      if (print_certificate) std::cout << json.s;
    }
    else if (!write_file(out_path, json.s))
      return SOFTCONE_INVALID_INPUT;

    if (!trace_path.empty()) {
      Text long_csv, max_csv;
      if (const auto s = softcone_certificate_trace_csv(cert.c, SOFTCONE_TRACE_RESIDUALS, &long_csv.s); s != SOFTCONE_OK)
        return report_error(s);
      if (const auto s = softcone_certificate_trace_csv(cert.c, SOFTCONE_TRACE_MAXNORM, &max_csv.s); s != SOFTCONE_OK)
        return report_error(s);
      if (!write_file(trace_path, long_csv.s) || !write_file(maxnorm_path(trace_path), max_csv.s))
        return SOFTCONE_INVALID_INPUT;
    }
  }
  if (solved != SOFTCONE_OK) {
    std::cerr << "softcone: " << softcone_status_name(solved) << ": " << solve_error << "\n";
    return static_cast<int>(solved);
  }
  return 0;
}

int cmd_check_axioms(const std::string& problem_path, std::uint64_t trials, std::optional<std::uint64_t> seed) {
  Problem problem;
  if (const auto s = load(problem_path, seed, problem); s != SOFTCONE_OK) return report_error(s);
  Text report;
  const auto s = softcone_check_axioms(problem.p, trials, softcone_problem_seed(problem.p), &report.s);
  if (report.s) std::cout << report.s;
  return s == SOFTCONE_OK ? 0 : report_error(s);
}

int cmd_slice(const std::string& problem_path, const std::string& label, std::optional<std::uint64_t> seed) {
  Problem problem;
  if (const auto s = load(problem_path, seed, problem); s != SOFTCONE_OK) return report_error(s);
  Text report;
  const auto s = softcone_slice(problem.p, label.c_str(), softcone_problem_seed(problem.p), &report.s);
  if (report.s) std::cout << report.s;
  return s == SOFTCONE_OK ? 0 : report_error(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Soft cone metric spaces and certified fixed-point solvers"};
  app.require_subcommand(1);

  std::string problem, out, trace, label;
  std::uint64_t trials = 1000;
  std::optional<std::uint64_t> seed;

  auto* solve = app.add_subcommand("solve", "Solve a fixed-point problem and write its certificate");
  solve->add_option("--problem", problem, "Problem JSON file")->required();
  solve->add_option("--out", out, "Certificate output path (stdout if omitted)");
  solve->add_option("--trace", trace, "Residual trace CSV path");
  solve->add_option("--seed", seed, "Seed for contraction sampling");

  auto* trace_cmd = app.add_subcommand("trace", "Solve and export the residual trace CSVs");
  trace_cmd->add_option("--problem", problem, "Problem JSON file")->required();
  trace_cmd->add_option("--trace", trace, "Residual trace CSV path")->required();
  trace_cmd->add_option("--out", out, "Certificate output path");
  trace_cmd->add_option("--seed", seed, "Seed for contraction sampling");

  auto* axioms = app.add_subcommand("check-axioms", "Randomized check of the metric axioms");
  axioms->add_option("--problem", problem, "Problem JSON file")->required();
  axioms->add_option("--trials", trials, "Number of trials")->capture_default_str();
  axioms->add_option("--seed", seed, "Seed");

  auto* slice = app.add_subcommand("slice", "Slice the metric at one parameter");
  slice->add_option("--problem", problem, "Problem JSON file")->required();
  slice->add_option("--label", label, "Parameter label")->required();
  slice->add_option("--seed", seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : SOFTCONE_INVALID_INPUT;
  }

  if (*solve) return cmd_solve(problem, out, trace, seed, true);
  if (*trace_cmd) return cmd_solve(problem, out, trace, seed, false);
  if (*axioms) return cmd_check_axioms(problem, trials, seed);
  if (*slice) return cmd_slice(problem, label, seed);
  return SOFTCONE_INVALID_INPUT;
}
