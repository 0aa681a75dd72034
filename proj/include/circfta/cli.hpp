#pragma once

/**
 * @file cli.hpp
 * @brief `circfta` command-line front end: reduce | solve | count | verify | certify.
 *
 * Exit codes: 0 success, 1 a verification or certification check failed,
 * 2 parse/validation error, 3 root iteration did not converge,
 * 4 a solution exceeded the residual bound.
 */

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "circfta/io.hpp"
#include "circfta/solver.hpp"

namespace circfta::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInvalidInput = 2,
  kNoConvergence = 3,
  kResidualExceeded = 4,
};

namespace detail {

inline std::string fmt_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

inline int cmd_reduce(const std::string& input, std::ostream& out) {
  const EquationInput eq = io::load_equation(input);
  const SpectralSystem sys = spectral_reduce(eq);
  io::Json doc;
  doc["d"] = sys.d;
  doc["n"] = sys.n;
  io::Json eqs = io::Json::array();
  for (std::size_t i = 0; i < sys.d; ++i) {
    io::Json rec;
    rec["index"] = i + 1;
    rec["coeffs"] = io::row_to_json(sys.polys[i].coeffs());
    eqs.push_back(std::move(rec));
  }
  doc["equations"] = std::move(eqs);
  out << io::to_text(doc);
  return kOk;
}

inline int cmd_solve(const std::string& input, const SolverConfig& cfg, const std::string& output,
                     std::ostream& out) {
  const EquationInput eq = io::load_equation(input);
  const SolutionSet set = solve_all(eq, cfg);
  const std::string text = io::to_text(io::solution_file_to_json(io::make_solution_file(set)));
  if (output.empty())
    out << text;
  else
    io::write_file(output, text);
  return kOk;
}

inline std::string product_text(const SolutionCount& c) {
  std::string s = std::to_string(c.count);
  if (c.per_equation.size() > 1) {
    s += " = ";
    for (std::size_t i = 0; i < c.per_equation.size(); ++i) {
      if (i) s += "·";
      s += std::to_string(c.per_equation[i]);
    }
  }
  return s;
}

inline int cmd_count(const std::string& input, const SolverConfig& cfg, bool json,
                     std::ostream& out) {
  const EquationInput eq = io::load_equation(input);
  const SolutionCount c = count_solutions(eq, cfg);
  if (json) {
    io::Json doc;
    doc["count"] = c.count;
    doc["per_equation_distinct"] = c.per_equation;
    out << io::to_text(doc);
  } else {
    out << product_text(c) << "\n";
  }
  return kOk;
}

inline int cmd_verify(const std::string& input, const std::string& solutions, std::ostream& out) {
  const EquationInput eq = io::load_equation(input);
  const io::SolutionFile file = io::load_solution_file(solutions);
  bool all_ok = true;
  out << "solution  status  residual\n";
  for (std::size_t s = 0; s < file.solutions.size(); ++s) {
    const Circulant x(file.solutions[s].first_row);
    const VerifyResult r = verify_solution(eq, x, file.tolerances.residual_tol);
    all_ok = all_ok && r.ok;
    char line[96];
    std::snprintf(line, sizeof line, "%8zu  %-6s  %.17g\n", s + 1, r.ok ? "ok" : "FAIL", r.residual);
    out << line;
  }
  out << (all_ok ? "all " : "not all ") << file.solutions.size() << " solutions verified within "
      << fmt_real(file.tolerances.residual_tol) << " * scale " << fmt_real(eq.scale()) << "\n";
  return all_ok ? kOk : kCheckFailed;
}

inline io::Json report_to_json(const CertificationReport& rep) {
  io::Json doc;
  doc["d"] = rep.d;
  doc["n"] = rep.n;
  doc["count"] = rep.count;
  if (rep.bound)
    doc["bound"] = *rep.bound;
  else
    doc["bound"] = nullptr;
  doc["per_equation_distinct"] = rep.per_equation;
  io::Json gaps = io::Json::array();
  for (const auto& g : rep.gaps) {
    io::Json rec;
    rec["distinct"] = g.distinct;
    rec["tol_used"] = g.tol_used;
    rec["min_gap"] = std::isfinite(g.min_gap) ? io::Json(g.min_gap) : io::Json(nullptr);
    rec["max_spread"] = g.max_spread;
    gaps.push_back(std::move(rec));
  }
  doc["cluster_gaps"] = std::move(gaps);
  doc["verified"] = rep.verified;
  doc["truncated"] = rep.truncated;
  io::Json checks = io::Json::array();
  for (const auto& c : rep.checks) {
    io::Json rec;
    rec["name"] = c.name;
    rec["passed"] = c.passed;
    rec["detail"] = c.detail;
    rec["witnesses"] = c.witnesses;
    checks.push_back(std::move(rec));
  }
  doc["checks"] = std::move(checks);
  doc["all_passed"] = rep.all_passed();
  return doc;
}

inline void print_report(const CertificationReport& rep, std::ostream& out) {
  out << "d = " << rep.d << ", n = " << rep.n << ", count = " << rep.count << ", n^d = "
      << (rep.bound ? std::to_string(*rep.bound) : std::string("(exceeds 2^64)")) << "\n";
  for (std::size_t i = 0; i < rep.gaps.size(); ++i) {
    const auto& g = rep.gaps[i];
    out << "  equation " << i + 1 << ": n_i = " << g.distinct << ", tol " << fmt_real(g.tol_used)
        << ", min gap " << (std::isfinite(g.min_gap) ? fmt_real(g.min_gap) : std::string("-"))
        << ", max spread " << fmt_real(g.max_spread) << "\n";
  }
  for (const auto& c : rep.checks) {
    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
    for (const auto& w : c.witnesses) out << "       " << w << "\n";
  }
}

inline int cmd_certify(const std::string& input, const SolverConfig& cfg, bool json,
                       std::ostream& out) {
  const EquationInput eq = io::load_equation(input);
  const CertificationReport rep = certify_theorems(eq, cfg);
  if (json)
    out << io::to_text(report_to_json(rep));
  else
    print_report(rep, out);
  return rep.all_passed() ? kOk : kCheckFailed;
}

inline void add_solver_flags(CLI::App* cmd, SolverConfig& cfg) {
  cmd->add_option("--tol", cfg.conv_tol, "root iteration convergence tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--distinct-tol", cfg.distinct_tol,
                  "relative distinct-root tolerance (times 1 + max|root|)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--residual-tol", cfg.residual_tol, "residual acceptance tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-iters", cfg.max_iters, "root iteration sweep cap")
      ->check(CLI::PositiveNumber);
}

}  // namespace detail

/// Runs one CLI invocation. Reports go to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Circulant solutions of monic polynomial matrix equations", "circfta"};
  app.require_subcommand(1);

  SolverConfig cfg;
  std::string input, solutions, output;
  bool json = false;

  auto* reduce = app.add_subcommand("reduce", "print the d decoupled scalar equations");
  reduce->add_option("input", input, "equation file")->required();

  auto* solve = app.add_subcommand("solve", "enumerate all circulant solutions");
  solve->add_option("input", input, "equation file")->required();
  detail::add_solver_flags(solve, cfg);
  solve->add_option("--max-solutions", cfg.max_enumerated, "enumeration cap")
      ->check(CLI::PositiveNumber);
  solve->add_option("-o,--output", output, "solution file (default: stdout)");

  auto* count = app.add_subcommand("count", "count solutions without enumerating them");
  count->add_option("input", input, "equation file")->required();
  detail::add_solver_flags(count, cfg);
  count->add_flag("--json", json, "structured output");

  auto* verify = app.add_subcommand("verify", "check every solution in a solution file");
  verify->add_option("input", input, "equation file")->required();
  verify->add_option("solutions", solutions, "solution file")->required();

  auto* certify = app.add_subcommand("certify", "check existence, bound and attainment");
  certify->add_option("input", input, "equation file")->required();
  detail::add_solver_flags(certify, cfg);
  certify->add_option("--max-solutions", cfg.max_enumerated, "enumeration cap")
      ->check(CLI::PositiveNumber);
  certify->add_flag("--json", json, "structured output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*reduce) return detail::cmd_reduce(input, out);
    if (*solve) return detail::cmd_solve(input, cfg, output, out);
    if (*count) return detail::cmd_count(input, cfg, json, out);
    if (*verify) return detail::cmd_verify(input, solutions, out);
    if (*certify) return detail::cmd_certify(input, cfg, json, out);
  } catch (const NoConvergence& e) {
    err << "error: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const ResidualExceeded& e) {
    std::string sel;
    for (auto k : e.selection()) sel += (sel.empty() ? "" : ",") + std::to_string(k);
    err << "error: " << e.what() << " at selection [" << sel << "]\n";
    return kResidualExceeded;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::CountOverflow ? kCheckFailed : kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace circfta::cli
