#pragma once

/**
 * @file io.hpp
 * @brief Equation and solution files.
 *
 * Both are JSON documents; a complex number is a two-element [re, im] array.
 *
 * Equation file:
 *   {"d": 2, "n": 2, "coefficients": [[[0, 0], [0, 0]], [[-1, 0], [0, 0]]]}
 * where coefficients[k] is the first row of A_{k+1}.
 *
 * Solution file:
 *   {"count": 4, "per_equation_distinct": [2, 2],
 *    "solutions": [{"selection": [0, 0], "first_row": [[..], [..]], "residual": 0}],
 *    "truncated": false,
 *    "tolerances": {"conv_tol": .., "distinct_tol": .., "residual_tol": ..,
 *                   "max_iters": .., "max_solutions": ..}}
 *
 * Output is written with a fixed layout and every floating-point number with
 * 17 significant digits, so identical inputs give byte-identical files.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "circfta/error.hpp"
#include "circfta/solver.hpp"

namespace circfta::io {

using Json = nlohmann::ordered_json;

// -- writing -------------------------------------------------------------------

namespace detail {

inline std::string format_number(const Json& v) {
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  return v.dump();
}

inline bool is_flat(const Json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v)
    if (e.is_structured()) return false;
  return true;
}

inline void write(std::string& out, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  if (v.is_object()) {
    if (v.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : v.items()) {
      if (!first) out += ",\n";
      first = false;
      out += inner + Json(key).dump() + ": ";
      write(out, value, indent + 1);
    }
    out += "\n" + pad + "}";
  } else if (v.is_array()) {
    if (v.empty()) {
      out += "[]";
      return;
    }
    if (is_flat(v)) {
      out += "[";
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) out += ", ";
        write(out, v[k], indent + 1);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) out += ",\n";
      out += inner;
      write(out, v[k], indent + 1);
    }
    out += "\n" + pad + "]";
  } else if (v.is_number()) {
    out += format_number(v);
  } else {
    out += v.dump();
  }
}

}  // namespace detail

/// Deterministic pretty-printer: 2-space indent, scalar-only arrays inline,
/// floats as %.17g.
inline std::string to_text(const Json& v) {
  std::string out;
  detail::write(out, v, 0);
  out += "\n";
  return out;
}

inline Json complex_to_json(const Scalar& z) { return Json::array({z.real(), z.imag()}); }

inline Json row_to_json(std::span<const Scalar> row) {
  Json arr = Json::array();
  for (const auto& z : row) arr.push_back(complex_to_json(z));
  return arr;
}

// -- reading -------------------------------------------------------------------

namespace detail {

inline Error parse_error(const std::string& text, const nlohmann::json::parse_error& e) {
  std::size_t line = 1, column = 1;
  const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
  for (std::size_t k = 0; k < limit; ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return Error(Errc::ParseError, "line " + std::to_string(line) + ", column " +
                                     std::to_string(column) + ": " + e.what());
}

inline Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(text, e);
  }
}

inline const Json& field(const Json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) throw Error(Errc::ParseError, where + ": expected an object");
  auto it = obj.find(name);
  if (it == obj.end()) throw Error(Errc::ParseError, where + ": missing field \"" + name + "\"");
  return *it;
}

inline std::uint64_t to_count(const Json& v, const std::string& where) {
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
    throw Error(Errc::ParseError, where + ": expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

inline double to_real(const Json& v, const std::string& where) {
  if (!v.is_number()) throw Error(Errc::ParseError, where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw Error(Errc::ValidationError, where + ": not finite");
  return x;
}

inline Scalar to_complex(const Json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2)
    throw Error(Errc::ParseError, where + ": expected a [re, im] pair");
  return {to_real(v[0], where + "[0]"), to_real(v[1], where + "[1]")};
}

inline std::vector<Scalar> to_row(const Json& v, std::size_t d, const std::string& where) {
  if (!v.is_array()) throw Error(Errc::ParseError, where + ": expected an array of [re, im] pairs");
  if (v.size() != d) {
    throw Error(Errc::ValidationError, where + ": expected " + std::to_string(d) +
                                           " entries, got " + std::to_string(v.size()));
  }
  std::vector<Scalar> row;
  row.reserve(d);
  for (std::size_t j = 0; j < d; ++j) row.push_back(to_complex(v[j], where + "[" + std::to_string(j) + "]"));
  return row;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

// -- equation files --------------------------------------------------------------

inline EquationInput parse_equation(const std::string& text) {
  const Json doc = detail::parse_document(text);
  const auto d = detail::to_count(detail::field(doc, "d", "equation"), "d");
  const auto n = detail::to_count(detail::field(doc, "n", "equation"), "n");
  if (d == 0) throw Error(Errc::ValidationError, "d must be >= 1");
  if (n == 0) throw Error(Errc::ValidationError, "n must be >= 1");
  const Json& coeffs = detail::field(doc, "coefficients", "equation");
  if (!coeffs.is_array()) throw Error(Errc::ParseError, "coefficients: expected an array");
  if (coeffs.size() != n) {
    throw Error(Errc::ValidationError, "coefficients: expected n = " + std::to_string(n) +
                                           " first rows, got " + std::to_string(coeffs.size()));
  }
  std::vector<Circulant> as;
  as.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
    as.emplace_back(detail::to_row(coeffs[k], d, "coefficients[" + std::to_string(k) + "]"));
  return EquationInput(std::move(as));
}

inline EquationInput load_equation(const std::string& path) {
  return parse_equation(detail::read_file(path));
}

inline Json equation_to_json(const EquationInput& eq) {
  Json doc;
  doc["d"] = eq.dim();
  doc["n"] = eq.degree();
  Json coeffs = Json::array();
  for (const auto& a : eq.coeffs()) coeffs.push_back(row_to_json(a.first_row()));
  doc["coefficients"] = std::move(coeffs);
  return doc;
}

// -- solution files --------------------------------------------------------------

struct SolutionRecord {
  std::vector<std::size_t> selection;
  std::vector<Scalar> first_row;
  double residual = 0.0;
};

struct Tolerances {
  double conv_tol = kDefaultConvTol;
  double distinct_tol = kDefaultDistinctTol;
  double residual_tol = 1e-8;
  std::size_t max_iters = kDefaultMaxIters;
  std::uint64_t max_solutions = 1'000'000;

  static Tolerances from(const SolverConfig& cfg) {
    return {cfg.conv_tol, cfg.distinct_tol, cfg.residual_tol, cfg.max_iters, cfg.max_enumerated};
  }
};

struct SolutionFile {
  std::uint64_t count = 0;
  std::vector<std::size_t> per_equation_distinct;
  std::vector<SolutionRecord> solutions;
  bool truncated = false;
  Tolerances tolerances;
};

inline SolutionFile make_solution_file(const SolutionSet& set) {
  SolutionFile f;
  f.count = set.count();
  f.per_equation_distinct.assign(set.per_equation().begin(), set.per_equation().end());
  Enumeration all = set.materialize();
  f.truncated = all.truncated;
  for (auto& s : all.solutions) {
    const auto row = s.x.first_row();
    f.solutions.push_back({std::move(s.selection), {row.begin(), row.end()}, s.residual});
  }
  f.tolerances = Tolerances::from(set.config());
  return f;
}

inline Json solution_file_to_json(const SolutionFile& f) {
  Json doc;
  doc["count"] = f.count;
  doc["per_equation_distinct"] = f.per_equation_distinct;
  Json sols = Json::array();
  for (const auto& s : f.solutions) {
    Json rec;
    rec["selection"] = s.selection;
    rec["first_row"] = row_to_json(s.first_row);
    rec["residual"] = s.residual;
    sols.push_back(std::move(rec));
  }
  doc["solutions"] = std::move(sols);
  doc["truncated"] = f.truncated;
  Json tol;
  tol["conv_tol"] = f.tolerances.conv_tol;
  tol["distinct_tol"] = f.tolerances.distinct_tol;
  tol["residual_tol"] = f.tolerances.residual_tol;
  tol["max_iters"] = f.tolerances.max_iters;
  tol["max_solutions"] = f.tolerances.max_solutions;
  doc["tolerances"] = std::move(tol);
  return doc;
}

inline SolutionFile parse_solution_file(const std::string& text) {
  using namespace detail;
  const Json doc = parse_document(text);
  SolutionFile f;
  f.count = to_count(field(doc, "count", "solution file"), "count");
  const Json& per = field(doc, "per_equation_distinct", "solution file");
  if (!per.is_array()) throw Error(Errc::ParseError, "per_equation_distinct: expected an array");
  for (std::size_t i = 0; i < per.size(); ++i)
    f.per_equation_distinct.push_back(
        to_count(per[i], "per_equation_distinct[" + std::to_string(i) + "]"));
  const Json& trunc = field(doc, "truncated", "solution file");
  if (!trunc.is_boolean()) throw Error(Errc::ParseError, "truncated: expected a boolean");
  f.truncated = trunc.get<bool>();

  const Json& tol = field(doc, "tolerances", "solution file");
  f.tolerances.conv_tol = to_real(field(tol, "conv_tol", "tolerances"), "tolerances.conv_tol");
  f.tolerances.distinct_tol =
      to_real(field(tol, "distinct_tol", "tolerances"), "tolerances.distinct_tol");
  f.tolerances.residual_tol =
      to_real(field(tol, "residual_tol", "tolerances"), "tolerances.residual_tol");
  f.tolerances.max_iters = to_count(field(tol, "max_iters", "tolerances"), "tolerances.max_iters");
  f.tolerances.max_solutions =
      to_count(field(tol, "max_solutions", "tolerances"), "tolerances.max_solutions");

  const Json& sols = field(doc, "solutions", "solution file");
  if (!sols.is_array()) throw Error(Errc::ParseError, "solutions: expected an array");
  const std::size_t d = f.per_equation_distinct.size();
  for (std::size_t s = 0; s < sols.size(); ++s) {
    const std::string where = "solutions[" + std::to_string(s) + "]";
    SolutionRecord rec;
    const Json& sel = field(sols[s], "selection", where);
    if (!sel.is_array()) throw Error(Errc::ParseError, where + ".selection: expected an array");
    for (std::size_t i = 0; i < sel.size(); ++i)
      rec.selection.push_back(to_count(sel[i], where + ".selection[" + std::to_string(i) + "]"));
    const Json& row = field(sols[s], "first_row", where);
    rec.first_row = to_row(row, d, where + ".first_row");
    rec.residual = to_real(field(sols[s], "residual", where), where + ".residual");
    f.solutions.push_back(std::move(rec));
  }
  return f;
}

inline SolutionFile load_solution_file(const std::string& path) {
  return parse_solution_file(detail::read_file(path));
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::ValidationError, "cannot write " + path);
  out << text;
}

}  // namespace circfta::io
