#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mqshape/advisor.hpp"
#include "mqshape/bounds.hpp"
#include "mqshape/interpolator.hpp"

#include "json.hpp"

namespace mqshape {

/// 17 significant digits, enough to roundtrip a double exactly.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// CSV field for a LogScalar: plain decimal while representable, otherwise
/// inf(ln=<value>) so overflowed bounds stay machine-parseable.
inline std::string format_log_scalar_csv(const LogScalar& v) {
  if (v.is_zero()) return "0";
  if (v.overflows_double()) {
    std::string s = v.sign() < 0 ? "-inf(ln=" : "inf(ln=";
    s += format_g17(v.ln_mag());
    s += ")";
    return s;
  }
  return format_g17(v.to_double());
}

inline nlohmann::json log_scalar_to_json(const LogScalar& v) {
  return {{"ln", v.is_zero() ? nullptr : nlohmann::json(v.ln_mag())},
          {"sign", v.sign()},
          {"value", v.to_double()}};
}

inline nlohmann::json advice_to_json(const ShapeAdvice& a) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& t : a.branch_trace)
    trace.push_back({{"condition", t.what}, {"value", t.value}, {"verdict", t.verdict}});
  nlohmann::json j{
      {"c", log_scalar_to_json(a.c)},
      {"case_label", a.case_label},
      {"advice_kind", to_string(a.advice_kind)},
      {"admissible_interval",
       {{"c_min", log_scalar_to_json(a.c_min)},
        {"c_max", a.c_max ? log_scalar_to_json(*a.c_max) : nlohmann::json()}}},
      {"branch_trace", trace}};
  if (a.objective_value)
    j["objective_value"] = log_scalar_to_json(*a.objective_value);
  return j;
}

inline nlohmann::json breakdown_to_json(const BoundBreakdown& b) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : b.factors)
    factors.push_back({{"label", f.label}, {"value", log_scalar_to_json(f.value)}});
  return {{"factors", factors},
          {"total", log_scalar_to_json(b.total)},
          {"preconditions_ok", b.preconditions_ok},
          {"precondition_notes", b.precondition_notes}};
}

inline nlohmann::json model_to_json(const InterpolationModel& m) {
  nlohmann::json centers = nlohmann::json::array();
  for (const auto& p : m.centers.points()) centers.push_back(p);
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& e : m.basis.exponents) basis.push_back(e);
  return {
      {"kernel", {{"beta", m.spec.beta}, {"c", m.spec.c}, {"m", m.spec.m}}},
      {"cube", {{"corner", m.centers.cube().corner}, {"side", m.centers.cube().side}}},
      {"centers", centers},
      {"values", m.values},
      {"kernel_coeffs", m.kernel_coeffs},
      {"poly_coeffs", m.poly_coeffs},
      {"basis_exponents", basis},
      {"precision",
       {{"mode", m.policy.is_extended() ? "extended" : "machine"},
        {"bits", m.policy.bits}}},
      {"diagnostics",
       {{"condition_estimate", m.diagnostics.condition_estimate},
        {"residual_norm", m.diagnostics.residual_norm},
        {"moment_residual", m.diagnostics.moment_residual},
        {"moment_scale", m.diagnostics.moment_scale}}}};
}

/// Centers CSV: header x1..xn[,f]; returns points and (optionally) values.
struct CentersCsv {
  int n = 0;
  bool has_values = false;
  std::vector<std::vector<double>> points;
  std::vector<double> values;
};

inline CentersCsv read_centers_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open centers file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty centers file: " + path);
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      while (!tok.empty() && (tok.back() == '\r' || tok.back() == ' '))
        tok.pop_back();
      while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
      out.push_back(tok);
    }
    return out;
  };
  auto header = split(line);
  CentersCsv csv;
  for (const auto& h : header) {
    if (h == "f")
      csv.has_values = true;
    else if (h.size() >= 2 && h[0] == 'x')
      ++csv.n;
    else
      throw std::runtime_error("centers CSV: unexpected column '" + h + "'");
  }
  if (csv.n == 0) throw std::runtime_error("centers CSV: no coordinate columns");
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split(line);
    if (static_cast<int>(cells.size()) != csv.n + (csv.has_values ? 1 : 0))
      throw std::runtime_error("centers CSV: ragged row: " + line);
    std::vector<double> p(csv.n);
    for (int i = 0; i < csv.n; ++i) p[i] = std::stod(cells[i]);
    csv.points.push_back(std::move(p));
    if (csv.has_values) csv.values.push_back(std::stod(cells[csv.n]));
  }
  return csv;
}

}  // namespace mqshape
