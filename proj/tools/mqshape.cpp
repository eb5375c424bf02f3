// mqshape: multiquadric interpolation, error bounds and shape-parameter
// advice from the command line.  CSV/JSON output for external analysis.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mqshape/advisor.hpp"
#include "mqshape/bandlimited.hpp"
#include "mqshape/bounds.hpp"
#include "mqshape/interpolator.hpp"
#include "mqshape/io.hpp"

using nlohmann::json;
using namespace mqshape;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitNumerical = 4;

int default_precision_bits() {
  const char* env = std::getenv("MQSHAPE_PRECISION_BITS");
  if (!env) return 256;
  int bits = std::atoi(env);
  return bits >= 128 ? bits : 256;
}

PrecisionPolicy parse_policy(const std::string& s) {
  if (s == "machine") return PrecisionPolicy::machine();
  if (s == "extended") return PrecisionPolicy::extended(default_precision_bits());
  return PrecisionPolicy::extended(std::stoi(s));
}

struct TargetOpts {
  std::string kind = "sinc";
  double sigma = 1.0;
  int k = 3;
  unsigned seed = 7;
  std::vector<double> shifts, amps;
};

BandLimitedFn make_target(const TargetOpts& t, int n) {
  if (t.kind == "sinc") return BandLimitedFn::sinc(n, t.sigma);
  if (t.kind == "mixture") {
    if (n != 1) throw std::domain_error("mixture targets are one-dimensional");
    if (!t.shifts.empty()) {
      if (t.shifts.size() != t.amps.size())
        throw std::domain_error("--shifts and --amps need equal lengths");
      return BandLimitedFn::mixture(t.sigma, t.shifts, t.amps);
    }
    std::mt19937 rng(t.seed);
    std::uniform_real_distribution<double> us(-2.0, 2.0), ua(-1.0, 1.0);
    std::vector<double> shifts, amps;
    for (int i = 0; i < t.k; ++i) {
      shifts.push_back(us(rng));
      amps.push_back(ua(rng));
    }
    return BandLimitedFn::mixture(t.sigma, shifts, amps);
  }
  throw std::domain_error("unknown target kind: " + t.kind);
}

std::vector<std::vector<double>> grid_centers(int n, int per_axis,
                                              const Cube& cube) {
  if (per_axis < 2) throw std::domain_error("grid centers: need >= 2 per axis");
  std::vector<std::vector<double>> pts;
  std::vector<int> idx(n, 0);
  for (;;) {
    std::vector<double> p(n);
    for (int d = 0; d < n; ++d)
      p[d] = cube.corner[d] + cube.side * idx[d] / (per_axis - 1.0);
    pts.push_back(std::move(p));
    int d = 0;
    while (d < n && ++idx[d] == per_axis) idx[d++] = 0;
    if (d == n) break;
  }
  return pts;
}

std::vector<std::vector<double>> eval_grid(int n, int per_axis, const Cube& cube) {
  // strictly inside E
  std::vector<std::vector<double>> pts;
  std::vector<int> idx(n, 0);
  for (;;) {
    std::vector<double> p(n);
    for (int d = 0; d < n; ++d)
      p[d] = cube.corner[d] + cube.side * (idx[d] + 0.5) / per_axis;
    pts.push_back(std::move(p));
    int d = 0;
    while (d < n && ++idx[d] == per_axis) idx[d++] = 0;
    if (d == n) break;
  }
  return pts;
}

std::vector<std::vector<double>> load_centers(const std::string& spec_str,
                                              int n, const Cube& cube) {
  if (spec_str.rfind("grid:", 0) == 0)
    return grid_centers(n, std::stoi(spec_str.substr(5)), cube);
  if (spec_str.rfind("file:", 0) == 0) {
    auto csv = read_centers_csv(spec_str.substr(5));
    if (csv.n != n) throw std::domain_error("centers file dimension mismatch");
    return csv.points;
  }
  throw std::domain_error("--centers expects grid:<K> or file:<path>");
}

void print_breakdown_text(const BoundBreakdown& b) {
  for (const auto& f : b.factors)
    std::printf("%-24s %s\n", f.label.c_str(),
                format_log_scalar_csv(f.value).c_str());
  std::printf("%-24s %s\n", "total", format_log_scalar_csv(b.total).c_str());
  std::printf("%-24s %s\n", "preconditions_ok", b.preconditions_ok ? "1" : "0");
  for (const auto& note : b.precondition_notes)
    std::printf("note: %s\n", note.c_str());
}

struct SweepRowOut {
  double c;
  double max_err, rms_err, cond, delta, delta0;
  LogScalar bound;
  bool bound_valid;
  bool preconditions_ok;
};

// Flat key=value config support: values are injected as trailing flags for
// any key the command line does not already carry, so explicit flags win.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  auto has_flag = [&args](const std::string& key) {
    std::string f = "--" + key;
    for (const auto& a : args)
      if (a == f || a.rfind(f + "=", 0) == 0) return true;
    return false;
  };
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config file: expected key=value, got: " + line);
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    while (!value.empty() && value.front() == ' ') value.erase(value.begin());
    if (!has_flag(key)) {
      args.push_back("--" + key);
      args.push_back(value);
    }
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiquadric shape-parameter toolkit"};
  app.require_subcommand(1);

  // ---- advise ----
  auto* cmd_advise = app.add_subcommand("advise", "recommend a shape parameter c");
  std::string cfg_advise;
  cmd_advise->add_option("--config", cfg_advise, "flat key=value config file");
  std::string adv_mode = "practical";
  AdvisorInputs adv_in;
  double adv_b0 = -1.0;
  cmd_advise->add_option("--mode", adv_mode)
      ->check(CLI::IsMember({"practical", "fixed-b0", "unfixed-b0"}));
  cmd_advise->add_option("--n", adv_in.n)->required();
  cmd_advise->add_option("--beta", adv_in.beta)->required();
  cmd_advise->add_option("--sigma", adv_in.sigma)->required();
  cmd_advise->add_option("--delta", adv_in.delta)->required();
  cmd_advise->add_option("--b0", adv_b0);
  cmd_advise->add_option("--delta-very-small", adv_in.delta_very_small);
  cmd_advise->add_option("--c-cap-factor", adv_in.c_cap_factor);

  // ---- constants ----
  auto* cmd_constants = app.add_subcommand("constants", "inspect the bound constants");
  std::string cfg_constants;
  cmd_constants->add_option("--config", cfg_constants, "flat key=value config file");
  int cn = 1;
  double cbeta = std::nan(""), cb0 = std::nan(""), cc = std::nan("");
  bool cjson = false;
  cmd_constants->add_option("--n", cn)->required();
  cmd_constants->add_option("--beta", cbeta);
  cmd_constants->add_option("--b0", cb0);
  cmd_constants->add_option("--c", cc);
  cmd_constants->add_flag("--json", cjson);

  // ---- bound ----
  auto* cmd_bound = app.add_subcommand("bound", "evaluate an error/norm bound");
  std::string cfg_bound;
  cmd_bound->add_option("--config", cfg_bound, "flat key=value config file");
  int beq = 9, bn = 1;
  double bbeta = 1.0, bsigma = 1.0, bc = 1.0, bb0 = 1.0, bdelta = 1e-4;
  double bl2 = 1.0, bfh = 1.0;
  bool bjson = false, brecombined = false;
  TargetOpts btarget;
  cmd_bound->add_option("--eq", beq)->check(CLI::IsMember({6, 7, 8, 9, 12}))->required();
  cmd_bound->add_option("--n", bn)->required();
  cmd_bound->add_option("--beta", bbeta);
  cmd_bound->add_option("--sigma", bsigma)->required();
  cmd_bound->add_option("--c", bc)->required();
  cmd_bound->add_option("--b0", bb0)->required();
  cmd_bound->add_option("--delta", bdelta)->required();
  cmd_bound->add_option("--l2", bl2);
  cmd_bound->add_option("--fh", bfh);
  cmd_bound->add_option("--target", btarget.kind);
  cmd_bound->add_option("--shifts", btarget.shifts)->delimiter(',');
  cmd_bound->add_option("--amps", btarget.amps)->delimiter(',');
  cmd_bound->add_option("--seed", btarget.seed);
  cmd_bound->add_option("--k", btarget.k);
  cmd_bound->add_flag("--json", bjson);
  cmd_bound->add_flag("--recombined-prefactor", brecombined);

  // ---- interpolate ----
  auto* cmd_interp = app.add_subcommand("interpolate", "fit and export a model");
  std::string cfg_interp;
  cmd_interp->add_option("--config", cfg_interp, "flat key=value config file");
  std::string icenters, iout = "model.json", ieval_out;
  double ibeta = -1.0, ic = 1.0, ib0 = -1.0;
  std::vector<double> icorner;
  std::string iprecision = "machine";
  int ieval_points = 200;
  cmd_interp->add_option("--centers", icenters)->required();
  cmd_interp->add_option("--beta", ibeta)->required();
  cmd_interp->add_option("--c", ic)->required();
  cmd_interp->add_option("--b0", ib0);
  cmd_interp->add_option("--corner", icorner)->delimiter(',');
  cmd_interp->add_option("--precision", iprecision);
  cmd_interp->add_option("--out", iout);
  cmd_interp->add_option("--eval-out", ieval_out);
  cmd_interp->add_option("--eval-points", ieval_points);

  // ---- sweep ----
  auto* cmd_sweep = app.add_subcommand("sweep", "sweep c over a log grid, emit CSV");
  std::string cfg_sweep;
  cmd_sweep->add_option("--config", cfg_sweep, "flat key=value config file");
  int sn = 1;
  double sbeta = 1.0, sb0 = 1.0;
  double s_log_min = -1.0, s_log_max = 1.0;
  int s_count = 11, s_eval_points = 200, s_fill_res = 2001;
  std::string s_centers = "grid:9", s_out = "sweep.csv", s_precision = "machine";
  std::vector<double> s_corner;
  TargetOpts starget;
  cmd_sweep->add_option("--n", sn);
  cmd_sweep->add_option("--beta", sbeta)->required();
  cmd_sweep->add_option("--b0", sb0)->required();
  cmd_sweep->add_option("--sigma", starget.sigma)->required();
  cmd_sweep->add_option("--corner", s_corner)->delimiter(',');
  cmd_sweep->add_option("--c-log-min", s_log_min)->required();
  cmd_sweep->add_option("--c-log-max", s_log_max)->required();
  cmd_sweep->add_option("--c-count", s_count)->check(CLI::Range(2, 100000));
  cmd_sweep->add_option("--centers", s_centers);
  cmd_sweep->add_option("--target", starget.kind);
  cmd_sweep->add_option("--shifts", starget.shifts)->delimiter(',');
  cmd_sweep->add_option("--amps", starget.amps)->delimiter(',');
  cmd_sweep->add_option("--seed", starget.seed);
  cmd_sweep->add_option("--k", starget.k);
  cmd_sweep->add_option("--eval-points", s_eval_points);
  cmd_sweep->add_option("--fill-resolution", s_fill_res);
  cmd_sweep->add_option("--precision", s_precision);
  cmd_sweep->add_option("--out", s_out);

  // ---- verify-bound ----
  auto* cmd_verify = app.add_subcommand("verify-bound",
                                        "check empirical error against the bound");
  std::string cfg_verify;
  cmd_verify->add_option("--config", cfg_verify, "flat key=value config file");
  int vn = 1;
  double vbeta = 1.0, vb0 = 8.0, vc = 1.0;
  std::string v_centers = "grid:101", v_precision = "extended";
  int v_grid = 1000, v_fill_res = 4001;
  std::vector<double> v_corner;
  TargetOpts vtarget;
  bool vjson = false;
  cmd_verify->add_option("--n", vn);
  cmd_verify->add_option("--beta", vbeta)->required();
  cmd_verify->add_option("--b0", vb0)->required();
  cmd_verify->add_option("--sigma", vtarget.sigma)->required();
  cmd_verify->add_option("--c", vc)->required();
  cmd_verify->add_option("--corner", v_corner)->delimiter(',');
  cmd_verify->add_option("--centers", v_centers);
  cmd_verify->add_option("--target", vtarget.kind);
  cmd_verify->add_option("--grid", v_grid);
  cmd_verify->add_option("--fill-resolution", v_fill_res);
  cmd_verify->add_option("--precision", v_precision);
  cmd_verify->add_flag("--json", vjson);

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());  // CLI11's vector parse wants reversed args
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(cmd_advise)) {
      if (adv_b0 > 0) adv_in.b0 = adv_b0;
      ShapeAdvice adv = adv_mode == "practical" ? advise_practical(adv_in)
                        : adv_mode == "fixed-b0"
                            ? advise_theoretical_fixed(adv_in)
                            : advise_theoretical_unfixed(adv_in);
      json j = advice_to_json(adv);
      j["mode"] = adv_mode;
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    if (app.got_subcommand(cmd_constants)) {
      json j;
      GammaSeqValue g = gamma_seq(cn);
      j["n"] = cn;
      j["gamma_n"] = g.to_string();
      j["gamma_n_ln"] = g.ln;
      j["alpha_n"] = unit_ball_volume(cn);
      if (!std::isnan(cbeta)) {
        auto sc = rho_delta0(cn, cbeta);
        j["beta"] = cbeta;
        j["m"] = sc.m;
        j["rho"] = sc.rho;
        j["delta0_const"] = log_scalar_to_json(sc.delta0_const);
        j["case"] = sc.case_label;
        if (sc.s) j["s"] = *sc.s;
        j["smn"] = smn(sc.m, cn);
        if (!std::isnan(cb0) && !std::isnan(cc)) {
          auto tc = theorem_constants(cn, cbeta, cb0, cc);
          j["C"] = log_scalar_to_json(tc.C);
          j["lambda"] = tc.lambda;
          j["ln_lambda_mag"] = log_scalar_to_json(tc.ln_lambda_mag);
          j["delta0"] = log_scalar_to_json(tc.delta0);
          j["rho_prime"] = log_scalar_to_json(tc.rho_prime);
          j["crossover_c0"] = log_scalar_to_json(tc.crossover_c0);
          j["regime"] = tc.regime == TheoremConstants::Regime::c_small
                            ? "c_small"
                            : "c_large";
        }
      }
      if (cjson) {
        std::cout << j.dump(2) << "\n";
      } else {
        std::printf("n         = %d\n", cn);
        std::printf("gamma_n   = %s\n", g.to_string().c_str());
        std::printf("alpha_n   = %.17g\n", unit_ball_volume(cn));
        if (!std::isnan(cbeta)) {
          auto sc = rho_delta0(cn, cbeta);
          std::printf("beta      = %.17g\n", cbeta);
          std::printf("m         = %d\n", sc.m);
          std::printf("case      = %s\n", sc.case_label.c_str());
          if (sc.s) std::printf("s         = %d\n", *sc.s);
          std::printf("rho       = %.17g\n", sc.rho);
          std::printf("Delta0    = %s\n",
                      format_log_scalar_csv(sc.delta0_const).c_str());
          std::printf("S(m,n)    = %lld\n", smn(sc.m, cn));
          if (!std::isnan(cb0) && !std::isnan(cc)) {
            auto tc = theorem_constants(cn, cbeta, cb0, cc);
            std::printf("C         = %s\n", format_log_scalar_csv(tc.C).c_str());
            std::printf("lambda    = %.17g\n", tc.lambda);
            std::printf("delta0    = %s\n",
                        format_log_scalar_csv(tc.delta0).c_str());
            std::printf("crossover = %s\n",
                        format_log_scalar_csv(tc.crossover_c0).c_str());
            std::printf("regime    = %s\n",
                        tc.regime == TheoremConstants::Regime::c_small
                            ? "c_small"
                            : "c_large");
          }
        }
      }
      return 0;
    }

    if (app.got_subcommand(cmd_bound)) {
      ProblemSetting st(bn, bb0, bsigma, bdelta);
      json j;
      if (beq == 7 || beq == 8) {
        auto spec = validate_spec(bbeta, bc);
        LogScalar v = beq == 7 ? norm_bound_pos_beta(st, spec, bl2)
                               : norm_bound_neg_beta(st, spec, bl2);
        if (bjson) {
          j["eq"] = beq;
          j["value"] = log_scalar_to_json(v);
          std::cout << j.dump(2) << "\n";
        } else {
          std::printf("eq%d norm bound = %s\n", beq,
                      format_log_scalar_csv(v).c_str());
        }
        return 0;
      }
      BoundBreakdown b;
      if (beq == 6) {
        b = native_error_bound(st, validate_spec(bbeta, bc), bfh);
      } else if (beq == 9) {
        b = bandlimited_error_bound(st, validate_spec(bbeta, bc), bl2);
      } else {  // 12
        btarget.sigma = bsigma;
        auto density = make_target(btarget, 1).spectral_density();
        auto terms = special_norm_terms(bc, bsigma, density);
        b = special_error_bound(st, bc, terms, brecombined);
      }
      if (bjson) {
        j = breakdown_to_json(b);
        j["eq"] = beq;
        std::cout << j.dump(2) << "\n";
      } else {
        print_breakdown_text(b);
      }
      return 0;
    }

    if (app.got_subcommand(cmd_interp)) {
      auto csv = read_centers_csv(icenters);
      if (!csv.has_values)
        throw std::domain_error("interpolate: centers CSV needs an f column");
      Cube cube;
      if (ib0 > 0) {
        cube.side = ib0;
        cube.corner = icorner.empty() ? std::vector<double>(csv.n, 0.0) : icorner;
      } else {
        // tight bounding cube
        std::vector<double> lo(csv.n, 1e300), hi(csv.n, -1e300);
        for (const auto& p : csv.points)
          for (int d = 0; d < csv.n; ++d) {
            lo[d] = std::min(lo[d], p[d]);
            hi[d] = std::max(hi[d], p[d]);
          }
        double side = 0.0;
        for (int d = 0; d < csv.n; ++d) side = std::max(side, hi[d] - lo[d]);
        cube.corner = lo;
        cube.side = side > 0 ? side : 1.0;
      }
      CenterSet centers(csv.n, csv.points, cube);
      auto model = solve_interpolant(validate_spec(ibeta, ic), centers,
                                     csv.values, parse_policy(iprecision));
      std::ofstream out(iout);
      if (!out) throw std::runtime_error("cannot write " + iout);
      out << model_to_json(model).dump(2) << "\n";
      if (!ieval_out.empty()) {
        std::ofstream ev(ieval_out);
        if (!ev) throw std::runtime_error("cannot write " + ieval_out);
        for (int d = 0; d < csv.n; ++d) ev << "x" << (d + 1) << ",";
        ev << "s\n";
        for (const auto& p : eval_grid(csv.n, ieval_points, cube)) {
          for (int d = 0; d < csv.n; ++d) ev << format_g17(p[d]) << ",";
          ev << format_g17(evaluate(model, p)) << "\n";
        }
      }
      std::printf("model written to %s (N=%zu, cond~%.3g, residual=%.3g, moment=%.3g)\n",
                  iout.c_str(), centers.size(),
                  model.diagnostics.condition_estimate,
                  model.diagnostics.residual_norm,
                  model.diagnostics.moment_residual);
      return 0;
    }

    if (app.got_subcommand(cmd_sweep)) {
      Cube cube{s_corner.empty() ? std::vector<double>(sn, 0.0) : s_corner, sb0};
      auto pts = load_centers(s_centers, sn, cube);
      CenterSet centers(sn, pts, cube);
      BandLimitedFn target = make_target(starget, sn);
      std::vector<double> values;
      for (const auto& p : centers.points()) values.push_back(target(p));
      auto fd = fill_distance(centers, s_fill_res);
      double delta_used = fd.upper();
      PrecisionPolicy policy = parse_policy(s_precision);
      auto evals = eval_grid(sn, s_eval_points, cube);
      bool special = (sn == 1 && sbeta == -1.0);
      std::optional<SpectralDensity> density;
      if (special) density = target.spectral_density();

      std::vector<SweepRowOut> rows;
      for (int i = 0; i < s_count; ++i) {
        double lc = s_log_min + (s_log_max - s_log_min) * i / (s_count - 1.0);
        double c = std::pow(10.0, lc);
        SweepRowOut row{};
        row.c = c;
        auto spec = validate_spec(sbeta, c);
        auto [a_dbl, rhs] = assemble_system(spec, centers, values);
        (void)rhs;
        row.cond = condition_estimate(a_dbl);
        row.delta = delta_used;
        auto tc = theorem_constants(sn, sbeta, sb0, c);
        row.delta0 = tc.delta0.to_double();
        bool solver_ok = true;
        try {
          auto model = solve_interpolant(spec, centers, values, policy);
          double max_err = 0.0, sum_sq = 0.0;
          for (const auto& p : evals) {
            double err = std::abs(target(p) - evaluate(model, p));
            max_err = std::max(max_err, err);
            sum_sq += err * err;
          }
          row.max_err = max_err;
          row.rms_err = std::sqrt(sum_sq / evals.size());
        } catch (const numerical_error&) {
          solver_ok = false;
          row.max_err = std::nan("");
          row.rms_err = std::nan("");
        }
        bool bound_pre_ok = false;
        try {
          ProblemSetting st(sn, sb0, starget.sigma, delta_used);
          if (special) {
            auto terms = special_norm_terms(c, starget.sigma, *density);
            auto b = special_error_bound(st, c, terms);
            row.bound = b.total;
            bound_pre_ok = b.preconditions_ok;
            row.bound_valid = true;
          } else {
            auto b = bandlimited_error_bound(st, spec, target.l2_norm());
            row.bound = b.total;
            bound_pre_ok = b.preconditions_ok;
            row.bound_valid = true;
          }
        } catch (const coverage_error&) {
          row.bound_valid = false;
        }
        row.preconditions_ok = solver_ok && row.bound_valid && bound_pre_ok;
        rows.push_back(row);
      }

      std::ofstream out(s_out);
      if (!out) throw std::runtime_error("cannot write " + s_out);
      out << "c,max_err,rms_err,cond_estimate,bound,delta,delta0,preconditions_ok\n";
      for (const auto& r : rows) {
        out << format_g17(r.c) << "," << format_g17(r.max_err) << ","
            << format_g17(r.rms_err) << "," << format_g17(r.cond) << ","
            << (r.bound_valid ? format_log_scalar_csv(r.bound) : "nan") << ","
            << format_g17(r.delta) << "," << format_g17(r.delta0) << ","
            << (r.preconditions_ok ? 1 : 0) << "\n";
      }
      std::printf("sweep written to %s (%zu rows)\n", s_out.c_str(), rows.size());
      return 0;
    }

    if (app.got_subcommand(cmd_verify)) {
      Cube cube{v_corner.empty() ? std::vector<double>(vn, 0.0) : v_corner, vb0};
      auto pts = load_centers(v_centers, vn, cube);
      CenterSet centers(vn, pts, cube);
      BandLimitedFn target = make_target(vtarget, vn);
      auto fd = fill_distance(centers, v_fill_res);
      double delta_used = fd.upper();
      auto tc = theorem_constants(vn, vbeta, vb0, vc);
      json j;
      j["c"] = vc;
      j["delta"] = delta_used;
      j["delta_grid_estimate"] = fd.estimate;
      j["delta_slack"] = fd.slack;
      j["delta0"] = log_scalar_to_json(tc.delta0);
      if (LogScalar::from_value(delta_used) > tc.delta0) {
        j["verdict"] = "precondition-violated";
        j["reason"] = "delta > delta0: Theorem guarantee does not apply";
        if (vjson)
          std::cout << j.dump(2) << "\n";
        else
          std::printf("precondition violated: delta=%.6g > delta0=%s (no PASS/FAIL verdict)\n",
                      delta_used, format_log_scalar_csv(tc.delta0).c_str());
        return 0;
      }
      auto spec = validate_spec(vbeta, vc);
      PrecisionPolicy policy = parse_policy(v_precision);
      std::vector<double> values;
      for (const auto& p : centers.points()) values.push_back(target(p));
      auto model = solve_interpolant(spec, centers, values, policy);
      double max_err = 0.0;
      for (const auto& p : eval_grid(vn, v_grid, cube))
        max_err = std::max(max_err, std::abs(target(p) - evaluate(model, p)));

      ProblemSetting st(vn, vb0, vtarget.sigma, delta_used);
      BoundBreakdown bound;
      if (vn == 1 && vbeta == -1.0) {
        auto terms =
            special_norm_terms(vc, vtarget.sigma, target.spectral_density());
        bound = special_error_bound(st, vc, terms);
        j["bound_kind"] = "eq12";
      } else {
        bound = bandlimited_error_bound(st, spec, target.l2_norm());
        j["bound_kind"] = "eq9";
      }
      bool pass = LogScalar::from_value(max_err) <= bound.total;
      j["empirical_max_err"] = max_err;
      j["bound"] = log_scalar_to_json(bound.total);
      j["condition_estimate"] = model.diagnostics.condition_estimate;
      j["residual_norm"] = model.diagnostics.residual_norm;
      j["precision_bits"] = policy.bits;
      j["verdict"] = pass ? "PASS" : "FAIL";
      if (vjson)
        std::cout << j.dump(2) << "\n";
      else
        std::printf("%s: empirical max|f-s| = %.6g vs bound = %s (N=%zu, cond~%.3g)\n",
                    pass ? "PASS" : "FAIL", max_err,
                    format_log_scalar_csv(bound.total).c_str(), centers.size(),
                    model.diagnostics.condition_estimate);
      return pass ? 0 : 1;
    }
  } catch (const coverage_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomain;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomain;
  } catch (const numerical_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
  return 0;
}
