#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mqshape/constants.hpp"
#include "mqshape/errors.hpp"
#include "mqshape/log_scalar.hpp"

namespace mqshape {

enum class AdviceKind {
  optimal,
  suggested,
  monotone_larger_better,
  monotone_smaller_better,
};

inline const char* to_string(AdviceKind k) {
  switch (k) {
    case AdviceKind::optimal: return "optimal";
    case AdviceKind::suggested: return "suggested";
    case AdviceKind::monotone_larger_better: return "monotone_larger_better";
    case AdviceKind::monotone_smaller_better: return "monotone_smaller_better";
  }
  return "?";
}

struct TraceEntry {
  std::string what;
  double value = 0.0;
  std::string verdict;  // "true"/"false" for conditions, "computed" for quantities
};

/// Outcome of a shape-parameter recommendation.  c and the interval ends are
/// log-domain (the feasibility floor is ~e^468 already at n = 3); the full
/// decision path is retained in branch_trace.
struct ShapeAdvice {
  LogScalar c;
  std::string case_label;
  std::vector<TraceEntry> branch_trace;
  LogScalar c_min;                  // feasibility floor of the bound constants
  std::optional<LogScalar> c_max;   // nullopt = unbounded above
  AdviceKind advice_kind = AdviceKind::optimal;
  std::optional<LogScalar> objective_value;

  /// ln of the governing objective as a function of ln c; present whenever
  /// the dispatched case has one (grid verification hooks onto this).
  std::function<double(double)> objective_log;
};

struct AdvisorInputs {
  int n = 1;
  double beta = 1.0;
  double sigma = 1.0;
  double delta = 0.01;
  std::optional<double> b0;        // required for practical / fixed-b0 modes
  double delta_very_small = -1.0;  // < 0: default b0/800
  double c_cap_factor = 1e6;       // concrete c for larger-better verdicts
};

namespace detail {

struct AdvisorCtx {
  SmoothnessConstants sc;
  GammaSeqValue gamma;
  int m = 0;
  double rho = 1.0;
  double two_n_gamma = 0.0;  // 2 n gamma_n as a double (inf for absurd n)
  double ln_floor = 0.0;     // ln(12 rho sqrt(n) e^{2n g} g (m+1) delta)
  double ln_abs_eta = 0.0;   // ln |eta(delta)|
  double eta_delta = 0.0;    // ln(2/3) / (12 rho sqrt(n) e^{2n g} g delta); may underflow to -0
};

inline AdvisorCtx make_advisor_ctx(int n, double beta, double delta) {
  AdvisorCtx ctx;
  ctx.sc = rho_delta0(n, beta);
  ctx.gamma = gamma_seq(n);
  ctx.m = ctx.sc.m;
  ctx.rho = ctx.sc.rho;
  ctx.two_n_gamma = 2.0 * n * ctx.gamma.to_double();
  double ln_base = std::log(12.0 * ctx.rho * std::sqrt(static_cast<double>(n))) +
                   ctx.two_n_gamma + ctx.gamma.ln + std::log(delta);
  ctx.ln_floor = ln_base + std::log(ctx.m + 1.0);
  ctx.ln_abs_eta = std::log(-TheoremConstants::kLn23) - ln_base;
  ctx.eta_delta = -std::exp(ctx.ln_abs_eta);
  return ctx;
}

inline void trace(std::vector<TraceEntry>& t, std::string what, double v,
                  std::string verdict = "computed") {
  t.push_back({std::move(what), v, std::move(verdict)});
}

inline void trace_cond(std::vector<TraceEntry>& t, std::string what, double v,
                       bool verdict) {
  t.push_back({std::move(what), v, verdict ? "true" : "false"});
}

inline void require_coverage(int n, double beta) {
  if (!(n + beta >= 1.0 || n + beta == -1.0))
    throw coverage_error(
        "outside theory coverage: need n+beta >= 1 or n+beta = -1 "
        "(n=1, beta=-1 goes through its own case)");
}

inline void require_delta_below(double delta, double max_delta,
                                const char* which) {
  if (!(delta < max_delta)) {
    std::string msg = "fill distance too large for the error-bound guarantee: require delta < ";
    msg += std::to_string(max_delta);
    msg += " (";
    msg += which;
    msg += "), got ";
    msg += std::to_string(delta);
    throw std::domain_error(msg);
  }
}

inline double require_b0(const AdvisorInputs& in) {
  if (!in.b0 || !(*in.b0 > 0.0))
    throw std::domain_error("this mode requires b0 > 0");
  return *in.b0;
}

// ln H1 piece (c <= c0) of the fixed-b0 objective: the two c-terms can both
// exceed the double range for n >= 4; resolve the sign by the dominant log.
inline double h1_piece_log(double q, double sigma, double ln_abs_eta,
                           double lnc) {
  double t_sig = 0.5 * sigma * std::exp(lnc);
  double t_eta = std::exp(lnc + ln_abs_eta);
  if (std::isinf(t_sig) && std::isinf(t_eta))
    return std::log(0.5 * sigma) >= ln_abs_eta
               ? std::numeric_limits<double>::infinity()
               : -std::numeric_limits<double>::infinity();
  return q * lnc + t_sig - t_eta;
}

}  // namespace detail

/// Practical criteria (the lambda^{1/delta} factor treated as negligible);
/// case labels S2.*.
///
/// Case 1 (beta+1-n >= 0): minimal feasible c, except the (n=1, beta=1)
/// sub-procedure where the lambda term is kept; Case 2 (beta+1-n < 0):
/// c = max{(n-beta-1)/(2 sigma), floor}; Case 3 (n=1, beta=-1): suggested
/// c = 1/sigma.
inline ShapeAdvice advise_practical(const AdvisorInputs& in) {
  if (in.n < 1 || !(in.sigma > 0.0) || !(in.delta > 0.0))
    throw std::domain_error("advise_practical: need n >= 1, sigma > 0, delta > 0");
  const double b0 = detail::require_b0(in);
  detail::AdvisorCtx ctx = detail::make_advisor_ctx(in.n, in.beta, in.delta);
  ShapeAdvice adv;
  auto& tr = adv.branch_trace;
  adv.c_min = LogScalar::from_ln(+1, ctx.ln_floor);
  adv.c_max = std::nullopt;

  if (in.n == 1 && in.beta == -1.0) {
    // Case 3
    double e4 = std::exp(4.0);
    double dmax = std::min(1.0 / (24.0 * in.sigma * e4), b0 / 8.0);
    detail::trace(tr, "delta_range_max = min{1/(24 sigma e^4), b0/8}", dmax);
    detail::require_delta_below(in.delta, dmax, "S2.Case3 range");
    adv.case_label = "S2.Case3";
    adv.advice_kind = AdviceKind::suggested;
    adv.c = LogScalar::from_value(1.0 / in.sigma);
    detail::trace(tr, "c = 1/sigma", 1.0 / in.sigma);
    return adv;  // objective involves the unknown spectrum of f
  }

  detail::require_coverage(in.n, in.beta);
  double dmax = b0 / 4.0 * std::exp(-ctx.gamma.ln) / (ctx.m + 1.0);
  detail::trace(tr, "delta_range_max = b0/(4 gamma_n (m+1))", dmax);
  detail::require_delta_below(in.delta, dmax, "S2 Case1/2 range");

  double s_disc = in.beta + 1.0 - in.n;
  detail::trace_cond(tr, "beta+1-n >= 0", s_disc, s_disc >= 0.0);
  if (s_disc >= 0.0) {
    if (in.n == 1 && in.beta == 1.0) {
      // Case 1(b): the lambda term is not negligible here.
      double e4 = std::exp(4.0);
      double eta = TheoremConstants::kLn23 / (24.0 * e4 * in.delta);
      double e_disc = 0.5 * in.sigma + eta;
      double ln_c1 = ctx.ln_floor;
      double c0p = 3.0 * b0 * e4;
      detail::trace(tr, "eta = ln(2/3)/(24 e^4 delta)", eta);
      detail::trace(tr, "c1(ln)", ln_c1);
      detail::trace(tr, "c0 = 3 b0 e^4", c0p);
      double lnK = std::log(-TheoremConstants::kLn23) -
                   std::log(24.0 * e4 * in.delta);  // |eta|
      auto h_log = [sigma = in.sigma, lnK, ln_c0 = std::log(c0p)](double lnc) {
        double capped = std::min(lnc, ln_c0);
        return 0.25 * lnc + 0.5 * sigma * std::exp(lnc) -
               std::exp(capped + lnK);
      };
      adv.objective_log = h_log;
      adv.advice_kind = AdviceKind::optimal;
      detail::trace_cond(tr, "sigma/2 + eta >= 0", e_disc, e_disc >= 0.0);
      if (e_disc >= 0.0) {
        adv.case_label = "S2.Case1b.i";
        adv.c = LogScalar::from_ln(+1, ln_c1);
      } else {
        double c_star = -1.0 / (4.0 * e_disc);
        detail::trace(tr, "c* = -1/(4(sigma/2+eta))", c_star);
        double c1 = std::exp(ln_c1);
        if (c1 < c_star && c_star < c0p) {
          double h_c1 = h_log(ln_c1), h_c0 = h_log(std::log(c0p));
          detail::trace(tr, "ln H(c1)", h_c1);
          detail::trace(tr, "ln H(c0)", h_c0);
          adv.case_label = "S2.Case1b.ii";
          adv.c = (h_c1 <= h_c0) ? LogScalar::from_ln(+1, ln_c1)
                                 : LogScalar::from_value(c0p);
        } else if (c0p <= c_star) {
          adv.case_label = "S2.Case1b.iii";
          adv.c = LogScalar::from_ln(+1, ln_c1);
        } else {  // c_star <= c1
          adv.case_label = "S2.Case1b.iv";
          adv.c = LogScalar::from_value(c0p);
        }
      }
    } else {
      // Case 1(a): bound increasing in c, take the feasibility floor.
      adv.case_label = "S2.Case1a";
      adv.advice_kind = AdviceKind::optimal;
      adv.c = LogScalar::from_ln(+1, ctx.ln_floor);
      adv.objective_log = [q = s_disc / 4.0, sigma = in.sigma](double lnc) {
        return q * lnc + 0.5 * sigma * std::exp(lnc);
      };
    }
  } else {
    // Case 2: g(c) = c^{(beta+1-n)/4} e^{c sigma/2}, minimum at (n-beta-1)/(2 sigma).
    double c_opt = (in.n - in.beta - 1.0) / (2.0 * in.sigma);
    detail::trace(tr, "(n-beta-1)/(2 sigma)", c_opt);
    LogScalar floor = LogScalar::from_ln(+1, ctx.ln_floor);
    LogScalar cand = LogScalar::from_value(c_opt);
    adv.case_label = "S2.Case2";
    adv.advice_kind = AdviceKind::optimal;
    adv.c = max(cand, floor);
    detail::trace_cond(tr, "interior minimizer >= floor", c_opt,
                       cand >= floor);
    adv.objective_log = [q = s_disc / 4.0, sigma = in.sigma](double lnc) {
      return q * lnc + 0.5 * sigma * std::exp(lnc);
    };
  }
  adv.objective_value =
      LogScalar::from_ln(+1, adv.objective_log(adv.c.ln_mag()));
  return adv;
}

/// Theoretical criteria on a fixed cube side b0 (lambda^{1/delta} included);
/// case labels S3.1.*.
inline ShapeAdvice advise_theoretical_fixed(const AdvisorInputs& in) {
  if (in.n < 1 || !(in.sigma > 0.0) || !(in.delta > 0.0))
    throw std::domain_error("advise_theoretical_fixed: need n >= 1, sigma > 0, delta > 0");
  const double b0 = detail::require_b0(in);
  detail::AdvisorCtx ctx = detail::make_advisor_ctx(in.n, in.beta, in.delta);
  ShapeAdvice adv;
  auto& tr = adv.branch_trace;
  adv.c_min = LogScalar::from_ln(+1, ctx.ln_floor);
  adv.c_max = std::nullopt;

  if (in.n == 1 && in.beta == -1.0) {
    // Case 6: suggested values only.
    double e4 = std::exp(4.0);
    double dmax = std::min(1.0 / (24.0 * in.sigma * e4), b0 / 8.0);
    detail::trace(tr, "delta_range_max = min{1/(24 sigma e^4), b0/8}", dmax);
    detail::require_delta_below(in.delta, dmax, "S3.1.Case6 range");
    double c0p = 3.0 * b0 * e4;
    double inv_sigma = 1.0 / in.sigma;
    double dvs = in.delta_very_small >= 0.0 ? in.delta_very_small : b0 / 800.0;
    detail::trace(tr, "c0 = 3 b0 e^4", c0p);
    detail::trace(tr, "delta_very_small threshold", dvs);
    adv.advice_kind = AdviceKind::suggested;
    detail::trace_cond(tr, "3 b0 e^4 < 1/sigma", c0p, c0p < inv_sigma);
    if (c0p < inv_sigma) {
      adv.case_label = "S3.1.Case6a";
      adv.c = LogScalar::from_value(inv_sigma);
    } else {
      adv.case_label = "S3.1.Case6b";
      detail::trace_cond(tr, "delta < delta_very_small", in.delta,
                         in.delta < dvs);
      adv.c = LogScalar::from_value(in.delta < dvs ? c0p : inv_sigma);
    }
    return adv;
  }

  detail::require_coverage(in.n, in.beta);
  double dmax = b0 / 4.0 * std::exp(-ctx.gamma.ln) / (ctx.m + 1.0);
  detail::trace(tr, "delta_range_max = b0/(4 gamma_n (m+1))", dmax);
  detail::require_delta_below(in.delta, dmax, "S3.1 Cases 1-5 range");

  double ln_c0 = std::log(3.0 * b0 * ctx.rho * std::sqrt(static_cast<double>(in.n))) +
                 ctx.two_n_gamma;
  double s_disc = in.beta + 1.0 - in.n;
  double e_disc = ctx.eta_delta + 0.5 * in.sigma;
  double q = s_disc / 4.0;
  detail::trace(tr, "eta(delta)", ctx.eta_delta);
  detail::trace(tr, "c_floor(ln)", ctx.ln_floor);
  detail::trace(tr, "c0(ln)", ln_c0);
  detail::trace_cond(tr, "1+beta-n >= 0", s_disc, s_disc >= 0.0);
  detail::trace_cond(tr, "eta(delta)+sigma/2 >= 0", e_disc, e_disc >= 0.0);

  // ln H(c): q ln c + (sigma/2) c + ln(2/3) min(c, c0)/(12 rho sqrt(n) e^{2ng} g delta)
  double term_large = TheoremConstants::kLn23 *
                      std::exp(std::log(b0 / 4.0) - ctx.gamma.ln - std::log(in.delta));
  auto h_log = [q, sigma = in.sigma, ln_abs_eta = ctx.ln_abs_eta, ln_c0,
                term_large](double lnc) {
    if (lnc <= ln_c0)
      return detail::h1_piece_log(q, sigma, ln_abs_eta, lnc);
    return q * lnc + 0.5 * sigma * std::exp(lnc) + term_large;
  };
  adv.objective_log = h_log;
  adv.advice_kind = AdviceKind::optimal;

  if (s_disc >= 0.0 && e_disc >= 0.0) {
    adv.case_label = "S3.1.Case1";
    adv.c = LogScalar::from_ln(+1, ctx.ln_floor);
  } else if (s_disc > 0.0 && e_disc < 0.0) {
    // Case 2: interior stationary point of H1 is a maximum; compare ends.
    double c_star = (in.n - in.beta - 1.0) / (4.0 * e_disc);
    detail::trace(tr, "c* = (n-beta-1)/(4 eta + 2 sigma)", c_star);
    double ln_cstar = std::log(c_star);
    if (ctx.ln_floor <= ln_cstar && ln_cstar <= ln_c0) {
      double h_floor = h_log(ctx.ln_floor), h_c0 = h_log(ln_c0);
      detail::trace(tr, "ln H(c_floor)", h_floor);
      detail::trace(tr, "ln H(c0)", h_c0);
      adv.case_label = "S3.1.Case2a";
      adv.c = (h_floor <= h_c0) ? LogScalar::from_ln(+1, ctx.ln_floor)
                                : LogScalar::from_ln(+1, ln_c0);
    } else if (ln_cstar < ctx.ln_floor) {
      adv.case_label = "S3.1.Case2b";
      adv.c = LogScalar::from_ln(+1, ln_c0);
    } else {
      adv.case_label = "S3.1.Case2c";
      adv.c = LogScalar::from_ln(+1, ctx.ln_floor);
    }
  } else if (s_disc == 0.0 && e_disc < 0.0) {
    adv.case_label = "S3.1.Case3";
    adv.c = LogScalar::from_ln(+1, ln_c0);
  } else if (s_disc < 0.0 && e_disc >= 0.0) {
    // Case 4: compare the minimum of each piece.
    double c1 = (in.n - 1.0 - in.beta) / (4.0 * e_disc);  // +inf when e_disc = 0
    double c2 = (in.n - 1.0 - in.beta) / (2.0 * in.sigma);
    detail::trace(tr, "c1 = (n-1-beta)/(4(eta+sigma/2))", c1);
    detail::trace(tr, "c2 = (n-1-beta)/(2 sigma)", c2);
    double ln_piece1;
    if (!std::isfinite(c1) || std::log(c1) >= ln_c0)
      ln_piece1 = ln_c0;
    else if (std::log(c1) >= ctx.ln_floor)
      ln_piece1 = std::log(c1);
    else
      ln_piece1 = ctx.ln_floor;
    double ln_piece2 = (std::log(c2) <= ln_c0) ? ln_c0 : std::log(c2);
    double h1v = h_log(ln_piece1), h2v = h_log(ln_piece2);
    detail::trace(tr, "ln H(piece1 argmin)", h1v);
    detail::trace(tr, "ln H(piece2 argmin)", h2v);
    adv.case_label = "S3.1.Case4";
    adv.c = LogScalar::from_ln(+1, h1v <= h2v ? ln_piece1 : ln_piece2);
  } else {
    // Case 5: H decreasing on (0, c0]; beyond c0 the minimum is at max(c0, c2).
    double c2 = (in.n - 1.0 - in.beta) / (2.0 * in.sigma);
    detail::trace(tr, "c2 = (n-1-beta)/(2 sigma)", c2);
    detail::trace_cond(tr, "c0 <= c2", c2, ln_c0 <= std::log(c2));
    if (ln_c0 <= std::log(c2)) {
      adv.case_label = "S3.1.Case5i";
      adv.c = LogScalar::from_value(c2);
    } else {
      adv.case_label = "S3.1.Case5ii";
      adv.c = LogScalar::from_ln(+1, ln_c0);
    }
  }
  adv.objective_value =
      LogScalar::from_ln(+1, adv.objective_log(adv.c.ln_mag()));
  return adv;
}

/// Theoretical criteria on dilation-invariant domains (b0 grows as needed,
/// so the c-dependent branch of C stays active for every c); case labels S3.2.*.
inline ShapeAdvice advise_theoretical_unfixed(const AdvisorInputs& in) {
  if (in.n < 1 || !(in.sigma > 0.0) || !(in.delta > 0.0))
    throw std::domain_error("advise_theoretical_unfixed: need n >= 1, sigma > 0, delta > 0");
  detail::AdvisorCtx ctx = detail::make_advisor_ctx(in.n, in.beta, in.delta);
  ShapeAdvice adv;
  auto& tr = adv.branch_trace;
  adv.c_min = LogScalar::from_ln(+1, ctx.ln_floor);
  adv.c_max = std::nullopt;

  if (in.n == 1 && in.beta == -1.0) {
    // Case 6, with eta = ln(2/3)/(24 e^4 delta).
    double e4 = std::exp(4.0);
    double dmax = 1.0 / (24.0 * in.sigma * e4);
    detail::trace(tr, "delta_range_max = 1/(24 sigma e^4)", dmax);
    detail::require_delta_below(in.delta, dmax, "S3.2.Case6 range");
    double eta = ctx.eta_delta;  // rho = 1, gamma_1 = 2 here
    double e_disc = eta + 0.5 * in.sigma;
    detail::trace(tr, "eta", eta);
    detail::trace_cond(tr, "eta + sigma/2 < 0", e_disc, e_disc < 0.0);
    auto g_log = [sigma = in.sigma, e_disc](double lnc) {
      return 0.25 * std::log(sigma) - 0.25 * lnc + e_disc * std::exp(lnc);
    };
    adv.objective_log = g_log;
    if (e_disc < 0.0) {
      adv.case_label = "S3.2.Case6a";
      adv.advice_kind = AdviceKind::monotone_larger_better;
      adv.c = LogScalar::from_ln(
          +1, std::log(in.c_cap_factor) + ctx.ln_floor);
      detail::trace(tr, "returned cap = c_cap_factor * floor (open-ended)",
                    adv.c.ln_mag());
    } else {
      double c_star = 1.0 / (4.0 * e_disc);
      detail::trace(tr, "c* = 1/(4(eta+sigma/2))", c_star);
      adv.case_label = "S3.2.Case6b";
      adv.advice_kind = AdviceKind::suggested;
      adv.c = LogScalar::from_value(
          c_star >= 1.0 / in.sigma ? c_star : 1.0 / in.sigma);
    }
    adv.objective_value =
        LogScalar::from_ln(+1, adv.objective_log(adv.c.ln_mag()));
    return adv;
  }

  detail::require_coverage(in.n, in.beta);
  double s_disc = in.beta + 1.0 - in.n;
  double ln_h = 0.5 * in.sigma + ctx.eta_delta;  // ln H(sigma, delta)
  double q = s_disc / 4.0;
  detail::trace(tr, "eta(delta)", ctx.eta_delta);
  detail::trace(tr, "ln H(sigma, delta)", ln_h);
  detail::trace(tr, "c_floor(ln)", ctx.ln_floor);
  detail::trace_cond(tr, "beta+1-n > 0", s_disc, s_disc > 0.0);
  detail::trace_cond(tr, "H(sigma, delta) > 1", ln_h, ln_h > 0.0);

  auto g_log = [q, ln_h](double lnc) { return q * lnc + ln_h * std::exp(lnc); };
  adv.objective_log = g_log;

  if (s_disc > 0.0 && ln_h >= 0.0) {
    adv.case_label = "S3.2.Case1";
    adv.advice_kind = AdviceKind::optimal;
    adv.c = LogScalar::from_ln(+1, ctx.ln_floor);
  } else if (s_disc < 0.0 && ln_h > 0.0) {
    // Case 2: G has a single interior minimum at c* = (n-1-beta)/(4 ln H).
    LogScalar c_star = LogScalar::from_ln(
        +1, std::log(in.n - 1.0 - in.beta) - std::log(4.0) - std::log(ln_h));
    detail::trace(tr, "c*(ln) = ln((n-1-beta)/(4 eta))", c_star.ln_mag());
    LogScalar floor = LogScalar::from_ln(+1, ctx.ln_floor);
    adv.case_label = "S3.2.Case2";
    adv.advice_kind = AdviceKind::optimal;
    adv.c = (c_star < floor) ? floor : c_star;
    detail::trace_cond(tr, "c* < c_floor", c_star.ln_mag(), c_star < floor);
  } else if (s_disc < 0.0 && ln_h == 0.0) {
    // Remark after Case 2: trivial, the larger c the better.
    adv.case_label = "S3.2.Case2.remark";
    adv.advice_kind = AdviceKind::monotone_larger_better;
    adv.c = LogScalar::from_ln(+1, std::log(in.c_cap_factor) + ctx.ln_floor);
  } else if (s_disc > 0.0 && ln_h < 0.0) {
    // Case 3: bound -> 0 at both ends; floor is the minimal feasible choice.
    adv.case_label = "S3.2.Case3";
    adv.advice_kind = AdviceKind::monotone_smaller_better;
    adv.c = LogScalar::from_ln(+1, ctx.ln_floor);
    detail::trace(tr, "bound -> 0 as c -> 0+ and c -> inf; floor returned",
                  ctx.ln_floor);
  } else if (s_disc <= 0.0 && ln_h < 0.0) {
    adv.case_label = "S3.2.Case4";
    adv.advice_kind = AdviceKind::monotone_larger_better;
    adv.c = LogScalar::from_ln(+1, std::log(in.c_cap_factor) + ctx.ln_floor);
    detail::trace(tr, "returned cap = c_cap_factor * floor (open-ended)",
                  adv.c.ln_mag());
  } else if (s_disc == 0.0 && ln_h > 0.0) {
    adv.case_label = "S3.2.Case5";
    adv.advice_kind = AdviceKind::optimal;
    adv.c = LogScalar::from_ln(+1, ctx.ln_floor);
  } else {
    // s_disc == 0 && ln_h == 0: G is identically 1.
    throw std::domain_error(
        "boundary case excluded by paper: beta+1-n = 0 with H(sigma,delta) = 1");
  }
  adv.objective_value =
      LogScalar::from_ln(+1, adv.objective_log(adv.c.ln_mag()));
  return adv;
}

}  // namespace mqshape
