#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "mqshape/constants.hpp"

using namespace mqshape;

namespace {

bool rel_close(double a, double b, double tol) {
  double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return true;
  return std::abs(a - b) <= tol * scale;
}

double random_valid_beta(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-6.0, 8.0);
  for (;;) {
    double beta = u(rng);
    bool excluded = beta >= 0.0 && std::nearbyint(beta) == beta &&
                    std::fmod(beta, 2.0) == 0.0;
    if (!excluded && std::abs(beta) > 1e-6) return beta;
  }
}

}  // namespace

TEST_CASE("gamma_seq first values and growth") {
  CHECK(gamma_seq(1).to_string() == "2");
  CHECK(gamma_seq(2).to_string() == "12");
  CHECK(gamma_seq(3).to_string() == "78");
  CHECK(gamma_seq(4).to_string() == "632");
  CHECK(gamma_seq(5).to_string() == "6330");  // 2*5*(1+632)
  // exact big-integer path: these no longer fit in uint64
  CHECK(gamma_seq(17).to_string() == "76864478042193603042");
  CHECK(gamma_seq(20).to_string() == "4206024238468833958514520");
}

TEST_CASE("gamma_seq ln consistency") {
  for (int n = 1; n <= 30; ++n) {
    GammaSeqValue g = gamma_seq(n);
    if (n <= 15)
      CHECK(rel_close(g.ln, std::log(g.to_double()), 1e-13));
    if (n > 1) {
      GammaSeqValue prev = gamma_seq(n - 1);
      // recursion in log form: g_n = 2n (1 + g_{n-1})
      double expect = std::log(2.0 * n) + prev.ln +
                      std::log1p(std::exp(-prev.ln));
      CHECK(rel_close(g.ln, expect, 1e-12));
    }
  }
}

TEST_CASE("cpd_order") {
  CHECK(cpd_order(1.0) == 1);
  CHECK(cpd_order(-1.0) == 0);
  CHECK(cpd_order(2.5) == 2);
  CHECK(cpd_order(3.0) == 2);
  CHECK(cpd_order(-2.0) == 0);  // negative even integers are allowed
  CHECK(cpd_order(0.5) == 1);
  CHECK_THROWS_AS(cpd_order(0.0), std::domain_error);
  CHECK_THROWS_AS(cpd_order(2.0), std::domain_error);
  CHECK_THROWS_AS(cpd_order(4.0), std::domain_error);
}

TEST_CASE("rho_delta0 spot checks from the case table") {
  {
    // (n=4, beta=1.5): case (b)
    auto s = rho_delta0(4, 1.5);
    CHECK(s.case_label == "b");
    CHECK(s.rho == 1.0);
    CHECK(rel_close(s.delta0_value(), 1.0, 1e-15));
  }
  {
    // (n=5, beta=-1): case (a)(i), s=2, rho=5/3, Delta0=(4*3)/(5/3)^2=4.32
    auto s = rho_delta0(5, -1.0);
    CHECK(s.case_label == "a.i");
    REQUIRE(s.s.has_value());
    CHECK(*s.s == 2);
    CHECK(rel_close(s.rho, 5.0 / 3.0, 1e-15));
    CHECK(rel_close(s.delta0_value(), 4.32, 1e-12));
  }
  {
    // (n=1, beta=1): case (c), s=1, m=1, Delta0 = 1/(2m+2) = 1/4
    auto s = rho_delta0(1, 1.0);
    CHECK(s.case_label == "c");
    REQUIRE(s.s.has_value());
    CHECK(*s.s == 1);
    CHECK(s.m == 1);
    CHECK(s.rho == 1.0);
    CHECK(rel_close(s.delta0_value(), 0.25, 1e-12));
  }
  {
    // (n=8, beta=1): case (a)(ii), s=2, rho=7/5, Delta0 = 30/(7/5)^4
    auto s = rho_delta0(8, 1.0);
    CHECK(s.case_label == "a.ii");
    REQUIRE(s.s.has_value());
    CHECK(*s.s == 2);
    CHECK(rel_close(s.rho, 1.4, 1e-15));
    CHECK(rel_close(s.delta0_value(), 30.0 / std::pow(1.4, 4.0), 1e-12));
  }
  {
    // (n=1, beta=3): case (c), s=2, m=2, Delta0 = 1/(6*5)
    auto s = rho_delta0(1, 3.0);
    CHECK(s.case_label == "c");
    CHECK(*s.s == 2);
    CHECK(rel_close(s.delta0_value(), 1.0 / 30.0, 1e-12));
  }
  {
    // (n=1, beta=-1) and (n=1, beta=-2): case (b)
    CHECK(rho_delta0(1, -1.0).case_label == "b");
    CHECK(rho_delta0(1, -2.0).case_label == "b");
  }
}

TEST_CASE("rho_delta0 invariants: rho >= 1, Delta0 > 0, exactly one case") {
  std::mt19937 rng(42);
  for (int i = 0; i < 5000; ++i) {
    int n = 1 + static_cast<int>(rng() % 8);
    double beta = random_valid_beta(rng);
    auto s = rho_delta0(n, beta);
    CHECK(s.rho >= 1.0);
    CHECK(s.delta0_const.sign() == +1);
    // case partition re-derived independently
    std::string expect;
    if (beta < n - 3)
      expect = beta < 0 ? "a.i" : "a.ii";
    else if (beta < n - 1)
      expect = "b";
    else
      expect = "c";
    CHECK(s.case_label == expect);
    // rho = 1 exactly in cases (b) and (c)
    if (expect == "b" || expect == "c") CHECK(s.rho == 1.0);
  }
}

TEST_CASE("unit_ball_volume") {
  CHECK(rel_close(unit_ball_volume(1), 2.0, 1e-13));
  CHECK(rel_close(unit_ball_volume(2), M_PI, 1e-13));
  CHECK(rel_close(unit_ball_volume(3), 4.0 * M_PI / 3.0, 1e-13));
  CHECK(rel_close(unit_ball_volume(4), M_PI * M_PI / 2.0, 1e-13));
}

TEST_CASE("smn counts degree-m monomials in n variables") {
  CHECK(smn(0, 1) == 1);
  CHECK(smn(0, 7) == 1);
  CHECK(smn(1, 3) == 3);
  CHECK(smn(2, 2) == 3);  // {(2,0),(1,1),(0,2)}
  // brute-force enumeration cross-check
  auto brute = [](int m, int n) {
    long long count = 0;
    std::function<void(int, int)> rec = [&](int pos, int rem) {
      if (pos == n - 1) {
        ++count;
        return;
      }
      for (int e = 0; e <= rem; ++e) rec(pos + 1, rem - e);
    };
    rec(0, m);
    return count;
  };
  for (int m = 0; m <= 6; ++m)
    for (int n = 1; n <= 5; ++n) CHECK(smn(m, n) == brute(m, n));
}

TEST_CASE("theorem_constants: (n=1, beta=1, b0=8, c=1)") {
  auto tc = theorem_constants(1, 1.0, 8.0, 1.0);
  // C = max{2 e^4, 1/12} = 2 e^4
  CHECK(rel_close(tc.C.to_double(), 2.0 * std::exp(4.0), 1e-12));
  CHECK(tc.regime == TheoremConstants::Regime::c_small);
  CHECK(rel_close(tc.delta0.to_double(), 1.0 / (48.0 * std::exp(4.0)), 1e-12));
  CHECK(rel_close(tc.lambda, 0.99969061651469021, 1e-12));
}

TEST_CASE("theorem_constants: (n=1, beta=-1, b0=1) delta0 = c/(24 e^4) below crossover") {
  for (double c : {0.5, 3.0, 100.0, 3.0 * std::exp(4.0)}) {
    auto tc = theorem_constants(1, -1.0, 1.0, c);
    CHECK(rel_close(tc.delta0.to_double(), c / (24.0 * std::exp(4.0)), 1e-12));
  }
  // above the crossover the plateau b0/8 holds
  auto tc = theorem_constants(1, -1.0, 1.0, 10.0 * 3.0 * std::exp(4.0));
  CHECK(rel_close(tc.delta0.to_double(), 1.0 / 8.0, 1e-12));
}

TEST_CASE("theorem_constants: n=2 example tracks the paper's lambda claim") {
  // At c = 1e12 the c-dependent branch of C is still active (the crossover
  // sits at 3 b0 rho sqrt(2) e^48 ~ 2.98e21), and lambda exceeds its
  // large-c floor value (2/3)^{1/48}.
  auto tc = theorem_constants(2, 1.0, 1.0, 1e12);
  CHECK(tc.regime == TheoremConstants::Regime::c_small);
  double floor_lambda = std::pow(2.0 / 3.0, 1.0 / 48.0);
  CHECK(tc.lambda > floor_lambda);
  CHECK(rel_close(tc.crossover_c0.ln_mag(),
                  std::log(3.0 * std::sqrt(2.0)) + 48.0, 1e-12));

  // past the crossover: C = 2/(3 b0) = 2/3 and lambda = (2/3)^{1/48}
  auto tc2 = theorem_constants(2, 1.0, 1.0, 1e22);
  CHECK(tc2.regime == TheoremConstants::Regime::c_large);
  CHECK(rel_close(tc2.C.to_double(), 2.0 / 3.0, 1e-12));
  CHECK(rel_close(tc2.lambda, 0.99158838750866654, 1e-12));
}

TEST_CASE("regime flag flips exactly at the crossover") {
  for (int n : {1, 2}) {
    double beta = 1.0;
    double b0 = 2.0;
    auto sc = rho_delta0(n, beta);
    double g = gamma_seq(n).to_double();
    double ln_c0 = std::log(3.0 * b0 * sc.rho * std::sqrt(double(n))) + 2.0 * n * g;
    if (ln_c0 > 700) continue;  // crossover beyond double range for this n
    double c0 = std::exp(ln_c0);
    CHECK(theorem_constants(n, beta, b0, c0 * (1 - 1e-9)).regime ==
          TheoremConstants::Regime::c_small);
    CHECK(theorem_constants(n, beta, b0, c0 * (1 + 1e-9)).regime ==
          TheoremConstants::Regime::c_large);
  }
}

TEST_CASE("delta0 nondecreasing in c below crossover, constant above") {
  double prev = 0.0;
  for (double lc = -3.0; lc <= 3.0; lc += 0.1) {
    auto tc = theorem_constants(1, 1.0, 1.0, std::exp(lc));
    double d0 = tc.delta0.to_double();
    CHECK(d0 >= prev);
    prev = d0;
  }
  double plateau =
      theorem_constants(1, 1.0, 1.0, 1e4).delta0.to_double();
  CHECK(rel_close(theorem_constants(1, 1.0, 1.0, 1e6).delta0.to_double(),
                  plateau, 1e-13));
}

TEST_CASE("lambda identity: lambda^{1/delta0} = (2/3)^{m+1}, 1000 random draws") {
  std::mt19937 rng(20240815);
  std::uniform_real_distribution<double> lnc(-5.0, 25.0), lb0(-2.0, 3.0);
  std::uniform_int_distribution<int> dn(1, 4);
  for (int i = 0; i < 1000; ++i) {
    int n = dn(rng);
    double beta = random_valid_beta(rng);
    double b0 = std::exp(lb0(rng));
    double c = std::exp(lnc(rng));
    auto tc = theorem_constants(n, beta, b0, c);
    LogScalar lp = tc.lambda_pow_inv_delta(tc.delta0);
    double expect = (tc.m + 1) * std::log(2.0 / 3.0);
    CHECK(std::abs(lp.ln_mag() - expect) <= 1e-12 * std::abs(expect));
  }
}

TEST_CASE("lambda_pow_inv_delta decays as delta shrinks") {
  auto tc = theorem_constants(1, 1.0, 8.0, 1.0);
  double d0 = tc.delta0.to_double();
  LogScalar at_d0 = tc.lambda_pow_inv_delta(d0);
  LogScalar at_half = tc.lambda_pow_inv_delta(d0 / 2.0);
  LogScalar at_tenth = tc.lambda_pow_inv_delta(d0 / 10.0);
  CHECK(at_half < at_d0);
  CHECK(at_tenth < at_half);
  CHECK(rel_close(at_half.ln_mag(), 2.0 * at_d0.ln_mag(), 1e-12));
}
