#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "mqshape/big_float.hpp"
#include "mqshape/interpolator.hpp"
#include "mqshape/kernel.hpp"

using namespace mqshape;

namespace {

// |a - b| in units of 2^-k relative to |b|
bool agrees_to_bits(const BigFloat& a, const BigFloat& b, int bits) {
  BigFloat diff = abs(a - b);
  BigFloat scale = abs(b);
  if (scale.is_zero()) return diff.is_zero();
  BigFloat ratio = diff / scale;
  return ratio.to_double() <= std::ldexp(1.0, -bits);
}

}  // namespace

TEST_CASE("PrecisionPolicy contract") {
  CHECK(PrecisionPolicy::machine().mode == PrecisionPolicy::Mode::machine);
  CHECK(PrecisionPolicy::extended(256).bits == 256);
  CHECK(PrecisionPolicy::extended().is_extended());
  CHECK_THROWS_AS(PrecisionPolicy::extended(64), std::domain_error);
  CHECK_NOTHROW(PrecisionPolicy::extended(128));
}

TEST_CASE("BigFloat roundtrip and arithmetic identities at 256 bits") {
  BigFloat two(2.0, 256);
  BigFloat r = sqrt(two);
  CHECK(agrees_to_bits(r * r, two, 250));

  BigFloat x(1.7318906, 256);
  CHECK(agrees_to_bits(exp(log(x)), x, 248));
  CHECK(agrees_to_bits(pow(x, BigFloat(3.0, 256)), x * x * x, 248));

  CHECK(std::abs(BigFloat(0.1234567890123, 256).to_double() - 0.1234567890123) == 0.0);
  CHECK(BigFloat(256).is_zero());
}

TEST_CASE("BigFloat pi and gamma reference values") {
  BigFloat pi = BigFloat::pi(256);
  CHECK(pi.to_double() == M_PI);
  // Gamma(-1/2) = -2 sqrt(pi), full precision
  BigFloat g = tgamma(BigFloat(-0.5, 256));
  BigFloat expect = BigFloat(-2.0, 256) * sqrt(pi);
  CHECK(agrees_to_bits(g, expect, 250));
  CHECK(tgamma(BigFloat(4.0, 256)).to_double() == 6.0);
}

TEST_CASE("BigFloat sub_mul matches the expanded expression") {
  BigFloat acc(3.5, 256), a(1.25, 256), b(-0.75, 256);
  BigFloat ref = acc - a * b;
  acc.sub_mul(a, b);
  CHECK((acc - ref).is_zero());
}

TEST_CASE("extended solve precision scales with the requested bits") {
  // kappa ~ 1e18 kernel matrix: doubles are at their limit, while the 192-
  // and 384-bit solves agree to >= 100 bits on every coefficient.
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 25; ++i) pts.push_back({i / 24.0});
  CenterSet centers(1, pts, Cube{{0.0}, 1.0});
  std::vector<double> f;
  for (const auto& p : pts) f.push_back(std::sin(9.0 * p[0]));
  auto spec = validate_spec(1.0, 1.0);
  auto lo = solve_interpolant(spec, centers, f, PrecisionPolicy::extended(192));
  auto hi = solve_interpolant(spec, centers, f, PrecisionPolicy::extended(384));
  REQUIRE(lo.ext);
  REQUIRE(hi.ext);
  CHECK(lo.ext->bits == 192);
  CHECK(hi.ext->bits == 384);
  double kappa = lo.diagnostics.condition_estimate;
  CHECK(kappa > 1e10);  // the whole point of the extended path
  for (std::size_t i = 0; i < pts.size(); ++i)
    CHECK(agrees_to_bits(lo.ext->kernel_coeffs[i], hi.ext->kernel_coeffs[i], 100));
  // both meet the residual contract with room to spare
  double fn = 0.0;
  for (double v : f) fn += v * v;
  fn = std::sqrt(fn);
  CHECK(lo.diagnostics.residual_norm <= 1e-8 * fn);
  CHECK(hi.diagnostics.residual_norm <= 1e-8 * fn);
  CHECK(lo.diagnostics.residual_norm <= 1e-30 * fn);
}

TEST_CASE("gamma_seq exposes the LogScalar view") {
  auto g = gamma_seq(4);
  CHECK(g.as_log_scalar().sign() == +1);
  CHECK(std::abs(g.as_log_scalar().ln_mag() - std::log(632.0)) < 1e-12);
}
