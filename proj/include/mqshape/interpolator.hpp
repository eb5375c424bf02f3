#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <span>
#include <sstream>
#include <vector>

#include "mqshape/big_float.hpp"
#include "mqshape/kernel.hpp"
#include "mqshape/linalg.hpp"

namespace mqshape {

/// Axis-aligned cube E: corner + side length b0.
struct Cube {
  std::vector<double> corner;
  double side = 1.0;

  int dim() const { return static_cast<int>(corner.size()); }
  bool contains(std::span<const double> x, double tol = 0.0) const {
    for (std::size_t i = 0; i < corner.size(); ++i)
      if (x[i] < corner[i] - tol || x[i] > corner[i] + side + tol) return false;
    return true;
  }
};

/// Distinct interpolation centers inside a cube E.
class CenterSet {
 public:
  CenterSet(int n, std::vector<std::vector<double>> points, Cube cube)
      : n_(n), points_(std::move(points)), cube_(std::move(cube)) {
    if (n < 1) throw std::domain_error("CenterSet: dimension must be >= 1");
    if (points_.empty()) throw std::domain_error("CenterSet: no centers");
    if (cube_.dim() != n) throw std::domain_error("CenterSet: cube dimension mismatch");
    if (!(cube_.side > 0.0)) throw std::domain_error("CenterSet: cube side must be > 0");
    double tol = cube_.side * 1e-12;
    for (const auto& p : points_) {
      if (static_cast<int>(p.size()) != n)
        throw std::domain_error("CenterSet: point dimension mismatch");
      if (!cube_.contains(p, tol))
        throw std::domain_error("CenterSet: point outside cube E");
    }
    for (std::size_t i = 0; i < points_.size(); ++i)
      for (std::size_t j = i + 1; j < points_.size(); ++j)
        if (points_[i] == points_[j]) {
          std::ostringstream os;
          os << "CenterSet: duplicate centers at indices " << i << " and " << j;
          throw std::domain_error(os.str());
        }
  }

  int dim() const { return n_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<std::vector<double>>& points() const { return points_; }
  const Cube& cube() const { return cube_; }

 private:
  int n_;
  std::vector<std::vector<double>> points_;
  Cube cube_;
};

/// Monomial basis of P_{m-1} in graded-lex order; empty when m = 0.
struct PolynomialBasis {
  int dim = 1;
  int degree_bound = -1;  // m - 1
  std::vector<std::vector<int>> exponents;

  int q() const { return static_cast<int>(exponents.size()); }
};

namespace detail {

inline void enumerate_monomials(int n, std::vector<int>& cur, int pos,
                                int remaining,
                                std::vector<std::vector<int>>& out) {
  if (pos == n - 1) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    enumerate_monomials(n, cur, pos + 1, remaining - e, out);
  }
}

}  // namespace detail

inline PolynomialBasis poly_basis(int n, int m) {
  if (n < 1 || m < 0) throw std::domain_error("poly_basis: bad arguments");
  PolynomialBasis b;
  b.dim = n;
  b.degree_bound = m - 1;
  std::vector<int> cur(n, 0);
  for (int d = 0; d <= m - 1; ++d)
    detail::enumerate_monomials(n, cur, 0, d, b.exponents);
  return b;
}

inline double eval_monomial(std::span<const int> expo,
                            std::span<const double> x) {
  double r = 1.0;
  for (std::size_t i = 0; i < expo.size(); ++i)
    for (int k = 0; k < expo[i]; ++k) r *= x[i];
  return r;
}

struct ModelDiagnostics {
  double condition_estimate = 0.0;
  double residual_norm = 0.0;    // max |s(x_i) - f_i|
  double moment_residual = 0.0;  // max_j |sum_i c_i p_j(x_i)|
  double moment_scale = 1.0;     // max_j sum_i |c_i p_j(x_i)|
};

namespace detail {

struct ExtendedCoeffs {
  int bits = 256;
  std::vector<BigFloat> kernel_coeffs;
  std::vector<BigFloat> poly_coeffs;
};

}  // namespace detail

/// Solved interpolant s(x) = sum_i c_i h(x - x_i) + sum_j b_j p_j(x).
/// When solved under an extended policy the full-precision coefficients are
/// retained and evaluation runs through them.
struct InterpolationModel {
  KernelSpec spec;
  CenterSet centers;
  PolynomialBasis basis;
  std::vector<double> values;
  std::vector<double> kernel_coeffs;
  std::vector<double> poly_coeffs;
  ModelDiagnostics diagnostics;
  PrecisionPolicy policy;
  std::shared_ptr<const detail::ExtendedCoeffs> ext;  // null in machine mode
};

/// The symmetric saddle block system [[A, P], [P^T, 0]] with
/// A_ji = h(x_j - x_i), P_ji = p_i(x_j); rhs = (f, 0).
inline std::pair<Matrix<double>, std::vector<double>> assemble_system(
    const KernelSpec& spec, const CenterSet& centers,
    std::span<const double> values) {
  const int n = centers.dim();
  const auto& pts = centers.points();
  const int N = static_cast<int>(pts.size());
  if (static_cast<int>(values.size()) != N)
    throw std::domain_error("assemble_system: values length mismatch");
  PolynomialBasis basis = poly_basis(n, spec.m);
  const int Q = basis.q();
  Matrix<double> a(N + Q, N + Q, 0.0);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i <= j; ++i) {
      double sq = 0.0;
      for (int d = 0; d < n; ++d) {
        double t = pts[j][d] - pts[i][d];
        sq += t * t;
      }
      double v = kernel_eval_sq(spec, sq);
      a(j, i) = v;
      a(i, j) = v;
    }
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < Q; ++i) {
      double v = eval_monomial(basis.exponents[i], pts[j]);
      a(j, N + i) = v;
      a(N + i, j) = v;
    }
  std::vector<double> rhs(N + Q, 0.0);
  std::copy(values.begin(), values.end(), rhs.begin());
  return {std::move(a), std::move(rhs)};
}

namespace detail {

inline Matrix<BigFloat> assemble_extended(const KernelSpec& spec,
                                          const CenterSet& centers,
                                          const PolynomialBasis& basis,
                                          int bits) {
  const int n = centers.dim();
  const auto& pts = centers.points();
  const int N = static_cast<int>(pts.size());
  const int Q = basis.q();
  ExtendedKernel ker(spec, bits);
  Matrix<BigFloat> a(N + Q, N + Q, BigFloat(0.0, bits));
  for (int j = 0; j < N; ++j)
    for (int i = 0; i <= j; ++i) {
      BigFloat sq(0.0, bits);
      for (int d = 0; d < n; ++d) {
        BigFloat t = BigFloat(pts[j][d], bits) - BigFloat(pts[i][d], bits);
        sq += t * t;
      }
      BigFloat v = ker.at_sq(sq);
      a(j, i) = v;
      a(i, j) = std::move(v);
    }
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < Q; ++i) {
      // exponents are small; exact products of doubles stay exact in BigFloat
      BigFloat v(1.0, bits);
      for (int d = 0; d < n; ++d)
        for (int k = 0; k < basis.exponents[i][d]; ++k)
          v *= BigFloat(pts[j][d], bits);
      a(j, N + i) = v;
      a(N + i, j) = std::move(v);
    }
  return a;
}

// Rank of the N x Q polynomial block via column-pivoted Gram-Schmidt.
inline int poly_block_rank(const CenterSet& centers,
                           const PolynomialBasis& basis) {
  const auto& pts = centers.points();
  const int N = static_cast<int>(pts.size());
  const int Q = basis.q();
  std::vector<std::vector<double>> cols(Q, std::vector<double>(N));
  for (int i = 0; i < Q; ++i)
    for (int j = 0; j < N; ++j)
      cols[i][j] = eval_monomial(basis.exponents[i], pts[j]);
  double max_norm = 0.0;
  for (const auto& c : cols) max_norm = std::max(max_norm, vec_norm(c));
  if (max_norm == 0.0) return 0;
  int rank = 0;
  for (int step = 0; step < Q; ++step) {
    int best = -1;
    double best_norm = 0.0;
    for (int i = rank; i < Q; ++i) {
      double nn = vec_norm(cols[i]);
      if (nn > best_norm) {
        best_norm = nn;
        best = i;
      }
    }
    if (best < 0 || best_norm < 1e-10 * max_norm) break;
    std::swap(cols[rank], cols[best]);
    for (double& x : cols[rank]) x /= best_norm;
    for (int i = rank + 1; i < Q; ++i) {
      double dot = 0.0;
      for (int j = 0; j < N; ++j) dot += cols[i][j] * cols[rank][j];
      for (int j = 0; j < N; ++j) cols[i][j] -= dot * cols[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Solve the augmented interpolation system.  Throws numerical_error on
/// rank-deficient polynomial blocks (non-unisolvent centers) and on
/// numerically singular systems, with the condition estimate attached.
inline InterpolationModel solve_interpolant(const KernelSpec& spec,
                                            const CenterSet& centers,
                                            std::span<const double> values,
                                            const PrecisionPolicy& policy) {
  const int N = static_cast<int>(centers.size());
  if (static_cast<int>(values.size()) != N)
    throw std::domain_error("solve_interpolant: values length mismatch");
  PolynomialBasis basis = poly_basis(centers.dim(), spec.m);
  const int Q = basis.q();
  if (Q > 0) {
    int rank = detail::poly_block_rank(centers, basis);
    if (rank < Q) {
      std::ostringstream os;
      os << "non-unisolvent centers: polynomial block rank " << rank << " < "
         << Q;
      throw numerical_error(os.str());
    }
  }

  auto [a_dbl, rhs] = assemble_system(spec, centers, values);
  double cond = condition_estimate(a_dbl);

  std::vector<double> sol(N + Q);
  std::shared_ptr<detail::ExtendedCoeffs> ext;
  if (policy.is_extended()) {
    const int bits = policy.bits;
    Matrix<BigFloat> a = detail::assemble_extended(spec, centers, basis, bits);
    LuFactors<BigFloat> lu = lu_factor(std::move(a));
    if (lu.singular) {
      std::ostringstream os;
      os << "ill-conditioned: condition ~ " << cond << " (singular in extended solve)";
      throw numerical_error(os.str());
    }
    std::vector<BigFloat> b(N + Q, BigFloat(0.0, bits));
    for (int i = 0; i < N; ++i) b[i] = BigFloat(values[i], bits);
    std::vector<BigFloat> x = lu_solve(lu, std::move(b));
    ext = std::make_shared<detail::ExtendedCoeffs>();
    ext->bits = bits;
    ext->kernel_coeffs.assign(x.begin(), x.begin() + N);
    ext->poly_coeffs.assign(x.begin() + N, x.end());
    for (int i = 0; i < N + Q; ++i) sol[i] = x[i].to_double();
  } else {
    LuFactors<double> lu = lu_factor(a_dbl);
    if (lu.singular) {
      std::ostringstream os;
      os << "ill-conditioned: condition ~ " << cond;
      throw numerical_error(os.str());
    }
    sol = lu_solve(lu, rhs);
    // two rounds of iterative refinement tighten the center residuals
    for (int round = 0; round < 2; ++round) {
      std::vector<double> r(N + Q, 0.0);
      for (int i = 0; i < N + Q; ++i) {
        long double acc = 0.0L;
        for (int j = 0; j < N + Q; ++j)
          acc += static_cast<long double>(a_dbl(i, j)) * sol[j];
        r[i] = static_cast<double>(static_cast<long double>(rhs[i]) - acc);
      }
      std::vector<double> d = lu_solve(lu, std::move(r));
      for (int i = 0; i < N + Q; ++i) sol[i] += d[i];
    }
  }

  InterpolationModel model{spec,
                           centers,
                           std::move(basis),
                           std::vector<double>(values.begin(), values.end()),
                           std::vector<double>(sol.begin(), sol.begin() + N),
                           std::vector<double>(sol.begin() + N, sol.end()),
                           {},
                           policy,
                           std::move(ext)};

  model.diagnostics.condition_estimate = cond;
  const auto& pts = centers.points();
  if (model.ext) {
    const int bits = model.ext->bits;
    ExtendedKernel ker(spec, bits);
    BigFloat max_res(0.0, bits);
    for (int i = 0; i < N; ++i) {
      BigFloat s(0.0, bits);
      for (int j = 0; j < N; ++j) {
        BigFloat sq(0.0, bits);
        for (int d = 0; d < centers.dim(); ++d) {
          BigFloat t = BigFloat(pts[i][d], bits) - BigFloat(pts[j][d], bits);
          sq += t * t;
        }
        s += model.ext->kernel_coeffs[j] * ker.at_sq(sq);
      }
      for (int j = 0; j < Q; ++j)
        s += model.ext->poly_coeffs[j] *
             BigFloat(eval_monomial(model.basis.exponents[j], pts[i]), bits);
      BigFloat r = abs(s - BigFloat(values[i], bits));
      if (r > max_res) max_res = r;
    }
    model.diagnostics.residual_norm = max_res.to_double();
    BigFloat max_mom(0.0, bits), max_scale(0.0, bits);
    for (int j = 0; j < Q; ++j) {
      BigFloat mom(0.0, bits), scl(0.0, bits);
      for (int i = 0; i < N; ++i) {
        BigFloat t = model.ext->kernel_coeffs[i] *
                     BigFloat(eval_monomial(model.basis.exponents[j], pts[i]), bits);
        mom += t;
        scl += abs(t);
      }
      if (abs(mom) > max_mom) max_mom = abs(mom);
      if (scl > max_scale) max_scale = scl;
    }
    model.diagnostics.moment_residual = max_mom.to_double();
    model.diagnostics.moment_scale = std::max(1.0, max_scale.to_double());
  } else {
    double max_res = 0.0;
    for (int i = 0; i < N; ++i) {
      long double s = 0.0L;
      for (int j = 0; j < N + Q; ++j)
        s += static_cast<long double>(a_dbl(i, j)) * sol[j];
      max_res = std::max(max_res, std::abs(static_cast<double>(s) - values[i]));
    }
    model.diagnostics.residual_norm = max_res;
    double max_mom = 0.0, max_scale = 0.0;
    for (int j = 0; j < Q; ++j) {
      long double mom = 0.0L;
      double scl = 0.0;
      for (int i = 0; i < N; ++i) {
        double t = model.kernel_coeffs[i] *
                   eval_monomial(model.basis.exponents[j], pts[i]);
        mom += t;
        scl += std::abs(t);
      }
      max_mom = std::max(max_mom, std::abs(static_cast<double>(mom)));
      max_scale = std::max(max_scale, scl);
    }
    model.diagnostics.moment_residual = max_mom;
    model.diagnostics.moment_scale = std::max(1.0, max_scale);
  }
  return model;
}

/// s(x), at the model's solve precision (extended models evaluate through
/// their full-precision coefficients; the massive cancellation among the
/// kernel terms of a flat-regime solve would otherwise destroy the value).
inline double evaluate(const InterpolationModel& model,
                       std::span<const double> x) {
  const auto& pts = model.centers.points();
  const int N = static_cast<int>(pts.size());
  const int Q = model.basis.q();
  const int n = model.centers.dim();
  if (model.ext) {
    const int bits = model.ext->bits;
    ExtendedKernel ker(model.spec, bits);
    BigFloat s(0.0, bits);
    for (int i = 0; i < N; ++i) {
      BigFloat sq(0.0, bits);
      for (int d = 0; d < n; ++d) {
        BigFloat t = BigFloat(x[d], bits) - BigFloat(pts[i][d], bits);
        sq += t * t;
      }
      s += model.ext->kernel_coeffs[i] * ker.at_sq(sq);
    }
    for (int j = 0; j < Q; ++j)
      s += model.ext->poly_coeffs[j] *
           BigFloat(eval_monomial(model.basis.exponents[j], x), bits);
    return s.to_double();
  }
  double s = 0.0;
  for (int i = 0; i < N; ++i) {
    double sq = 0.0;
    for (int d = 0; d < n; ++d) {
      double t = x[d] - pts[i][d];
      sq += t * t;
    }
    s += model.kernel_coeffs[i] * kernel_eval_sq(model.spec, sq);
  }
  for (int j = 0; j < Q; ++j)
    s += model.poly_coeffs[j] * eval_monomial(model.basis.exponents[j], x);
  return s;
}

struct FillDistanceResult {
  double estimate = 0.0;  // max over the scan grid of distance to X
  double slack = 0.0;     // half grid-cell diagonal; true delta <= estimate + slack

  double upper() const { return estimate + slack; }
};

/// Fill distance d(E, X) by dense grid scan with `resolution` points per
/// axis.  The true sup lies in [estimate, estimate + slack].
inline FillDistanceResult fill_distance(
    const std::vector<std::vector<double>>& points, const Cube& cube,
    int resolution) {
  if (points.empty()) throw std::domain_error("fill_distance: empty center set");
  if (resolution < 2)
    throw std::domain_error("fill_distance: resolution must be >= 2");
  const int n = cube.dim();
  const double step = cube.side / (resolution - 1);
  std::vector<int> idx(n, 0);
  std::vector<double> y(n);
  double worst = 0.0;
  while (true) {
    for (int d = 0; d < n; ++d) y[d] = cube.corner[d] + step * idx[d];
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : points) {
      double sq = 0.0;
      for (int d = 0; d < n; ++d) {
        double t = y[d] - p[d];
        sq += t * t;
      }
      best = std::min(best, sq);
    }
    worst = std::max(worst, best);
    int d = 0;
    while (d < n && ++idx[d] == resolution) idx[d++] = 0;
    if (d == n) break;
  }
  FillDistanceResult r;
  r.estimate = std::sqrt(worst);
  r.slack = 0.5 * std::sqrt(static_cast<double>(n)) * step;
  return r;
}

inline FillDistanceResult fill_distance(const CenterSet& centers,
                                        int resolution) {
  return fill_distance(centers.points(), centers.cube(), resolution);
}

}  // namespace mqshape
