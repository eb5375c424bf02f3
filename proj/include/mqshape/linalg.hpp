#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "mqshape/errors.hpp"

namespace mqshape {

template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const S& init)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, init) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  S& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const S& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<S> a_;
};

template <class S>
struct LuFactors {
  Matrix<S> lu;
  std::vector<int> piv;
  bool singular = false;
};

/// LU with partial pivoting, in place on a copy.  Exact zero pivot marks the
/// factorization singular; near-singularity is the caller's business (via
/// condition_estimate).
template <class S>
LuFactors<S> lu_factor(Matrix<S> a) {
  const int n = a.rows();
  LuFactors<S> f{std::move(a), std::vector<int>(n), false};
  Matrix<S>& m = f.lu;
  using std::abs;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (abs(m(i, k)) > abs(m(p, k))) p = i;
    f.piv[k] = p;
    if (p != k)
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
    S zero = m(k, k);
    zero -= m(k, k);
    if (m(k, k) == zero) {  // exact zero pivot
      f.singular = true;
      return f;
    }
    for (int i = k + 1; i < n; ++i) {
      m(i, k) /= m(k, k);
      const S& l = m(i, k);
      for (int j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
    }
  }
  return f;
}

template <class S>
std::vector<S> lu_solve(const LuFactors<S>& f, std::vector<S> b) {
  const int n = f.lu.rows();
  if (f.singular) throw numerical_error("lu_solve: singular factorization");
  for (int k = 0; k < n; ++k)
    if (f.piv[k] != k) std::swap(b[k], b[f.piv[k]]);
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) b[i] -= f.lu(i, j) * b[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) b[i] -= f.lu(i, j) * b[j];
    b[i] /= f.lu(i, i);
  }
  return b;
}

namespace detail {

inline double vec_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace detail

/// 2-norm condition estimate for a symmetric square matrix: power iteration
/// for the largest |eigenvalue| and LU-based inverse iteration for the
/// smallest.  Good to a factor of ~2; exactly singular matrices report +inf.
inline double condition_estimate(const Matrix<double>& m, int iterations = 200) {
  const int n = m.rows();
  if (n != m.cols()) throw std::domain_error("condition_estimate: square only");
  if (n == 0) return 1.0;
  if (n == 1)
    return m(0, 0) == 0.0 ? std::numeric_limits<double>::infinity() : 1.0;

  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 + 0.25 * std::sin(i + 1.0);
  double nv = detail::vec_norm(v);
  for (double& x : v) x /= nv;

  double sigma_max = 0.0;
  std::vector<double> w(n);
  for (int it = 0; it < iterations; ++it) {
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += m(i, j) * v[j];
      w[i] = s;
    }
    sigma_max = detail::vec_norm(w);
    if (sigma_max == 0.0) return std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) v[i] = w[i] / sigma_max;
  }

  LuFactors<double> f = lu_factor(m);
  if (f.singular) return std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) v[i] = 1.0 + 0.25 * std::sin(2.0 * i + 1.0);
  nv = detail::vec_norm(v);
  for (double& x : v) x /= nv;
  double inv_norm = 0.0;
  for (int it = 0; it < iterations; ++it) {
    w = lu_solve(f, v);
    inv_norm = detail::vec_norm(w);
    if (!std::isfinite(inv_norm) || inv_norm == 0.0)
      return std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) v[i] = w[i] / inv_norm;
  }
  return sigma_max * inv_norm;
}

}  // namespace mqshape
