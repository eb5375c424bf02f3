#pragma once

#include <stdexcept>
#include <string>

namespace mqshape {

/// Parameter combinations the theory does not cover (e.g. n+beta in the gap
/// between Theorem coverage and the n=1, beta=-1 special case).
class coverage_error : public std::domain_error {
 public:
  explicit coverage_error(const std::string& what) : std::domain_error(what) {}
};

/// Numerical breakdown: singular/ill-conditioned systems, quadrature that
/// failed to converge, rank-deficient polynomial blocks.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mqshape
