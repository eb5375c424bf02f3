#pragma once

#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace mqshape {

/// Requested arithmetic precision for kernel evaluation, system assembly and
/// the linear solve.  Extended mode guarantees at least `bits` significant
/// bits end to end.
struct PrecisionPolicy {
  enum class Mode { machine, extended };

  Mode mode = Mode::machine;
  int bits = 256;

  static PrecisionPolicy machine() { return {Mode::machine, 53}; }
  static PrecisionPolicy extended(int bits = 256) {
    if (bits < 128)
      throw std::domain_error("PrecisionPolicy: extended mode needs >= 128 bits");
    return {Mode::extended, bits};
  }
  bool is_extended() const { return mode == Mode::extended; }
};

/// Arbitrary-precision float (MPFR-backed, RAII).  Precision is per value;
/// binary operations compute at the wider of the two operand precisions.
class BigFloat {
 public:
  explicit BigFloat(int bits = 256) { mpfr_init2(v_, prec(bits)); mpfr_set_zero(v_, +1); }
  BigFloat(double d, int bits) { mpfr_init2(v_, prec(bits)); mpfr_set_d(v_, d, MPFR_RNDN); }

  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  int precision_bits() const { return static_cast<int>(mpfr_get_prec(v_)); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  static BigFloat pi(int bits) {
    BigFloat r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(wider(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(wider(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(wider(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(wider(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  BigFloat operator-() const {
    BigFloat r(precision_bits());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

  /// this -= a*b without a temporary; the LU inner loop lives on this.
  void sub_mul(const BigFloat& a, const BigFloat& b) {
    mpfr_fms(v_, a.v_, b.v_, v_, MPFR_RNDN);  // a*b - this
    mpfr_neg(v_, v_, MPFR_RNDN);
  }

  friend BigFloat sqrt(const BigFloat& a) {
    BigFloat r(a.precision_bits());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat abs(const BigFloat& a) {
    BigFloat r(a.precision_bits());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat exp(const BigFloat& a) {
    BigFloat r(a.precision_bits());
    mpfr_exp(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat log(const BigFloat& a) {
    BigFloat r(a.precision_bits());
    mpfr_log(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat pow(const BigFloat& a, const BigFloat& p) {
    BigFloat r(wider(a, p));
    mpfr_pow(r.v_, a.v_, p.v_, MPFR_RNDN);
    return r;
  }
  /// Gamma function at full working precision (used by extended kernel eval).
  friend BigFloat tgamma(const BigFloat& a) {
    BigFloat r(a.precision_bits());
    mpfr_gamma(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

  std::string to_string(int digits = 30) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

 private:
  static mpfr_prec_t prec(int bits) {
    if (bits < MPFR_PREC_MIN) bits = 53;
    return static_cast<mpfr_prec_t>(bits);
  }
  static int wider(const BigFloat& a, const BigFloat& b) {
    return a.precision_bits() > b.precision_bits() ? a.precision_bits()
                                                   : b.precision_bits();
  }

  mpfr_t v_;
};

}  // namespace mqshape
