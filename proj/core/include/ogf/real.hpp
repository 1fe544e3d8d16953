#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>

#include "ogf/errors.hpp"
#include "ogf/prec.hpp"

namespace ogf {

// Value-semantic wrapper around mpfr_t. Every Real carries its own mantissa
// precision; binary operations round to the wider of the two operands.
// Rounding is to-nearest throughout unless a directed-rounding helper is
// used explicitly (the tail-bound code wants one-sided rounding).
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }

  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }

  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }

  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }

  ~Real() { mpfr_clear(v_); }

  static Real of_si(long x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
  }

  static Real of_ui(unsigned long x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_ui(r.v_, x, MPFR_RNDN);
    return r;
  }

  static Real of_double(double x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }

  static Real from_string(const std::string& s, mpfr_prec_t prec) {
    Real r(prec);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw DomainError("cannot parse real number '" + s + "'");
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  // Returns a copy rounded to `prec` bits.
  Real rounded(mpfr_prec_t prec) const {
    Real r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  double to_double_down() const { return mpfr_get_d(v_, MPFR_RNDD); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(long x) { mpfr_mul_si(v_, v_, x, MPFR_RNDN); return *this; }
  Real& operator/=(long x) { mpfr_div_si(v_, v_, x, MPFR_RNDN); return *this; }

  friend mpfr_prec_t wider(const Real& a, const Real& b) {
    return std::max(a.prec(), b.prec());
  }

 private:
  mpfr_t v_;
};

inline Real operator+(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
inline Real operator-(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
inline Real operator*(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
inline Real operator/(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
inline Real operator-(const Real& a) {
  Real r(a.prec());
  mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real operator*(const Real& a, long b) {
  Real r(a.prec());
  mpfr_mul_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
inline Real operator*(long a, const Real& b) { return b * a; }
inline Real operator/(const Real& a, long b) {
  Real r(a.prec());
  mpfr_div_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
inline Real operator/(long a, const Real& b) {
  Real r(b.prec());
  mpfr_si_div(r.raw(), a, b.raw(), MPFR_RNDN);
  return r;
}
inline Real operator+(const Real& a, long b) {
  Real r(a.prec());
  mpfr_add_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
inline Real operator-(const Real& a, long b) {
  Real r(a.prec());
  mpfr_sub_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
inline Real operator-(long a, const Real& b) {
  Real r(b.prec());
  mpfr_si_sub(r.raw(), a, b.raw(), MPFR_RNDN);
  return r;
}
inline Real operator+(long a, const Real& b) { return b + a; }
inline Real operator+(const Real& a, int b) { return a + static_cast<long>(b); }
inline Real operator+(int a, const Real& b) { return b + static_cast<long>(a); }
inline Real operator-(const Real& a, int b) { return a - static_cast<long>(b); }
inline Real operator-(int a, const Real& b) { return static_cast<long>(a) - b; }
inline Real operator*(const Real& a, int b) { return a * static_cast<long>(b); }
inline Real operator*(int a, const Real& b) { return b * static_cast<long>(a); }
inline Real operator/(const Real& a, int b) { return a / static_cast<long>(b); }
inline Real operator/(int a, const Real& b) { return static_cast<long>(a) / b; }
inline Real operator*(const Real& a, unsigned b) { return a * static_cast<long>(b); }
inline Real operator/(const Real& a, unsigned b) { return a / static_cast<long>(b); }
inline Real operator+(const Real& a, unsigned b) { return a + static_cast<long>(b); }
inline Real operator-(const Real& a, unsigned b) { return a - static_cast<long>(b); }
inline Real operator+(const Real& a, unsigned long b) { return a + static_cast<long>(b); }
inline Real operator-(const Real& a, unsigned long b) { return a - static_cast<long>(b); }
inline Real operator*(const Real& a, unsigned long b) { return a * static_cast<long>(b); }

inline int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()); }
inline bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
inline bool operator>(const Real& a, const Real& b) { return cmp(a, b) > 0; }
inline bool operator<=(const Real& a, const Real& b) { return cmp(a, b) <= 0; }
inline bool operator>=(const Real& a, const Real& b) { return cmp(a, b) >= 0; }
inline bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }
inline bool operator!=(const Real& a, const Real& b) { return !(a == b); }

#define OGF_REAL_UNARY(name, mpfr_fn)                 \
  inline Real name(const Real& a) {                   \
    Real r(a.prec());                                 \
    mpfr_fn(r.raw(), a.raw(), MPFR_RNDN);             \
    return r;                                         \
  }

OGF_REAL_UNARY(abs, mpfr_abs)
OGF_REAL_UNARY(sqrt, mpfr_sqrt)
OGF_REAL_UNARY(exp, mpfr_exp)
OGF_REAL_UNARY(expm1, mpfr_expm1)
OGF_REAL_UNARY(log, mpfr_log)
OGF_REAL_UNARY(log1p, mpfr_log1p)
OGF_REAL_UNARY(sin, mpfr_sin)
OGF_REAL_UNARY(cos, mpfr_cos)

#undef OGF_REAL_UNARY

inline Real floor(const Real& a) {
  Real r(a.prec());
  mpfr_floor(r.raw(), a.raw());
  return r;
}
inline Real ceil(const Real& a) {
  Real r(a.prec());
  mpfr_ceil(r.raw(), a.raw());
  return r;
}

inline Real pow(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
inline Real pow_si(const Real& a, long n) {
  Real r(a.prec());
  mpfr_pow_si(r.raw(), a.raw(), n, MPFR_RNDN);
  return r;
}
inline Real atan2(const Real& y, const Real& x) {
  Real r(wider(y, x));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}
inline Real hypot(const Real& x, const Real& y) {
  Real r(wider(x, y));
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
inline void sin_cos(Real& s, Real& c, const Real& a) {
  mpfr_sin_cos(s.raw(), c.raw(), a.raw(), MPFR_RNDN);
}
inline Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
inline Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

// log2 of the magnitude, for quick "how many bits agree" diagnostics.
inline long exponent_of(const Real& a) { return a.is_zero() ? LONG_MIN : mpfr_get_exp(a.raw()); }

}  // namespace ogf
