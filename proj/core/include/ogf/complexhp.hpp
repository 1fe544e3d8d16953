#pragma once

#include "ogf/real.hpp"

namespace ogf {

// Rectangular complex number on top of Real. Operations keep the wider
// operand precision, like Real itself.
struct ComplexHP {
  Real re;
  Real im;

  explicit ComplexHP(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  ComplexHP(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  static ComplexHP of_real(const Real& r) { return ComplexHP(r, Real(r.prec())); }
  static ComplexHP of_si(long x, mpfr_prec_t prec) {
    return ComplexHP(Real::of_si(x, prec), Real(prec));
  }

  mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
  bool is_finite() const { return re.is_finite() && im.is_finite(); }
  bool is_real() const { return im.is_zero(); }

  ComplexHP rounded(mpfr_prec_t p) const { return ComplexHP(re.rounded(p), im.rounded(p)); }
};

inline ComplexHP operator+(const ComplexHP& a, const ComplexHP& b) {
  return ComplexHP(a.re + b.re, a.im + b.im);
}
inline ComplexHP operator-(const ComplexHP& a, const ComplexHP& b) {
  return ComplexHP(a.re - b.re, a.im - b.im);
}
inline ComplexHP operator-(const ComplexHP& a) { return ComplexHP(-a.re, -a.im); }

inline ComplexHP operator*(const ComplexHP& a, const ComplexHP& b) {
  return ComplexHP(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}
inline ComplexHP operator*(const ComplexHP& a, const Real& b) {
  return ComplexHP(a.re * b, a.im * b);
}
inline ComplexHP operator*(const Real& a, const ComplexHP& b) { return b * a; }

inline ComplexHP operator/(const ComplexHP& a, const ComplexHP& b) {
  Real d = b.re * b.re + b.im * b.im;
  return ComplexHP((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
}
inline ComplexHP operator/(const ComplexHP& a, const Real& b) {
  return ComplexHP(a.re / b, a.im / b);
}

inline ComplexHP conj(const ComplexHP& a) { return ComplexHP(a.re, -a.im); }
inline Real cabs(const ComplexHP& a) { return hypot(a.re, a.im); }
inline Real carg(const ComplexHP& a) { return atan2(a.im, a.re); }

inline ComplexHP cexp(const ComplexHP& a) {
  mpfr_prec_t p = a.prec();
  Real m = exp(a.re);
  Real s(p), c(p);
  sin_cos(s, c, a.im);
  return ComplexHP(m * c, m * s);
}

// Principal branch.
inline ComplexHP clog(const ComplexHP& a) { return ComplexHP(log(cabs(a)), carg(a)); }

// t^(-s) = exp(-s log t), principal log.
inline ComplexHP cpow_neg(const ComplexHP& t, const ComplexHP& s) {
  return cexp(-(s * clog(t)));
}

inline ComplexHP cinv(const ComplexHP& a) {
  Real d = a.re * a.re + a.im * a.im;
  return ComplexHP(a.re / d, -(a.im / d));
}

// sin(x+iy) = sin x cosh y + i cos x sinh y
inline ComplexHP csin(const ComplexHP& a) {
  mpfr_prec_t p = a.prec();
  Real s(p), c(p), sh(p), ch(p);
  sin_cos(s, c, a.re);
  mpfr_sinh_cosh(sh.raw(), ch.raw(), a.im.raw(), MPFR_RNDN);
  return ComplexHP(s * ch, c * sh);
}

}  // namespace ogf
