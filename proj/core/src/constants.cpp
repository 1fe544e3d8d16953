#include "ogf/special.hpp"

namespace ogf {

Real const_pi(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

Real const_log_2pi(mpfr_prec_t prec) {
  Real two_pi = const_pi(prec + 8) * 2;
  return log(two_pi).rounded(prec);
}

// Brent-McMillan: with I(n) = sum (n^k/k!)^2 and S(n) = sum (n^k/k!)^2 H_k,
// gamma = S/I - ln n + O(e^{-4n}). n is sized so the error sits below the
// working precision.
Real euler_gamma(PrecisionContext pc) {
  mpfr_prec_t wp = pc.work() + 24;
  unsigned long n = static_cast<unsigned long>(0.1733 * static_cast<double>(wp)) + 6;

  Real term = Real::of_ui(1, wp);   // (n^k/k!)^2
  Real harmonic(wp);                // H_k
  Real num(wp);                     // S
  Real den = Real::of_ui(1, wp);    // I
  Real n2 = Real::of_ui(n, wp) * Real::of_ui(n, wp);

  Real t(wp);
  for (unsigned long k = 1; k < 64 * n; ++k) {
    // term *= (n/k)^2
    mpfr_div_ui(t.raw(), n2.raw(), k, MPFR_RNDN);
    mpfr_div_ui(t.raw(), t.raw(), k, MPFR_RNDN);
    term *= t;
    mpfr_set_ui(t.raw(), 1, MPFR_RNDN);
    mpfr_div_ui(t.raw(), t.raw(), k, MPFR_RNDN);
    harmonic += t;
    num += term * harmonic;
    den += term;
    if (k > n && exponent_of(term) < exponent_of(den) - static_cast<long>(wp) - 12) break;
  }

  Real ln_n(wp);
  mpfr_log_ui(ln_n.raw(), n, MPFR_RNDN);
  return (num / den - ln_n).rounded(pc.bits);
}

}  // namespace ogf
