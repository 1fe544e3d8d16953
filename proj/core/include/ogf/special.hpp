#pragma once

#include "ogf/complexhp.hpp"
#include "ogf/prec.hpp"
#include "ogf/rational.hpp"

namespace ogf {

// pi and friends at the requested precision (MPFR caches these internally).
Real const_pi(mpfr_prec_t prec);
Real const_log_2pi(mpfr_prec_t prec);

// Euler's constant by the Brent-McMillan Bessel-series scheme. Tests
// cross-check it against an unrelated implementation.
Real euler_gamma(PrecisionContext pc);

// Gamma function via the Stirling series with upward recursion for small
// arguments and the reflection formula for Re(s) < 1/2.
ComplexHP gamma(const ComplexHP& s, PrecisionContext pc);

// The vertical-line magnitude envelope sqrt(2 pi) e^{-pi|tau|/2} |tau|^{sigma-1/2}.
// Only meaningful for |tau| >= 1.
Real gamma_vertical_envelope(const Real& sigma, const Real& tau, PrecisionContext pc);

// Riemann zeta by Euler-Maclaurin with cutoff doubling until two successive
// refinements agree. Valid for Re(s) > -1, |Im(s)| <= 1e4.
ComplexHP zeta(const ComplexHP& s, PrecisionContext pc);

// Derivative of zeta by the term-wise differentiated Euler-Maclaurin sum
// (log factors), not finite differences.
ComplexHP zeta_prime(const ComplexHP& s, PrecisionContext pc);

namespace detail {

// Single Euler-Maclaurin pass with explicit cutoffs, exposed so tests can
// check the (m, q) vs (2m, 2q) agreement property directly.
ComplexHP zeta_em(const ComplexHP& s, unsigned long m, unsigned q, mpfr_prec_t wp);
ComplexHP zeta_prime_em(const ComplexHP& s, unsigned long m, unsigned q, mpfr_prec_t wp);

// Shared table of ln(n) values at a given working precision.
const Real& cached_ln(unsigned long n, mpfr_prec_t wp);

}  // namespace detail

}  // namespace ogf
