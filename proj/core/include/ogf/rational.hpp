#pragma once

#include <gmpxx.h>

#include <string>

#include "ogf/real.hpp"

namespace ogf {

// Exact rationals. mpq_class already maintains the canonical reduced form
// with a positive denominator, which is exactly the representation we need.
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Real to_real(const Rational& q, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_q(r.raw(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

inline Rational rational_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw DomainError("cannot parse rational '" + s + "'");
  q.canonicalize();
  return q;
}

// Parses a decimal literal ("0.0203", "2/3", "16") into an exact rational.
Rational rational_from_decimal(const std::string& s);

// Exact Bernoulli number B_n with the B_1 = -1/2 convention.
// The public cap guards accidental huge requests; internal consumers
// (Euler-Maclaurin, Stirling) use the uncapped variant.
Rational bernoulli(unsigned n, unsigned cap = 256);
const Rational& bernoulli_uncapped(unsigned n);

}  // namespace ogf
