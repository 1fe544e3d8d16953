#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ogf/arith.hpp"
#include "ogf/complexhp.hpp"
#include "ogf/special.hpp"

namespace testsupport {

using namespace ogf;

// Bits of agreement between a and b, looking at |a-b| relative to |b|.
inline long bits_agree(const Real& a, const Real& b) {
  Real diff = abs(a - b);
  if (diff.is_zero()) return 4096;
  Real scale = max(abs(b), abs(a));
  if (scale.is_zero()) return 4096;
  return exponent_of(scale) - exponent_of(diff);
}

inline long bits_agree(const ComplexHP& a, const ComplexHP& b) {
  Real diff = cabs(a - b);
  if (diff.is_zero()) return 4096;
  Real scale = max(cabs(a), cabs(b));
  if (scale.is_zero()) return 4096;
  return exponent_of(scale) - exponent_of(diff);
}

inline bool within_abs(const Real& x, double bound) {
  return abs(x) <= Real::of_double(bound, 64);
}

// Alternating zeta (eta function) by the Cohen-Villegas-Zagier acceleration;
// independent of the Euler-Maclaurin path under test.
inline ComplexHP eta_accelerated(const ComplexHP& s, int n, mpfr_prec_t wp) {
  // d_k from the Chebyshev recipe: d = n (sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)).
  std::vector<Real> d(n + 1, Real(wp));
  Real b = Real::of_si(1, wp);
  Real c(wp);
  // b_i = (n+i-1)! 4^i / ((n-i)! (2i)!) built incrementally
  Real acc(wp);
  for (int i = 0; i <= n; ++i) {
    if (i == 0) {
      b = Real::of_si(1, wp);
    } else {
      b *= 4 * (n + i - 1) * (n - i + 1);
      b /= (2 * i) * (2 * i - 1);
    }
    acc += b;
    d[i] = acc * n;
  }
  ComplexHP sum(wp);
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    // (-1)^k (d_n - d_k) (k+1)^{-s}
    Real lnk(wp);
    mpfr_log_ui(lnk.raw(), k + 1, MPFR_RNDN);
    ComplexHP pw = cexp(-(s * ComplexHP::of_real(lnk)));
    Real coeff = d[n] - d[k];
    if (sign < 0) coeff = -coeff;
    sum = sum + pw * coeff;
    sign = -sign;
  }
  return sum / d[n];
}

// Lambert series sum z^n / (1 - z^n), summed until the geometric bound on
// the remainder drops below tol.
inline ComplexHP lambert_sum(const ComplexHP& z, double tol, mpfr_prec_t wp) {
  ComplexHP sum(wp), zn = ComplexHP::of_si(1, wp);
  ComplexHP one = ComplexHP::of_si(1, wp);
  double az = cabs(z).to_double();
  for (int n = 1; n < 100000; ++n) {
    zn = zn * z;
    sum = sum + zn / (one - zn);
    double rem = std::pow(az, n + 1) / ((1.0 - az) * (1.0 - az));
    if (rem < tol) break;
  }
  return sum;
}

// First n primes by trial division (test-side oracle).
inline std::vector<std::uint64_t> primes_naive(std::size_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 2; out.size() < n; ++c)
    if (is_prime_u64(c)) out.push_back(c);
  return out;
}

// Divisors of n by full enumeration.
inline std::vector<std::uint64_t> divisors_naive(std::uint64_t n) {
  std::vector<std::uint64_t> d;
  for (std::uint64_t k = 1; k * k <= n; ++k) {
    if (n % k) continue;
    d.push_back(k);
    if (k != n / k) d.push_back(n / k);
  }
  return d;
}

inline std::mt19937_64 test_rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eedu + salt); }

}  // namespace testsupport
