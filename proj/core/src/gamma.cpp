#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "ogf/special.hpp"

namespace ogf {

namespace {

std::mutex g_stirling_mutex;
// Per working precision: coefficients B_{2k} / ((2k)(2k-1)) for the
// Stirling series of ln Gamma.
std::map<mpfr_prec_t, std::shared_ptr<const std::vector<Real>>> g_stirling_coeffs;

std::shared_ptr<const std::vector<Real>> stirling_coeffs(unsigned upto_k, mpfr_prec_t wp) {
  std::lock_guard<std::mutex> lock(g_stirling_mutex);
  auto& slot = g_stirling_coeffs[wp];
  if (slot && slot->size() > upto_k) return slot;
  auto fresh = std::make_shared<std::vector<Real>>();
  fresh->reserve(upto_k + 1);
  fresh->push_back(Real(wp));  // index 0 unused
  for (unsigned k = 1; k <= upto_k; ++k) {
    Rational c = bernoulli_uncapped(2 * k) / Rational(2 * k * (2 * k - 1));
    fresh->push_back(to_real(c, wp));
  }
  slot = fresh;
  return slot;
}

// ln Gamma(w) by the Stirling series; requires |w| large enough that the
// series reaches the working precision before its terms turn around.
ComplexHP stirling_lngamma(const ComplexHP& w, mpfr_prec_t wp) {
  unsigned max_k = static_cast<unsigned>(0.5 * static_cast<double>(wp)) + 8;
  auto coeffs = stirling_coeffs(max_k, wp);

  ComplexHP lnw = clog(w);
  ComplexHP half(Real::from_string("0.5", wp), Real(wp));
  ComplexHP acc = (w - half) * lnw - w;
  acc.re += const_log_2pi(wp) * Real::from_string("0.5", wp);

  ComplexHP w2 = w * w;
  ComplexHP p = cinv(w);  // w^{1-2k} for k = 1
  for (unsigned k = 1; k <= max_k; ++k) {
    ComplexHP term = (*coeffs)[k] * p;
    acc = acc + term;
    long mag = exponent_of(cabs(term));
    if (mag < -static_cast<long>(wp) - 8) break;
    p = p / w2;
  }
  return acc;
}

ComplexHP gamma_impl(const ComplexHP& s, mpfr_prec_t wp);

ComplexHP gamma_reflect(const ComplexHP& s, mpfr_prec_t wp) {
  Real pi = const_pi(wp);
  ComplexHP one_minus_s(1 - s.re, -s.im);
  ComplexHP sin_pis = csin(ComplexHP(pi * s.re, pi * s.im));
  ComplexHP g = gamma_impl(one_minus_s, wp);
  return ComplexHP::of_real(pi) / (sin_pis * g);
}

ComplexHP gamma_impl(const ComplexHP& s, mpfr_prec_t wp) {
  double re = s.re.to_double();
  double im = std::abs(s.im.to_double());
  if (re < 0.5) return gamma_reflect(s, wp);

  double s0 = 0.12 * static_cast<double>(wp) + 8.0;
  long shift = 0;
  if (std::hypot(re, im) < s0 && im < s0)
    shift = static_cast<long>(std::ceil(std::sqrt(std::max(0.0, s0 * s0 - im * im)) - re)) + 1;
  if (shift < 0) shift = 0;

  ComplexHP w(s.re + shift, s.im);
  ComplexHP g = cexp(stirling_lngamma(w, wp));
  if (shift > 0) {
    ComplexHP prod = ComplexHP::of_si(1, wp);
    for (long j = 0; j < shift; ++j) prod = prod * ComplexHP(s.re + j, s.im);
    g = g / prod;
  }
  return g;
}

}  // namespace

ComplexHP gamma(const ComplexHP& s, PrecisionContext pc) {
  if (!s.is_finite()) throw DomainError("gamma: non-finite argument");
  if (s.im.is_zero() && s.re.is_integer() && s.re.sign() <= 0)
    throw PoleError("gamma: pole at non-positive integer");
  mpfr_prec_t wp = pc.work() + 24;
  ComplexHP r = gamma_impl(s.rounded(wp), wp);
  if (!r.is_finite()) throw NumericalError("gamma: evaluation overflowed");
  return r.rounded(pc.bits);
}

Real gamma_vertical_envelope(const Real& sigma, const Real& tau, PrecisionContext pc) {
  mpfr_prec_t wp = pc.work() + 8;
  Real at = abs(tau).rounded(wp);
  if (at < Real::of_si(1, wp)) throw DomainError("gamma_vertical_envelope: |tau| must be >= 1");
  Real pi = const_pi(wp);
  Real half = Real::from_string("0.5", wp);
  Real envelope = sqrt(pi * 2) * exp(-(pi * half * at)) * pow(at, sigma.rounded(wp) - half);
  return envelope.rounded(pc.bits);
}

}  // namespace ogf
