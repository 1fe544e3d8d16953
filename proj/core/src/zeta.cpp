#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "ogf/special.hpp"

namespace ogf {

namespace {

std::mutex g_ln_mutex;
std::map<mpfr_prec_t, std::shared_ptr<const std::vector<Real>>> g_ln_tables;

std::shared_ptr<const std::vector<Real>> ln_table(unsigned long upto, mpfr_prec_t wp) {
  std::lock_guard<std::mutex> lock(g_ln_mutex);
  auto& slot = g_ln_tables[wp];
  if (slot && slot->size() > upto) return slot;
  unsigned long n_new = std::max<unsigned long>(upto + 1, slot ? slot->size() * 2 : 64);
  auto fresh = std::make_shared<std::vector<Real>>();
  fresh->reserve(n_new);
  fresh->push_back(Real(wp));  // index 0 unused
  for (unsigned long n = 1; n < n_new; ++n) {
    if (slot && n < slot->size()) {
      fresh->push_back((*slot)[n]);
    } else {
      Real l(wp);
      mpfr_log_ui(l.raw(), n, MPFR_RNDN);
      fresh->push_back(std::move(l));
    }
  }
  slot = fresh;
  return slot;
}

std::mutex g_bf_mutex;
// B_{2k} / (2k)! at a given working precision, used by Euler-Maclaurin.
std::map<mpfr_prec_t, std::shared_ptr<const std::vector<Real>>> g_bf_tables;

std::shared_ptr<const std::vector<Real>> bern_over_fact(unsigned upto_k, mpfr_prec_t wp) {
  std::lock_guard<std::mutex> lock(g_bf_mutex);
  auto& slot = g_bf_tables[wp];
  if (slot && slot->size() > upto_k) return slot;
  auto fresh = std::make_shared<std::vector<Real>>();
  fresh->reserve(upto_k + 1);
  fresh->push_back(Real(wp));  // index 0 unused
  mpz_class fact(1);
  for (unsigned k = 1; k <= upto_k; ++k) {
    // fact = (2k)!
    fact *= 2 * k - 1;
    fact *= 2 * k;
    Rational c = bernoulli_uncapped(2 * k) / Rational(fact);
    fresh->push_back(to_real(c, wp));
  }
  slot = fresh;
  return slot;
}

// n^{-s} for s = sigma + i tau with ln n given; real tau == 0 takes the
// cheap path. Result written into out.
inline void pow_n_minus_s(ComplexHP& out, const Real& ln_n, const Real& sigma, const Real& tau,
                          bool tau_zero, mpfr_prec_t wp) {
  Real mag(wp);
  mpfr_mul(mag.raw(), sigma.raw(), ln_n.raw(), MPFR_RNDN);
  mpfr_neg(mag.raw(), mag.raw(), MPFR_RNDN);
  mpfr_exp(mag.raw(), mag.raw(), MPFR_RNDN);
  if (tau_zero) {
    out.re = mag;
    mpfr_set_zero(out.im.raw(), 1);
    return;
  }
  Real ang(wp), si(wp), co(wp);
  mpfr_mul(ang.raw(), tau.raw(), ln_n.raw(), MPFR_RNDN);
  mpfr_sin_cos(si.raw(), co.raw(), ang.raw(), MPFR_RNDN);
  out.re = mag * co;
  out.im = -(mag * si);
}

}  // namespace

namespace detail {

const Real& cached_ln(unsigned long n, mpfr_prec_t wp) {
  static std::mutex m;
  static std::map<mpfr_prec_t, std::shared_ptr<const std::vector<Real>>> pinned;
  auto table = ln_table(n, wp);
  std::lock_guard<std::mutex> lock(m);
  pinned[wp] = table;
  return (*table)[n];
}

ComplexHP zeta_em(const ComplexHP& s, unsigned long m, unsigned q, mpfr_prec_t wp) {
  Real sigma = s.re.rounded(wp);
  Real tau = s.im.rounded(wp);
  bool tau_zero = tau.is_zero();
  auto lns = ln_table(m, wp);
  ComplexHP sum(wp), nterm(wp);

  for (unsigned long n = 1; n < m; ++n) {
    pow_n_minus_s(nterm, (*lns)[n], sigma, tau, tau_zero, wp);
    sum = sum + nterm;
  }

  ComplexHP sw(sigma, tau);
  ComplexHP one = ComplexHP::of_si(1, wp);
  const Real& ln_m = (*lns)[m];
  // m^{1-s} / (s-1)
  ComplexHP m_pow_1ms = cexp((one - sw) * ComplexHP::of_real(ln_m));
  sum = sum + m_pow_1ms / (sw - one);
  // m^{-s} / 2
  ComplexHP m_pow_ms(wp);
  pow_n_minus_s(m_pow_ms, ln_m, sigma, tau, tau_zero, wp);
  sum = sum + m_pow_ms * Real::from_string("0.5", wp);

  auto bf = bern_over_fact(q, wp);
  ComplexHP rising = sw;                                   // s (s+1) ... (s+2k-2)
  Real m2 = Real::of_ui(m, wp) * Real::of_ui(m, wp);
  ComplexHP mk = m_pow_ms / Real::of_ui(m, wp);            // m^{-s-2k+1}
  for (unsigned k = 1; k <= q; ++k) {
    sum = sum + (*bf)[k] * (rising * mk);
    if (k == q) break;
    rising = rising * ComplexHP(sigma + (2 * k - 1), tau) * ComplexHP(sigma + (2 * k), tau);
    mk = mk / m2;
  }
  return sum;
}

ComplexHP zeta_prime_em(const ComplexHP& s, unsigned long m, unsigned q, mpfr_prec_t wp) {
  Real sigma = s.re.rounded(wp);
  Real tau = s.im.rounded(wp);
  bool tau_zero = tau.is_zero();
  auto lns = ln_table(m, wp);
  ComplexHP sum(wp), nterm(wp);

  for (unsigned long n = 2; n < m; ++n) {
    pow_n_minus_s(nterm, (*lns)[n], sigma, tau, tau_zero, wp);
    sum = sum - nterm * (*lns)[n];
  }

  ComplexHP sw(sigma, tau);
  ComplexHP one = ComplexHP::of_si(1, wp);
  const Real& ln_m = (*lns)[m];
  ComplexHP sm1 = sw - one;
  ComplexHP m_pow_1ms = cexp((one - sw) * ComplexHP::of_real(ln_m));
  // d/ds [ m^{1-s}/(s-1) ] = m^{1-s} ( -ln m / (s-1) - 1/(s-1)^2 )
  sum = sum + m_pow_1ms * (-(ComplexHP::of_real(ln_m) / sm1) - cinv(sm1 * sm1));

  ComplexHP m_pow_ms(wp);
  pow_n_minus_s(m_pow_ms, ln_m, sigma, tau, tau_zero, wp);
  sum = sum - m_pow_ms * (ln_m * Real::from_string("0.5", wp));

  auto bf = bern_over_fact(q, wp);
  ComplexHP rising = sw;
  ComplexHP hsum = cinv(sw);  // sum 1/(s+j), j = 0 .. 2k-2
  Real m2 = Real::of_ui(m, wp) * Real::of_ui(m, wp);
  ComplexHP mk = m_pow_ms / Real::of_ui(m, wp);
  ComplexHP lnm_c = ComplexHP::of_real(ln_m);
  for (unsigned k = 1; k <= q; ++k) {
    sum = sum + (*bf)[k] * (mk * rising * (hsum - lnm_c));
    if (k == q) break;
    ComplexHP f1(sigma + (2 * k - 1), tau);
    ComplexHP f2(sigma + (2 * k), tau);
    rising = rising * f1 * f2;
    hsum = hsum + cinv(f1) + cinv(f2);
    mk = mk / m2;
  }
  return sum;
}

}  // namespace detail

namespace {

// Doubling driver shared by zeta and zeta_prime; `loss_bits` reflects the
// documented accuracy targets (2^{-bits+8} and 2^{-bits+10}).
ComplexHP em_with_doubling(const ComplexHP& s, PrecisionContext pc, int loss_bits,
                           ComplexHP (*em)(const ComplexHP&, unsigned long, unsigned,
                                           mpfr_prec_t)) {
  if (s.im.is_zero() && s.re.is_integer() && s.re.to_long() == 1)
    throw PoleError("zeta: pole at s = 1");
  double sig = s.re.to_double();
  double tau = std::abs(s.im.to_double());
  if (sig <= -1.0) throw RangeError("zeta: validated region requires Re(s) > -1");
  if (tau > 1e4) throw RangeError("zeta: validated region requires |Im(s)| <= 1e4");

  mpfr_prec_t wp = pc.work() + 24 + static_cast<mpfr_prec_t>(std::ceil(std::log2(tau + 2)));
  ComplexHP sv = s.rounded(wp);

  unsigned long m = std::max<unsigned long>(32, static_cast<unsigned long>(std::ceil(tau / 2)));
  unsigned q = 16;
  ComplexHP v1 = em(sv, m, q, wp);
  Real floor_mag(wp);
  mpfr_set_ui_2exp(floor_mag.raw(), 1, -(pc.bits + 2 * loss_bits), MPFR_RNDN);
  for (int round = 0; round < 7; ++round) {
    m *= 2;
    q = std::min(2 * q, 128u);
    ComplexHP v2 = em(sv, m, q, wp);
    Real diff = cabs(v2 - v1);
    Real scale = cabs(v2) + floor_mag;
    Real tol(wp);
    mpfr_set_ui_2exp(tol.raw(), 1, -(pc.bits - loss_bits + 4), MPFR_RNDN);
    if (diff <= scale * tol) return v2.rounded(pc.bits);
    v1 = v2;
  }
  throw NumericalError("zeta: Euler-Maclaurin refinement did not stabilize");
}

}  // namespace

ComplexHP zeta(const ComplexHP& s, PrecisionContext pc) {
  return em_with_doubling(s, pc, 8, detail::zeta_em);
}

ComplexHP zeta_prime(const ComplexHP& s, PrecisionContext pc) {
  return em_with_doubling(s, pc, 10, detail::zeta_prime_em);
}

}  // namespace ogf
