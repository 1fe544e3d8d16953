#include "ogf/asym.hpp"

#include <cmath>

#include "ogf/special.hpp"

namespace ogf {

void validate(const EnvelopeParams& p) {
  if (p.b <= 0 || p.alpha <= 0 || p.beta <= 0 || p.epsilon < 0)
    throw DomainError("envelope params: b, alpha, beta must be positive, epsilon nonnegative");
  if (p.b - p.epsilon <= 0) throw DomainError("envelope params: b - epsilon must be positive");
}

namespace {

Real checked_log(const Real& x, const char* what) {
  if (x.sign() <= 0) throw DomainError(std::string(what) + ": logarithm undefined here");
  return log(x);
}

}  // namespace

Real error_envelope_E(const Real& t_abs, const EnvelopeParams& params, PrecisionContext pc) {
  validate(params);
  mpfr_prec_t wp = pc.work() + 16;
  Real t = t_abs.rounded(wp);
  if (t.sign() <= 0) throw DomainError("error_envelope_E: t must be positive");
  Real l = checked_log(1 / t, "error_envelope_E");
  Real ll = checked_log(l, "error_envelope_E");
  Real lll = checked_log(ll, "error_envelope_E");
  if (lll.sign() <= 0)
    throw DomainError("error_envelope_E: triple logarithm nonpositive (need t < e^-e)");
  Real coeff = to_real(params.b - params.epsilon, wp);
  Real expo = -(coeff * l) / (pow(ll, to_real(params.alpha, wp)) * pow(lll, to_real(params.beta, wp)));
  return (exp(expo) / t).rounded(pc.bits);
}

Real walfisz_envelope(const Real& x, const Real& c, PrecisionContext pc) {
  mpfr_prec_t wp = pc.work() + 16;
  Real xv = x.rounded(wp);
  if (xv.sign() <= 0) throw DomainError("walfisz_envelope: x must be positive");
  if (c.sign() < 0) throw DomainError("walfisz_envelope: c must be nonnegative");
  Real l = checked_log(xv, "walfisz_envelope");
  Real ll = checked_log(l, "walfisz_envelope");
  if (ll.sign() <= 0) throw DomainError("walfisz_envelope: log log x must be positive");
  Real expo = -(c.rounded(wp) * pow(l, Real::from_string("0.6", wp))) /
              pow(ll, Real::from_string("0.2", wp));
  return (xv * exp(expo)).rounded(pc.bits);
}

Real abelian_mu_envelope(const Real& t_abs, const Real& c, PrecisionContext pc) {
  mpfr_prec_t wp = pc.work() + 16;
  Real t = t_abs.rounded(wp);
  if (t.sign() <= 0) throw DomainError("abelian_mu_envelope: t must be positive");
  if (c.sign() < 0) throw DomainError("abelian_mu_envelope: c must be nonnegative");
  Real l = checked_log(1 / t, "abelian_mu_envelope");
  Real ll = checked_log(l, "abelian_mu_envelope");
  if (ll.sign() <= 0) throw DomainError("abelian_mu_envelope: log log 1/t must be positive");
  Real expo = -(c.rounded(wp) * pow(l, Real::from_string("0.6", wp))) /
              pow(ll, Real::from_string("0.2", wp));
  return (exp(expo) / t).rounded(pc.bits);
}

Real abelian_transfer(const Real& alpha, SlowlyVarying ell, const Real& z, PrecisionContext pc) {
  mpfr_prec_t wp = pc.work() + 16;
  if (alpha.sign() <= 0) throw DomainError("abelian_transfer: alpha must be positive");
  Real zv = z.rounded(wp);
  if (zv.sign() <= 0 || zv >= Real::of_si(1, wp))
    throw DomainError("abelian_transfer: z must lie in (0, 1)");
  Real one_minus_z = 1 - zv;
  Real inv = 1 / one_minus_z;
  PrecisionContext inner{static_cast<int>(wp), 8};
  Real g = gamma(ComplexHP::of_real(alpha.rounded(wp) + 1), inner).re;
  Real r = g * pow(inv, alpha.rounded(wp) + 1);
  if (ell.log_pow) {
    Real l = checked_log(inv, "abelian_transfer");
    r *= pow_si(l, ell.log_pow);
    if (ell.loglog_pow) {
      Real ll = checked_log(l, "abelian_transfer");
      if (ll.sign() <= 0) throw DomainError("abelian_transfer: log log 1/(1-z) must be positive");
      r *= pow_si(ll, ell.loglog_pow);
    }
  } else if (ell.loglog_pow) {
    Real l = checked_log(inv, "abelian_transfer");
    Real ll = checked_log(l, "abelian_transfer");
    if (ll.sign() <= 0) throw DomainError("abelian_transfer: log log 1/(1-z) must be positive");
    r *= pow_si(ll, ell.loglog_pow);
  }
  return r.rounded(pc.bits);
}

Real choose_T(const Real& t_abs, const Real& alpha, PrecisionContext pc) {
  mpfr_prec_t wp = pc.work() + 16;
  Real t = abs(t_abs).rounded(wp);
  if (t.sign() <= 0) throw DomainError("choose_T: t must be nonzero");
  Real l = checked_log(1 / t, "choose_T");
  Real ll = checked_log(l, "choose_T");
  if (ll.sign() <= 0) throw DomainError("choose_T: log log 1/|t| must be positive");
  return (l / pow(ll, alpha.rounded(wp))).rounded(pc.bits);
}

Rational tau_expansion_coefficient(unsigned n) {
  Rational b = bernoulli_uncapped(n + 1);
  if (b == 0) return Rational(0);
  mpz_class fact(1);
  for (unsigned j = 2; j <= n + 1; ++j) fact *= j;
  Rational c = b * b / (Rational(fact) * Rational(static_cast<long>(n) + 1));
  if (n % 2 == 1) c = -c;
  return c;
}

ComplexHP tau_expansion(const ComplexHP& t, unsigned k_terms, PrecisionContext pc) {
  mpfr_prec_t wp = pc.work() + 16;
  ComplexHP tv = t.rounded(wp);
  if (tv.re.sign() <= 0) throw DomainError("tau_expansion: Re(t) must be positive");
  PrecisionContext inner{static_cast<int>(wp), 8};
  ComplexHP inv_t = cinv(tv);
  ComplexHP log_inv_t = clog(inv_t);
  ComplexHP acc = inv_t * log_inv_t + inv_t * euler_gamma(inner);
  ComplexHP tpow = ComplexHP::of_si(1, wp);
  for (unsigned n = 0; n < k_terms; ++n) {
    Rational c = tau_expansion_coefficient(n);
    if (c != 0) acc = acc + tpow * to_real(c, wp);
    tpow = tpow * tv;
  }
  return acc.rounded(pc.bits);
}

ComplexHP corollary_main_term(ArithFn fn, const ComplexHP& z, MainTermSource source,
                              PrecisionContext pc) {
  mpfr_prec_t wp = pc.work() + 16;
  ComplexHP zv = z.rounded(wp);
  ComplexHP one = ComplexHP::of_si(1, wp);
  ComplexHP one_minus_z = one - zv;
  PrecisionContext inner{static_cast<int>(wp), 8};

  switch (fn) {
    case ArithFn::Mobius:
    case ArithFn::MobiusAlternating:
    case ArithFn::Liouville:
    case ArithFn::LiouvilleAlternating:
      return ComplexHP(pc.bits);  // no main term either way
    case ArithFn::VonMangoldt: {
      if (source == MainTermSource::PaperLiteral) return cinv(one_minus_z).rounded(pc.bits);
      // residue of Gamma(s) (-zeta'/zeta) t^{-s} at s = 1 is 1/t
      ComplexHP t = -clog(zv);
      return cinv(t).rounded(pc.bits);
    }
    case ArithFn::TwoOmega: {
      if (source == MainTermSource::PaperLiteral) {
        ComplexHP inv = cinv(one_minus_z);
        ComplexHP log_inv = clog(inv);
        Real g = euler_gamma(inner);
        return (inv * log_inv + inv * (g + 1)).rounded(pc.bits);
      }
      // Laurent data of zeta(s)^2 / zeta(2s) at s = 1:
      //   residue = (1/t) [ log(1/t) + gamma - 2 zeta'(2)/zeta(2) ] / zeta(2).
      ComplexHP t = -clog(zv);
      ComplexHP inv_t = cinv(t);
      ComplexHP log_inv_t = clog(inv_t);
      ComplexHP two = ComplexHP::of_si(2, wp);
      Real z2 = zeta(two, inner).re;
      Real z2p = zeta_prime(two, inner).re;
      Real g = euler_gamma(inner);
      ComplexHP bracket = log_inv_t + ComplexHP::of_real(g - (z2p * 2) / z2);
      return (inv_t * bracket / ComplexHP::of_real(z2)).rounded(pc.bits);
    }
    default:
      throw UnsupportedError("corollary_main_term: unsupported function");
  }
}

SeriesValue corollary_residual(ArithFn fn, const ComplexHP& z, MainTermSource source,
                               PrecisionContext pc, const Real& target_abs_err,
                               const SeriesOptions& opts) {
  ComplexHP main = corollary_main_term(fn, z, source, pc);
  SeriesValue direct = eval_power_series(fn, z, pc, target_abs_err, opts);
  SeriesValue out(pc.bits);
  out.value = (direct.value - main).rounded(pc.bits);
  out.tail_bound = direct.tail_bound;
  out.terms_used = direct.terms_used;
  out.wall_notes = direct.wall_notes;
  out.wall_notes["main_term_source"] =
      source == MainTermSource::PaperLiteral ? "paper" : "residue";
  return out;
}

std::vector<FakeAsymRow> fake_asymptotics_probe(const std::vector<Real>& t_grid,
                                                PrecisionContext pc, const SeriesOptions& opts) {
  std::vector<FakeAsymRow> rows;
  rows.reserve(t_grid.size());
  mpfr_prec_t wp = pc.work() + 8;
  Real tol(wp);
  mpfr_set_ui_2exp(tol.raw(), 1, -(pc.bits / 2), MPFR_RNDN);  // far below the phenomenon scale
  SeriesOptions local = opts;
  if (!local.table) {
    double min_t = 1e9;
    for (const auto& t : t_grid) min_t = std::min(min_t, t.to_double());
    std::uint64_t n = series_truncation_length(ArithFn::Mobius, min_t, tol.to_double_down() / 2);
    if (n <= local.memory_cap) {
      SieveOptions so;
      so.memory_cap = local.memory_cap;
      local.table = std::make_shared<SieveTable>(sieve(ArithFn::Mobius, n, so));
    }
  }
  for (const auto& t : t_grid) {
    EvalPoint point(ComplexHP::of_real(t.rounded(wp)), std::asin(1.0) / 2);
    SeriesValue v = eval_exp_series(ArithFn::Mobius, point, pc, tol, local);
    FakeAsymRow row{t.rounded(pc.bits), v.value.re, (v.value.re + 2).rounded(pc.bits),
                    ((v.value.re + 2) * sqrt(t.rounded(wp))).rounded(pc.bits)};
    rows.push_back(std::move(row));
  }
  return rows;
}

RhWindowResult rh_window_probe(const Real& eta, const std::vector<Real>& z_grid,
                               PrecisionContext pc, std::uint64_t mertens_limit,
                               const SeriesOptions& opts) {
  double e = eta.to_double();
  // eta = 1 is allowed as the boundary case (the prime number theorem makes
  // both ratio columns tend to zero there).
  if (e < 0.5 || e > 1.0) throw DomainError("rh_window_probe: eta must lie in [1/2, 1]");
  mpfr_prec_t wp = pc.work() + 8;
  RhWindowResult out;
  Real tol(wp);
  mpfr_set_ui_2exp(tol.raw(), 1, -(pc.bits / 2), MPFR_RNDN);
  for (const auto& z : z_grid) {
    Real zv = z.rounded(wp);
    if (zv.sign() <= 0 || zv >= Real::of_si(1, wp))
      throw DomainError("rh_window_probe: z must lie in (0,1)");
    SeriesValue v = eval_power_series(ArithFn::Mobius, ComplexHP::of_real(zv), pc, tol, opts);
    Real ratio = cabs(v.value) * pow(1 - zv, eta.rounded(wp));
    out.series_side.push_back(RhWindowRow{z.rounded(pc.bits), ratio.rounded(pc.bits)});
  }

  SieveOptions so;
  so.prefix_sums = true;
  so.memory_cap = opts.memory_cap;
  SieveTable mob = sieve(ArithFn::Mobius, mertens_limit, so);
  std::uint64_t prev = 0;
  const int points = 25;
  for (int j = 0; j < points; ++j) {
    double lx = 1.0 + (std::log10(static_cast<double>(mertens_limit)) - 1.0) * j / (points - 1);
    auto x = static_cast<std::uint64_t>(std::llround(std::pow(10.0, lx)));
    if (x <= prev || x > mertens_limit) continue;
    prev = x;
    std::int64_t m = mertens(mob, x);
    Real ratio = Real::of_si(m < 0 ? -m : m, wp) / pow(Real::of_ui(x, wp), eta.rounded(wp));
    out.mertens_side.push_back(RhWindowRow{Real::of_ui(x, pc.bits), ratio.rounded(pc.bits)});
  }
  return out;
}

std::vector<DelangeRow> delange_probe(const std::vector<Real>& z_grid, PrecisionContext pc,
                                      const SeriesOptions& opts) {
  mpfr_prec_t wp = pc.work() + 8;
  Real tol(wp);
  mpfr_set_ui_2exp(tol.raw(), 1, -(pc.bits / 2), MPFR_RNDN);
  std::vector<DelangeRow> rows;
  for (const auto& z : z_grid) {
    Real zv = z.rounded(wp);
    SeriesValue v = eval_power_series(ArithFn::Mobius, ComplexHP::of_real(zv), pc, tol, opts);
    rows.push_back(DelangeRow{z.rounded(pc.bits), v.value.re,
                              (v.value.re * sqrt(1 - zv)).rounded(pc.bits)});
  }
  return rows;
}

std::vector<PrimeAbelianRow> prime_abelian_probe(const std::vector<Real>& z_grid,
                                                 PrecisionContext pc, const SeriesOptions& opts) {
  mpfr_prec_t wp = pc.work() + 8;
  Real tol(wp);
  mpfr_set_ui_2exp(tol.raw(), 1, -(pc.bits / 2), MPFR_RNDN);
  std::vector<PrimeAbelianRow> rows;
  for (const auto& z : z_grid) {
    Real zv = z.rounded(wp);
    SeriesValue v = eval_power_series(ArithFn::PrimeSequence, ComplexHP::of_real(zv), pc, tol, opts);
    Real rhs = abelian_transfer(Real::of_si(1, wp), SlowlyVarying{1, 0}, zv, pc);
    rows.push_back(PrimeAbelianRow{z.rounded(pc.bits), v.value.re, rhs.rounded(pc.bits),
                                   (v.value.re / rhs).rounded(pc.bits)});
  }
  return rows;
}

Real fit_walfisz_constant(const SieveTable& mobius_prefix, std::uint64_t x_max,
                          PrecisionContext pc) {
  if (mobius_prefix.fn() != ArithFn::Mobius || !mobius_prefix.has_prefix_sums())
    throw UnsupportedError("fit_walfisz_constant: needs a Mobius table with prefix sums");
  if (x_max > mobius_prefix.limit()) throw RangeError("fit_walfisz_constant: x_max beyond table");
  double best = HUGE_VAL;
  for (std::uint64_t x = 3; x <= x_max; ++x) {
    std::int64_t m = mobius_prefix.prefix_sum(x);
    if (m == 0) continue;
    double xd = static_cast<double>(x);
    double lx = std::log(xd);
    double h = std::pow(lx, 0.6) / std::pow(std::log(lx), 0.2);
    double cx = -std::log(std::abs(static_cast<double>(m)) / xd) / h;
    best = std::min(best, cx);
  }
  return Real::of_double(best - 1e-9, pc.bits);
}

CrossoverResult envelope_crossover(const Real& c, const EnvelopeParams& params,
                                   PrecisionContext pc) {
  validate(params);
  mpfr_prec_t wp = pc.work() + 32;
  Real cv = c.rounded(wp);
  if (cv.sign() <= 0) throw DomainError("envelope_crossover: c must be positive");
  Real coeff = to_real(params.b - params.epsilon, wp);
  Real alpha = to_real(params.alpha, wp);
  Real beta = to_real(params.beta, wp);

  // log(E t) = -coeff L / ((ln L)^alpha (ln ln L)^beta),
  // log(A t) = -c L^{3/5} / (ln L)^{1/5}; crossover where the first drops below.
  auto diff = [&](const Real& l) {
    Real ln_l = log(l);
    Real lnln_l = log(ln_l);
    Real phi = -(coeff * l) / (pow(ln_l, alpha) * pow(lnln_l, beta));
    Real psi = -(cv * pow(l, Real::from_string("0.6", wp))) / pow(ln_l, Real::from_string("0.2", wp));
    return phi - psi;  // negative once E is the smaller envelope
  };

  Real lo = Real::of_double(16.0, wp);
  Real hi = lo;
  bool found = false;
  for (int i = 0; i < 120; ++i) {
    hi = hi * 2;
    if (diff(hi).sign() < 0) {
      found = true;
      break;
    }
    lo = hi;
  }
  if (!found) throw NumericalError("envelope_crossover: no crossover below L = 16*2^120");
  for (int i = 0; i < 200; ++i) {
    Real mid = (lo + hi) * Real::from_string("0.5", wp);
    if (diff(mid).sign() < 0)
      hi = mid;
    else
      lo = mid;
    if (exponent_of(hi - lo) < exponent_of(hi) - pc.bits - 8) break;
  }
  CrossoverResult out{hi.rounded(pc.bits), (hi / log(Real::of_ui(10, wp))).rounded(pc.bits)};
  return out;
}

}  // namespace ogf
