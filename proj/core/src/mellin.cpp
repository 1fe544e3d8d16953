#include "ogf/mellin.hpp"

#include <cmath>
#include <vector>

#include "ogf/format.hpp"
#include "ogf/special.hpp"

namespace ogf {

void validate(const ZeroFreeRegionSpec& region) {
  if (region.alpha <= 0 || region.beta <= 0 || region.b <= 0)
    throw DomainError("zero-free region: alpha, beta, b must be positive");
  double w = mpq_get_d(region.w.get_mpq_t());
  if (w <= std::exp(1.0)) throw DomainError("zero-free region: w must exceed e");
  Real gw = g_of_tau(region, Real::of_double(w, 96), PrecisionContext{64, 16});
  if (gw.sign() <= 0 || gw >= Real::of_si(1, 96))
    throw DomainError("zero-free region: g(w) must lie in (0, 1)");
}

Real g_of_tau(const ZeroFreeRegionSpec& region, const Real& tau, PrecisionContext pc) {
  mpfr_prec_t wp = pc.work() + 8;
  Real a = abs(tau).rounded(wp);
  Real w = to_real(region.w, wp);
  if (a < w) a = w;
  Real ln_a = log(a);
  Real lnln_a = log(ln_a);
  Real alpha = to_real(region.alpha, wp);
  Real beta = to_real(region.beta, wp);
  Real b = to_real(region.b, wp);
  Real g = 1 - b * pow(ln_a, -alpha) * pow(lnln_a, -beta);
  return g.rounded(pc.bits);
}

Real g_prime_of_tau(const ZeroFreeRegionSpec& region, const Real& tau, PrecisionContext pc) {
  mpfr_prec_t wp = pc.work() + 8;
  Real a = abs(tau).rounded(wp);
  Real w = to_real(region.w, wp);
  if (a <= w) return Real(pc.bits);  // constant stretch
  Real ln_a = log(a);
  Real lnln_a = log(ln_a);
  Real alpha = to_real(region.alpha, wp);
  Real beta = to_real(region.beta, wp);
  Real b = to_real(region.b, wp);
  Real common = b * pow(ln_a, -alpha) * pow(lnln_a, -beta);
  Real d = common * (alpha / (a * ln_a) + beta / (a * ln_a * lnln_a));
  if (tau.sign() < 0) d = -d;
  return d.rounded(pc.bits);
}

Real default_kappa(const Real& t_abs, PrecisionContext pc) {
  mpfr_prec_t wp = pc.work() + 8;
  Real at = t_abs.rounded(wp);
  if (at.sign() <= 0 || at >= Real::of_si(1, wp))
    throw DomainError("default kappa needs 0 < |t| < 1");
  Real l = log(1 / at);
  return (1 + 1 / l).rounded(pc.bits);
}

namespace {

const DirichletClosedForm kForms[] = {
    {ArithFn::Mobius, "1/zeta(s)", 2.0, true, true},
    {ArithFn::MobiusAlternating, "(2^s+1)/((2^s-1) zeta(s))", 2.0, true, true},
    {ArithFn::Liouville, "zeta(2s)/zeta(s)", 2.0, true, true},
    {ArithFn::LiouvilleAlternating, "(1+2^(1-s)) zeta(2s)/zeta(s)", 2.0, true, true},
    {ArithFn::VonMangoldt, "-zeta'(s)/zeta(s)", 2.0, false, true},
    {ArithFn::VonMangoldtMinusOne, "-zeta'(s)/zeta(s) - zeta(s)", 2.0, true, true},
    {ArithFn::TauDivisors, "zeta(s)^2", 2.0, false, true},
    {ArithFn::TwoOmega, "zeta(s)^2/zeta(2s)", 2.0, false, true},
    // zeta(s)^2 (1/zeta(2s) - 1) keeps a double pole at s = 1 because
    // 1/zeta(2) != 1, so the deformed contour is off limits for it.
    {ArithFn::TwoOmegaMinusTau, "zeta(s)^2/zeta(2s) - zeta(s)^2", 2.0, false, true},
    {ArithFn::PrimeSequence, "", 2.0, false, false},
};

}  // namespace

const DirichletClosedForm& closed_form_for(ArithFn fn) {
  for (const auto& f : kForms)
    if (f.fn == fn) return f;
  throw UnsupportedError("no closed form descriptor");
}

ComplexHP dirichlet_D(ArithFn fn, const ComplexHP& s, PrecisionContext pc) {
  const auto& form = closed_form_for(fn);
  if (!form.has_closed_form)
    throw UnsupportedError("dirichlet_D: no zeta closed form for the prime sequence");
  mpfr_prec_t wp = pc.work() + 8;
  PrecisionContext inner{static_cast<int>(wp), 8};
  ComplexHP sv = s.rounded(wp);
  ComplexHP one = ComplexHP::of_si(1, wp);

  auto zeta_s = [&] {
    ComplexHP z = zeta(sv, inner);
    if (z.re.is_zero() && z.im.is_zero())
      throw NumericalError("dirichlet_D: zeta(s) vanished on the evaluation path");
    return z;
  };
  auto zeta_2s = [&] { return zeta(sv + sv, inner); };
  auto two_pow_s = [&] { return cexp(sv * ComplexHP::of_real(detail::cached_ln(2, wp))); };

  ComplexHP r(wp);
  switch (fn) {
    case ArithFn::Mobius:
      r = cinv(zeta_s());
      break;
    case ArithFn::MobiusAlternating: {
      ComplexHP p2 = two_pow_s();
      ComplexHP denom = p2 - one;
      if (denom.re.is_zero() && denom.im.is_zero())
        throw PoleError("dirichlet_D: pole of (2^s+1)/(2^s-1)");
      r = cinv(zeta_s()) * ((p2 + one) / denom);
      break;
    }
    case ArithFn::Liouville:
      r = zeta_2s() / zeta_s();
      break;
    case ArithFn::LiouvilleAlternating: {
      ComplexHP p2 = two_pow_s();
      r = (one + ComplexHP::of_si(2, wp) / p2) * zeta_2s() / zeta_s();
      break;
    }
    case ArithFn::VonMangoldt:
      r = -(zeta_prime(sv, inner) / zeta_s());
      break;
    case ArithFn::VonMangoldtMinusOne: {
      ComplexHP z = zeta_s();
      r = -(zeta_prime(sv, inner) / z) - z;
      break;
    }
    case ArithFn::TauDivisors: {
      ComplexHP z = zeta_s();
      r = z * z;
      break;
    }
    case ArithFn::TwoOmega: {
      ComplexHP z = zeta_s();
      r = z * z / zeta_2s();
      break;
    }
    case ArithFn::TwoOmegaMinusTau: {
      ComplexHP z = zeta_s();
      r = z * z * (cinv(zeta_2s()) - one);
      break;
    }
    case ArithFn::PrimeSequence:
      break;  // unreachable
  }
  return r.rounded(pc.bits);
}

namespace {

constexpr double kEnvelopeSafety = 1.1;  // covers the Stirling envelope's O(1/tau) slack

// The integrand only needs enough relative accuracy to hit the absolute
// quadrature target; evaluating zeta/Gamma at full report precision would
// triple the cost for nothing.
int integrand_bits(double target, PrecisionContext pc) {
  int need = static_cast<int>(std::ceil(-std::log2(target))) + 48;
  return std::clamp(need, 96, pc.work() + 24);
}

struct LineContext {
  ArithFn fn;
  ComplexHP log_t;
  Real kappa;
  mpfr_prec_t wp;
  PrecisionContext inner;
};

ComplexHP line_integrand(const LineContext& cx, const Real& tau) {
  ComplexHP s(cx.kappa.rounded(cx.wp), tau.rounded(cx.wp));
  ComplexHP d = dirichlet_D(cx.fn, s, cx.inner);
  ComplexHP g = gamma(s, cx.inner);
  ComplexHP tp = cexp(-(s * cx.log_t));
  return d * g * tp;
}

ComplexHP point_integrand(ArithFn fn, const ComplexHP& s, const ComplexHP& log_t,
                          PrecisionContext inner) {
  ComplexHP d = dirichlet_D(fn, s, inner);
  ComplexHP g = gamma(s, inner);
  ComplexHP tp = cexp(-(s * log_t));
  return d * g * tp;
}

// Height H with (1+H)^p e^{-theta H} / theta * slack <= target (log scale).
double ray_height(double theta, double p, double ln_target) {
  auto ln_tail = [&](double h) {
    double margin = 1.0 - p / (theta * (1.0 + h));
    if (margin <= 0.1) return 1e9;  // not yet in the decaying regime
    return p * std::log1p(h) - theta * h - std::log(theta) - std::log(margin);
  };
  double h = 4.0;
  while (ln_tail(h) > ln_target) {
    h *= 2.0;
    if (h > 1e7) throw NumericalError("mellin: truncation height out of range");
  }
  double lo = h / 2.0, hi = h;
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    (ln_tail(mid) <= ln_target ? hi : lo) = mid;
  }
  return hi + 0.5;
}

// Closed-form remainder of the ray majorant integral beyond H.
double ray_tail_value(double theta, double p, double h) {
  double margin = 1.0 - p / (theta * (1.0 + h));
  if (margin <= 0) return HUGE_VAL;
  return std::exp(p * std::log1p(h) - theta * h) / theta / margin;
}

std::vector<Real> geometric_breakpoints(double lo, double hi, mpfr_prec_t wp) {
  std::vector<Real> bps;
  bps.push_back(Real::of_double(lo, wp));
  double step = std::max(1.0, lo);
  for (double x = lo + step; x < hi; x += step) {
    bps.push_back(Real::of_double(x, wp));
    step *= 2.0;
  }
  bps.push_back(Real::of_double(hi, wp));
  return bps;
}

std::vector<Real> mirrored_breakpoints(const std::vector<Real>& pos, mpfr_prec_t wp) {
  std::vector<Real> bps;
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) bps.push_back(-(*it));
  for (std::size_t i = 1; i < pos.size(); ++i) bps.push_back(pos[i].rounded(wp));
  return bps;
}

// X / (2 pi i)
ComplexHP div_2pii(const ComplexHP& x, mpfr_prec_t wp) {
  Real two_pi = const_pi(wp) * 2;
  return ComplexHP(x.im / two_pi, -(x.re / two_pi));
}

struct CdSample {
  double cd = 0.0;  // 2 x max |D| / (1+|tau|)^nu over the sampled contour
};

double cd_ratio(ArithFn fn, const ComplexHP& s, double nu, PrecisionContext inner) {
  ComplexHP d = dirichlet_D(fn, s, inner);
  double tau = std::abs(s.im.to_double());
  return cabs(d).to_double() / std::pow(1.0 + tau, nu);
}

// Deterministic |D| sampling along the line piece [0, hi] at Re = kappa,
// plus (optionally) the arc and a horizontal bridge of a deformed contour.
CdSample sample_cd(ArithFn fn, const Real& kappa, double hi, const ZeroFreeRegionSpec* region,
                   double T, double nu, mpfr_prec_t wp) {
  // Only the rough magnitude of |D| matters here.
  PrecisionContext inner{96, 16};
  double m = 0.0;
  std::vector<double> taus = {0.0, 0.5, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0};
  for (double x = 24.0; x < hi; x *= 1.5) taus.push_back(x);
  taus.push_back(hi);
  for (double tau : taus) {
    if (tau > hi + 1e-9) break;
    ComplexHP s(kappa.rounded(wp), Real::of_double(tau, wp));
    m = std::max(m, cd_ratio(fn, s, nu, inner));
  }
  if (region && T > 0) {
    PrecisionContext pc_g{static_cast<int>(wp), 0};
    for (int j = 0; j <= 16; ++j) {
      double tau = T * j / 16.0;
      Real g = g_of_tau(*region, Real::of_double(tau, wp), pc_g);
      ComplexHP s(g.rounded(wp), Real::of_double(tau, wp));
      m = std::max(m, cd_ratio(fn, s, nu, inner));
    }
    Real gT = g_of_tau(*region, Real::of_double(T, wp), pc_g);
    double g = gT.to_double();
    double k = kappa.to_double();
    for (int j = 0; j <= 8; ++j) {
      double sg = g + (k - g) * j / 8.0;
      ComplexHP s(Real::of_double(sg, wp), Real::of_double(T, wp));
      m = std::max(m, cd_ratio(fn, s, nu, inner));
    }
  }
  return CdSample{2.0 * m};
}

struct RayGeometry {
  double theta_up, theta_lo;  // decay rates of the upper/lower ray integrand
  double h_up, h_lo;          // truncation heights
  double tail_up, tail_lo;    // value-level tail bounds beyond the heights
};

RayGeometry ray_geometry(const EvalPoint& point, const Real& kappa, double nu, double cd,
                         double target, double from_height) {
  double arg_t = carg(point.t).to_double();
  double abs_t = cabs(point.t).to_double();
  double k = kappa.to_double();
  double p = nu + k - 0.5;
  // |f| <= C' (1+tau)^p e^{-theta tau} with C' = safety C_D |t|^{-kappa} / sqrt(2 pi).
  double ln_cprime = std::log(kEnvelopeSafety * cd / std::sqrt(2.0 * M_PI)) - k * std::log(abs_t);
  double half_pi = 2.0 * std::atan(1.0);

  RayGeometry geo;
  geo.theta_up = half_pi - arg_t;
  geo.theta_lo = half_pi + arg_t;
  double ln_target = std::log(target / 8.0) - ln_cprime;
  geo.h_up = std::max(from_height + 1.0, ray_height(geo.theta_up, p, ln_target));
  geo.h_lo = std::max(from_height + 1.0, ray_height(geo.theta_lo, p, ln_target));
  geo.tail_up = std::exp(ln_cprime) * ray_tail_value(geo.theta_up, p, geo.h_up);
  geo.tail_lo = std::exp(ln_cprime) * ray_tail_value(geo.theta_lo, p, geo.h_lo);
  return geo;
}

}  // namespace

SeriesValue inverse_mellin_line(ArithFn fn, const EvalPoint& point, const Real& kappa,
                                PrecisionContext pc, const Real& target_abs_err,
                                const QuadratureOptions& quad) {
  if (!closed_form_for(fn).has_closed_form)
    throw UnsupportedError("inverse_mellin_line: no closed-form D(s) for this function");
  mpfr_prec_t wp = pc.work() + 24;
  if (kappa.to_double() <= 1.0) throw DomainError("inverse_mellin_line: kappa must exceed 1");
  double target = target_abs_err.to_double_down();
  if (!(target > 0)) throw DomainError("inverse_mellin_line: target must be positive");

  double nu = closed_form_for(fn).nu;
  LineContext cx{fn, clog(point.t.rounded(wp)), kappa.rounded(wp), wp,
                 PrecisionContext{integrand_bits(target, pc), 16}};

  double rough_h = ray_height(point.theta, nu + kappa.to_double() - 0.5,
                              std::log(target) - std::log(1.0 / cabs(point.t).to_double()) * 2.0);
  CdSample cd = sample_cd(fn, cx.kappa, std::max(32.0, rough_h), nullptr, 0.0, nu, wp);
  RayGeometry geo = ray_geometry(point, kappa, nu, cd.cd, target, 0.0);

  bool t_real = point.t.im.is_zero();
  Real pi = const_pi(wp);
  SeriesValue out(pc.bits);
  Real quad_err(wp);
  std::uint64_t evals = 0, panels = 0;

  if (t_real) {
    auto f = [&](const Real& tau) { return line_integrand(cx, tau); };
    Real tol = Real::of_double(0.5 * target, wp) * pi;
    auto bps = geometric_breakpoints(0.0, geo.h_up, wp);
    QuadratureResult qr = integrate_adaptive(f, bps, tol, wp, quad);
    out.value = ComplexHP(qr.value.re / pi, Real(wp)).rounded(pc.bits);
    quad_err = qr.error_estimate / pi;
    evals = qr.evaluations;
    panels = qr.panels;
  } else {
    auto f = [&](const Real& tau) { return line_integrand(cx, tau); };
    Real tol = Real::of_double(0.5 * target, wp) * (pi * 2);
    auto pos = geometric_breakpoints(0.0, std::max(geo.h_up, geo.h_lo), wp);
    // asymmetric heights: clip the mirrored side to h_lo
    std::vector<Real> bps;
    for (auto it = pos.rbegin(); it != pos.rend(); ++it)
      if (it->to_double() <= geo.h_lo + 1e-9) bps.push_back(-(*it));
    if (bps.empty() || !(bps.front() == -Real::of_double(geo.h_lo, wp)))
      bps.insert(bps.begin(), Real::of_double(-geo.h_lo, wp));
    for (std::size_t i = 1; i < pos.size(); ++i)
      if (pos[i].to_double() <= geo.h_up + 1e-9) bps.push_back(pos[i]);
    QuadratureResult qr = integrate_adaptive(f, bps, tol, wp, quad);
    out.value = (qr.value / (pi * 2)).rounded(pc.bits);
    quad_err = qr.error_estimate / (pi * 2);
    evals = qr.evaluations;
    panels = qr.panels;
  }

  Real budget = quad_err + Real::of_double(geo.tail_up + geo.tail_lo, wp);
  out.tail_bound = budget.rounded(pc.bits);
  out.terms_used = evals;
  out.wall_notes["panels"] = std::to_string(panels);
  out.wall_notes["H_up"] = format_double(geo.h_up);
  out.wall_notes["H_lo"] = format_double(geo.h_lo);
  out.wall_notes["C_D"] = format_double(cd.cd);
  out.wall_notes["kappa"] = format_double(kappa.to_double());
  return out;
}

namespace {

void validate_contour(ArithFn fn, const ContourSpec& spec) {
  validate(spec.region);
  const auto& form = closed_form_for(fn);
  if (!form.has_closed_form)
    throw UnsupportedError("deformed contour: no closed-form D(s) for this function");
  if (!form.analytic_in_region)
    throw UnsupportedError(std::string("deformed contour: D(s) for ") + to_string(fn) +
                           " has a pole on sigma >= g(tau); contour deformation is invalid");
  if (spec.kappa.to_double() <= 1.0) throw DomainError("contour: kappa must exceed 1");
  if (spec.T.sign() <= 0) throw DomainError("contour: T must be positive");
  if (spec.T.to_double() > 14.0 && !spec.unsafe_tall)
    throw DomainError(
        "contour: T > 14 reaches past the first nontrivial zeta zero height; pass the "
        "unsafe override to explore anyway");
}

}  // namespace

DeformedResult inverse_mellin_deformed(ArithFn fn, const EvalPoint& point,
                                       const ContourSpec& spec, PrecisionContext pc,
                                       const Real& target_abs_err) {
  validate_contour(fn, spec);
  mpfr_prec_t wp = pc.work() + 24;
  double target = target_abs_err.to_double_down();
  if (!(target > 0)) throw DomainError("inverse_mellin_deformed: target must be positive");

  double nu = spec.nu;
  double T = spec.T.to_double();
  LineContext cx{fn, clog(point.t.rounded(wp)), spec.kappa.rounded(wp), wp,
                 PrecisionContext{integrand_bits(target, pc), 16}};
  PrecisionContext pc_g{static_cast<int>(wp), 0};

  double rough_h = ray_height(point.theta, nu + spec.kappa.to_double() - 0.5,
                              std::log(target) - std::log(1.0 / cabs(point.t).to_double()) * 2.0);
  CdSample cd = sample_cd(fn, cx.kappa, std::max({32.0, rough_h, T}), &spec.region, T, nu, wp);
  RayGeometry geo = ray_geometry(point, spec.kappa, nu, cd.cd, target, T);

  bool t_real = point.t.im.is_zero();
  Real pi = const_pi(wp);
  Real two_pi = pi * 2;
  DeformedResult out(pc.bits);
  Real quad_err(wp);
  std::uint64_t evals = 0;

  Real gT = g_of_tau(spec.region, spec.T, pc_g).rounded(wp);

  auto arc_point = [&](const Real& tau) {
    Real g = g_of_tau(spec.region, tau, pc_g).rounded(wp);
    return ComplexHP(g, tau.rounded(wp));
  };

  // Breakpoints 0,1,2,4,... clipped to T, with w inserted when T > w.
  auto arc_bps_half = [&](double upto) {
    std::vector<Real> bps;
    double w = mpq_get_d(spec.region.w.get_mpq_t());
    bps.push_back(Real(wp));
    for (double x = 1.0; x < upto; x *= 2.0) {
      if (w > 1.0 && w < upto && x < w && 2.0 * x > w) bps.push_back(Real::of_double(w, wp));
      bps.push_back(Real::of_double(x, wp));
    }
    bps.push_back(Real::of_double(upto, wp));
    return bps;
  };

  if (t_real) {
    // Vertical rays: (1/pi) Re Int_T^H f.
    {
      auto f = [&](const Real& tau) { return line_integrand(cx, tau); };
      Real tol = Real::of_double(0.2 * target, wp) * pi;
      QuadratureResult qr =
          integrate_adaptive(f, geometric_breakpoints(T, geo.h_up, wp), tol, wp, spec.quad);
      out.seg_vert = ComplexHP(qr.value.re / pi, Real(wp));
      quad_err += qr.error_estimate / pi;
      evals += qr.evaluations;
    }
    // Horizontal bridges: (1/pi) Int_g^kappa Im f(sigma + iT) dsigma.
    {
      auto f = [&](const Real& sigma) {
        ComplexHP s(sigma.rounded(wp), spec.T.rounded(wp));
        return point_integrand(fn, s, cx.log_t, cx.inner);
      };
      Real tol = Real::of_double(0.1 * target, wp) * pi;
      std::vector<Real> bps = {gT, cx.kappa};
      QuadratureResult qr = integrate_adaptive(f, bps, tol, wp, spec.quad);
      out.seg_hor = ComplexHP(qr.value.im / pi, Real(wp));
      quad_err += qr.error_estimate / pi;
      evals += qr.evaluations;
    }
    // Arc: (1/pi) Int_0^T Im[f(s(tau)) (g'(tau) + i)] dtau.
    {
      auto f = [&](const Real& tau) {
        ComplexHP s = arc_point(tau);
        ComplexHP v = point_integrand(fn, s, cx.log_t, cx.inner);
        ComplexHP ds(g_prime_of_tau(spec.region, tau, pc_g).rounded(wp), Real::of_si(1, wp));
        return v * ds;
      };
      Real tol = Real::of_double(0.2 * target, wp) * pi;
      QuadratureResult qr = integrate_adaptive(f, arc_bps_half(T), tol, wp, spec.quad);
      out.seg_arc = ComplexHP(qr.value.im / pi, Real(wp));
      quad_err += qr.error_estimate / pi;
      evals += qr.evaluations;
    }
  } else {
    // Vertical rays, both sides.
    {
      auto f = [&](const Real& tau) { return line_integrand(cx, tau); };
      Real tol = Real::of_double(0.1 * target, wp) * two_pi;
      QuadratureResult up =
          integrate_adaptive(f, geometric_breakpoints(T, geo.h_up, wp), tol, wp, spec.quad);
      auto neg = geometric_breakpoints(T, geo.h_lo, wp);
      std::vector<Real> low;
      for (auto it = neg.rbegin(); it != neg.rend(); ++it) low.push_back(-(*it));
      QuadratureResult dn = integrate_adaptive(f, low, tol, wp, spec.quad);
      out.seg_vert = (up.value + dn.value) / two_pi;
      quad_err += (up.error_estimate + dn.error_estimate) / two_pi;
      evals += up.evaluations + dn.evaluations;
    }
    // Horizontal bridges.
    {
      auto f = [&](const Real& sigma) {
        ComplexHP su(sigma.rounded(wp), spec.T.rounded(wp));
        ComplexHP sl(sigma.rounded(wp), -spec.T.rounded(wp));
        return point_integrand(fn, su, cx.log_t, cx.inner) -
               point_integrand(fn, sl, cx.log_t, cx.inner);
      };
      Real tol = Real::of_double(0.1 * target, wp) * two_pi;
      std::vector<Real> bps = {gT, cx.kappa};
      QuadratureResult qr = integrate_adaptive(f, bps, tol, wp, spec.quad);
      out.seg_hor = div_2pii(qr.value, wp);
      quad_err += qr.error_estimate / two_pi;
      evals += qr.evaluations;
    }
    // Arc over [-T, T].
    {
      auto f = [&](const Real& tau) {
        ComplexHP s = arc_point(tau);
        ComplexHP v = point_integrand(fn, s, cx.log_t, cx.inner);
        ComplexHP ds(g_prime_of_tau(spec.region, tau, pc_g).rounded(wp), Real::of_si(1, wp));
        return v * ds;
      };
      Real tol = Real::of_double(0.2 * target, wp) * two_pi;
      auto half = arc_bps_half(T);
      QuadratureResult qr = integrate_adaptive(f, mirrored_breakpoints(half, wp), tol, wp,
                                               spec.quad);
      out.seg_arc = div_2pii(qr.value, wp);
      quad_err += qr.error_estimate / two_pi;
      evals += qr.evaluations;
    }
  }

  out.total.value = (out.seg_vert + out.seg_hor + out.seg_arc).rounded(pc.bits);
  out.seg_vert = out.seg_vert.rounded(pc.bits);
  out.seg_hor = out.seg_hor.rounded(pc.bits);
  out.seg_arc = out.seg_arc.rounded(pc.bits);
  out.total.tail_bound = (quad_err + Real::of_double(geo.tail_up + geo.tail_lo, wp)).rounded(pc.bits);
  out.total.terms_used = evals;
  out.total.wall_notes["C_D"] = format_double(cd.cd);
  out.total.wall_notes["H_up"] = format_double(geo.h_up);
  out.total.wall_notes["H_lo"] = format_double(geo.h_lo);
  out.total.wall_notes["T"] = format_double(T);
  out.total.wall_notes["g_T"] = format_double(gT.to_double());
  return out;
}

Segment segment_from_string(const std::string& s) {
  if (s == "vert") return Segment::Vert;
  if (s == "hor") return Segment::Hor;
  if (s == "arc") return Segment::Arc;
  throw DomainError("unknown segment '" + s + "'");
}

const char* to_string(Segment s) {
  switch (s) {
    case Segment::Vert: return "vert";
    case Segment::Hor: return "hor";
    case Segment::Arc: return "arc";
  }
  return "?";
}

Real calibrate_cd(ArithFn fn, const EvalPoint& point, const ContourSpec& spec,
                  PrecisionContext pc) {
  mpfr_prec_t wp = pc.work() + 16;
  double target = 1e-12;
  double rough_h = ray_height(point.theta, spec.nu + spec.kappa.to_double() - 0.5,
                              std::log(target) - std::log(1.0 / cabs(point.t).to_double()) * 2.0);
  double T = spec.T.to_double();
  CdSample cd = sample_cd(fn, spec.kappa.rounded(wp), std::max({32.0, rough_h, T}), &spec.region,
                          T, spec.nu, wp);
  return Real::of_double(cd.cd, pc.bits);
}

Real bound_segment(Segment which, ArithFn fn, const EvalPoint& point, const ContourSpec& spec,
                   PrecisionContext pc) {
  validate_contour(fn, spec);
  mpfr_prec_t wp = pc.work() + 16;
  PrecisionContext pc_g{static_cast<int>(wp), 0};
  double nu = spec.nu;
  double T = spec.T.to_double();
  double kap = spec.kappa.to_double();
  double arg_t = carg(point.t).to_double();
  double theta_up = 2.0 * std::atan(1.0) - arg_t;
  double theta_lo = 2.0 * std::atan(1.0) + arg_t;
  Real cd = calibrate_cd(fn, point, spec, pc_g);
  Real safety = Real::from_string("1.1", wp);
  Real sqrt_2pi = sqrt(const_pi(wp) * 2);
  Real two_pi = const_pi(wp) * 2;
  Real abs_t_r = cabs(point.t).rounded(wp);
  Real gT = g_of_tau(spec.region, spec.T, pc_g).rounded(wp);

  auto positive_integral = [&](const std::function<Real(const Real&)>& f,
                               const std::vector<Real>& bps, const Real& tol) {
    auto wrapped = [&](const Real& x) { return ComplexHP(f(x), Real(wp)); };
    QuadratureResult qr = integrate_adaptive(wrapped, bps, tol, wp, spec.quad);
    return qr.value.re + qr.error_estimate;
  };

  switch (which) {
    case Segment::Vert: {
      double p = nu + kap - 0.5;
      Real total(wp);
      for (double theta : {theta_up, theta_lo}) {
        // scale of the integrand near T, finite even before the decay
        // regime sets in (the closed-form tail is not)
        double ln_scale = p * std::log1p(T) - theta * T - std::log(theta);
        double hb = std::max(T + 1.0, ray_height(theta, p, ln_scale - 45.0));
        auto f = [&](const Real& tau) {
          Real one_plus = tau + 1;
          return pow(one_plus, Real::of_double(nu, wp)) *
                 pow(tau, spec.kappa.rounded(wp) - Real::from_string("0.5", wp)) *
                 exp(tau * Real::of_double(-theta, wp));
        };
        Real j = positive_integral(f, geometric_breakpoints(T, hb, wp),
                                   Real::of_double(std::exp(std::max(-700.0, ln_scale - 30.0)), wp));
        j += Real::of_double(ray_tail_value(theta, p, hb), wp);
        total += j;
      }
      Real bound = safety * cd * sqrt_2pi / two_pi * pow(abs_t_r, Real::of_double(-kap, wp)) * total;
      return bound.rounded(pc.bits);
    }
    case Segment::Hor: {
      Real Tr = spec.T.rounded(wp);
      Real env = safety * sqrt_2pi * pow(Tr, spec.kappa.rounded(wp) - Real::from_string("0.5", wp));
      Real decay = exp(Real::of_double(-theta_up * T, wp)) + exp(Real::of_double(-theta_lo * T, wp));
      Real width = spec.kappa.rounded(wp) - gT;
      Real nu_fac = pow(Tr + 1, Real::of_double(nu, wp));
      Real bound = width * cd * nu_fac * env * decay * pow(abs_t_r, Real::of_double(-kap, wp)) /
                   two_pi;
      return bound.rounded(pc.bits);
    }
    case Segment::Arc: {
      auto f = [&](const Real& tau) {
        Real at = abs(tau);
        Real g = g_of_tau(spec.region, tau, pc_g).rounded(wp);
        Real gp = g_prime_of_tau(spec.region, tau, pc_g).rounded(wp);
        Real gamma_fac(wp);
        if (at < Real::of_si(1, wp)) {
          // |Gamma(sigma + i tau)| <= Gamma(sigma) for sigma > 0
          gamma_fac = gamma(ComplexHP::of_real(g), pc_g).re;
        } else {
          gamma_fac = safety * sqrt_2pi * exp(const_pi(wp) * Real::from_string("-0.5", wp) * at) *
                      pow(at, g - Real::from_string("0.5", wp));
        }
        Real nu_fac = pow(at + 1, Real::of_double(nu, wp));
        Real rot = exp(tau.rounded(wp) * Real::of_double(arg_t, wp));
        return nu_fac * gamma_fac * rot * sqrt(1 + gp * gp);
      };
      std::vector<Real> half;
      half.push_back(Real(wp));
      double w = mpq_get_d(spec.region.w.get_mpq_t());
      for (double x = 1.0; x < T; x *= 2.0) {
        if (w < T && x < w && 2.0 * x > w) half.push_back(Real::of_double(w, wp));
        half.push_back(Real::of_double(x, wp));
      }
      half.push_back(Real::of_double(T, wp));
      Real integral = positive_integral(f, mirrored_breakpoints(half, wp),
                                        Real::of_double(1e-14, wp) * (gamma(ComplexHP::of_real(gT), pc_g).re * 2 * spec.T.rounded(wp) + 1));
      Real bound = cd / two_pi * pow(abs_t_r, -gT) * integral;
      return bound.rounded(pc.bits);
    }
  }
  throw DomainError("unknown segment");
}

}  // namespace ogf
