#include "ogf/series.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "ogf/special.hpp"

namespace ogf {

EvalPoint::EvalPoint(ComplexHP t_, double theta_) : t(std::move(t_)), theta(theta_) {
  if (!t.is_finite()) throw DomainError("EvalPoint: non-finite t");
  if (t.re.sign() <= 0) throw DomainError("EvalPoint: Re(t) must be positive");
  if (theta <= 0.0) throw DomainError("EvalPoint: sector angle theta must be positive");
  double at = std::abs(carg(t).to_double());
  if (at > std::asin(1.0) - theta + 1e-15)
    throw DomainError("EvalPoint: |arg t| exceeds pi/2 - theta");
}

namespace {

double ln_expm1_neg(double x) {
  // ln(1 - e^{-x}) with care for small x.
  return std::log(-std::expm1(-x));
}

// log of the default tail majorant (N+1) e^{-Nx} (1 + 1/x) / (1 - e^{-x}).
double log_tail_default(double x, double n) {
  return std::log(n + 1.0) - n * x + std::log1p(1.0 / x) - ln_expm1_neg(x);
}

// Exact log of sum_{n>N} n q^n = q^{N+1} ((N+1) - N q) / (1-q)^2, q = e^{-x}.
double log_s1(double x, double n) {
  double q = std::exp(-x);
  return -(n + 1.0) * x + std::log((n + 1.0) - n * q) - 2.0 * ln_expm1_neg(x);
}

// Exact log of sum_{n>N} n^2 q^n.
double log_s2(double x, double n) {
  double q = std::exp(-x);
  double bracket = (n + 1.0) * (n + 1.0) - (2.0 * n * n + 2.0 * n - 1.0) * q + n * n * q * q;
  return -(n + 1.0) * x + std::log(bracket) - 3.0 * ln_expm1_neg(x);
}

// Tail for the prime sequence: p_n <= n L_N + 2 n^2/(N+1) for n > N >= 6,
// where L_N = ln(N+1) + ln ln(N+1) (Rosser's bound plus log concavity).
// Below n = 6 that bound does not apply; those terms enter explicitly.
double log_tail_primes(double x, double n) {
  static const double first_primes[7] = {0, 2, 3, 5, 7, 11, 13};
  double nn = std::max(n, 6.0);
  double l = std::log(nn + 1.0) + std::log(std::log(nn + 1.0));
  double a = std::log(l) + log_s1(x, nn);
  double b = std::log(2.0) - std::log(nn + 1.0) + log_s2(x, nn);
  double hi = std::max(a, b);
  double acc = hi + std::log1p(std::exp(std::min(a, b) - hi));
  for (long k = static_cast<long>(n) + 1; k <= 6; ++k) {
    double term = std::log(first_primes[k]) - k * x;
    double m = std::max(acc, term);
    acc = m + std::log1p(std::exp(std::min(acc, term) - m));
  }
  return acc;
}

double log_tail(ArithFn fn, double x, double n) {
  return fn == ArithFn::PrimeSequence ? log_tail_primes(x, n) : log_tail_default(x, n);
}

}  // namespace

std::uint64_t series_truncation_length(ArithFn fn, double re_t, double target) {
  if (!(re_t > 0)) throw DomainError("series: Re(t) must be positive");
  if (!(target > 0)) throw DomainError("series: target error must be positive");
  double goal = std::log(target);
  std::uint64_t lo = 1, hi = 2;
  while (log_tail(fn, re_t, static_cast<double>(hi)) > goal) {
    if (hi > (1ull << 40)) throw NumericalError("series: truncation length out of range");
    hi *= 2;
  }
  while (lo + 1 < hi) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (log_tail(fn, re_t, static_cast<double>(mid)) <= goal)
      hi = mid;
    else
      lo = mid;
  }
  return hi + 4;  // a few spare terms absorb double-precision slop in the solver
}

Real series_tail_majorant(ArithFn fn, const Real& re_t, std::uint64_t n_terms,
                          PrecisionContext pc) {
  mpfr_prec_t wp = pc.work() + 16;
  Real x = re_t.rounded(wp);
  if (x.sign() <= 0) throw DomainError("series: Re(t) must be positive");
  Real n = Real::of_ui(n_terms, wp);
  Real one = Real::of_si(1, wp);
  Real one_minus_q = -expm1(-x);
  if (fn == ArithFn::PrimeSequence) {
    std::uint64_t nn = std::max<std::uint64_t>(n_terms, 6);
    Real nr = Real::of_ui(nn, wp);
    Real q = exp(-x);
    Real l = log(nr + 1) + log(log(nr + 1));
    Real s1 = exp(-((nr + 1) * x)) * ((nr + 1) - nr * q) / (one_minus_q * one_minus_q);
    Real bracket = (nr + 1) * (nr + 1) - ((nr * nr) * 2 + nr * 2 - 1) * q + (nr * nr) * (q * q);
    Real s2 = exp(-((nr + 1) * x)) * bracket / (one_minus_q * one_minus_q * one_minus_q);
    Real bound = l * s1 + (s2 * 2) / (nr + 1);
    static const long first_primes[7] = {0, 2, 3, 5, 7, 11, 13};
    for (std::uint64_t k = n_terms + 1; k <= 6; ++k)
      bound += exp(-(x * static_cast<long>(k))) * first_primes[k];
    return bound.rounded(pc.bits);
  }
  Real bound = (n + 1) * exp(-(n * x)) * (one + 1 / x) / one_minus_q;
  return bound.rounded(pc.bits);
}

namespace {

struct BlockPartial {
  ComplexHP sum;
  explicit BlockPartial(mpfr_prec_t p) : sum(p) {}
};

int pick_threads(int requested, std::uint64_t blocks) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  int t = requested > 0 ? requested : std::min(hw, 8);
  if (static_cast<std::uint64_t>(t) > blocks) t = static_cast<int>(blocks);
  return std::max(t, 1);
}

// Adds sum_{n=lo}^{hi-1} a_n e^{-n t} into out. Fresh starting power per
// block keeps long products from drifting and makes blocks independent.
void sum_block(ArithFn fn, const SieveTable& table, const ComplexHP& t, bool t_real,
               std::uint64_t lo, std::uint64_t hi, mpfr_prec_t wp, ComplexHP& out) {
  ComplexHP minus_t(-t.re, -t.im);
  ComplexHP step = cexp(minus_t);
  ComplexHP power = cexp(minus_t * Real::of_ui(lo, wp));
  bool pp = table.stores_prime_powers();
  bool minus_one = fn == ArithFn::VonMangoldtMinusOne;

  Real coeff(wp);
  Real tmp(wp);
  for (std::uint64_t n = lo; n < hi; ++n) {
    bool have_coeff = false;
    if (pp) {
      PrimePower v = table.value_prime_power(n);
      if (v.p) {
        mpfr_log_ui(coeff.raw(), v.p, MPFR_RNDN);
        if (minus_one) mpfr_sub_ui(coeff.raw(), coeff.raw(), 1, MPFR_RNDN);
        have_coeff = true;
      } else if (minus_one) {
        mpfr_set_si(coeff.raw(), -1, MPFR_RNDN);
        have_coeff = true;
      }
      if (have_coeff) {
        mpfr_mul(tmp.raw(), power.re.raw(), coeff.raw(), MPFR_RNDN);
        mpfr_add(out.re.raw(), out.re.raw(), tmp.raw(), MPFR_RNDN);
        if (!t_real) {
          mpfr_mul(tmp.raw(), power.im.raw(), coeff.raw(), MPFR_RNDN);
          mpfr_add(out.im.raw(), out.im.raw(), tmp.raw(), MPFR_RNDN);
        }
      }
    } else {
      std::int64_t a = table.value_int(n);
      if (a == 1) {
        mpfr_add(out.re.raw(), out.re.raw(), power.re.raw(), MPFR_RNDN);
        if (!t_real) mpfr_add(out.im.raw(), out.im.raw(), power.im.raw(), MPFR_RNDN);
      } else if (a == -1) {
        mpfr_sub(out.re.raw(), out.re.raw(), power.re.raw(), MPFR_RNDN);
        if (!t_real) mpfr_sub(out.im.raw(), out.im.raw(), power.im.raw(), MPFR_RNDN);
      } else if (a != 0) {
        mpfr_mul_si(tmp.raw(), power.re.raw(), a, MPFR_RNDN);
        mpfr_add(out.re.raw(), out.re.raw(), tmp.raw(), MPFR_RNDN);
        if (!t_real) {
          mpfr_mul_si(tmp.raw(), power.im.raw(), a, MPFR_RNDN);
          mpfr_add(out.im.raw(), out.im.raw(), tmp.raw(), MPFR_RNDN);
        }
      }
    }
    // power *= step
    if (t_real) {
      mpfr_mul(power.re.raw(), power.re.raw(), step.re.raw(), MPFR_RNDN);
    } else {
      mpfr_mul(tmp.raw(), power.re.raw(), step.re.raw(), MPFR_RNDN);
      mpfr_mul(coeff.raw(), power.im.raw(), step.im.raw(), MPFR_RNDN);
      mpfr_sub(tmp.raw(), tmp.raw(), coeff.raw(), MPFR_RNDN);
      mpfr_mul(coeff.raw(), power.re.raw(), step.im.raw(), MPFR_RNDN);
      mpfr_swap(power.re.raw(), tmp.raw());
      mpfr_mul(tmp.raw(), power.im.raw(), step.re.raw(), MPFR_RNDN);
      mpfr_add(power.im.raw(), tmp.raw(), coeff.raw(), MPFR_RNDN);
    }
  }
}

}  // namespace

SeriesValue eval_exp_series(ArithFn fn, const EvalPoint& point, PrecisionContext pc,
                            const Real& target_abs_err, const SeriesOptions& opts) {
  double x = point.t.re.to_double_down();
  double target = target_abs_err.to_double_down();
  if (!(target > 0)) throw DomainError("series: target error must be positive");

  std::uint64_t n_terms = series_truncation_length(fn, x, target / 2);
  if (n_terms > opts.memory_cap) throw MemoryCapError(n_terms, opts.memory_cap);

  std::shared_ptr<const SieveTable> table = opts.table;
  if (table && (table->fn() != fn || table->limit() < n_terms)) table.reset();
  if (!table) {
    SieveOptions so;
    so.memory_cap = opts.memory_cap;
    table = std::make_shared<SieveTable>(sieve(fn, n_terms, so));
  }

  mpfr_prec_t wp = pc.work() + 8 +
                   static_cast<mpfr_prec_t>(std::ceil(std::log2(static_cast<double>(n_terms) + 2)));
  ComplexHP t = point.t.rounded(wp);
  bool t_real = t.im.is_zero();

  std::uint64_t block = std::max<std::uint64_t>(opts.block_size, 1024);
  std::uint64_t n_blocks = (n_terms + block - 1) / block;
  std::vector<BlockPartial> partials;
  partials.reserve(n_blocks);
  for (std::uint64_t b = 0; b < n_blocks; ++b) partials.emplace_back(wp);

  int threads = pick_threads(opts.threads, n_blocks);
  if (threads <= 1) {
    for (std::uint64_t b = 0; b < n_blocks; ++b) {
      std::uint64_t lo = 1 + b * block;
      std::uint64_t hi = std::min<std::uint64_t>(n_terms + 1, lo + block);
      sum_block(fn, *table, t, t_real, lo, hi, wp, partials[b].sum);
    }
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (;;) {
          std::uint64_t b = next.fetch_add(1);
          if (b >= n_blocks) return;
          std::uint64_t lo = 1 + b * block;
          std::uint64_t hi = std::min<std::uint64_t>(n_terms + 1, lo + block);
          sum_block(fn, *table, t, t_real, lo, hi, wp, partials[b].sum);
        }
      });
    for (auto& th : pool) th.join();
  }

  // Deterministic combination in block order, independent of thread count.
  ComplexHP acc(wp);
  for (std::uint64_t b = 0; b < n_blocks; ++b) acc = acc + partials[b].sum;

  SeriesValue out(pc.bits);
  out.value = acc.rounded(pc.bits);
  out.tail_bound = series_tail_majorant(fn, point.t.re, n_terms, pc);
  out.terms_used = n_terms;
  out.wall_notes["fn"] = to_string(fn);
  out.wall_notes["blocks"] = std::to_string(n_blocks);
  out.wall_notes["threads"] = std::to_string(threads);
  out.wall_notes["work_prec"] = std::to_string(wp);
  return out;
}

SeriesValue eval_power_series(ArithFn fn, const ComplexHP& z, PrecisionContext pc,
                              const Real& target_abs_err, const SeriesOptions& opts) {
  mpfr_prec_t wp = pc.work() + 8;
  if (z.re.is_zero() && z.im.is_zero()) {
    SeriesValue out(pc.bits);
    out.wall_notes["fn"] = to_string(fn);
    return out;  // empty sum
  }
  if (z.im.is_zero() && z.re.sign() < 0)
    throw DomainError("series: z on the negative real axis is outside the principal branch");
  Real az = cabs(z);
  if (az >= Real::of_si(1, wp)) throw DomainError("series: |z| must be < 1");
  ComplexHP t = -clog(z.rounded(wp));
  double theta = std::asin(1.0) - std::abs(carg(t).to_double());
  if (theta <= 0) throw DomainError("series: z outside every sector S_theta");
  return eval_exp_series(fn, EvalPoint(t, theta), pc, target_abs_err, opts);
}

bool sector_check(const ComplexHP& z, double theta) {
  mpfr_prec_t wp = z.prec() + 8;
  ComplexHP one_minus_z(1 - z.re.rounded(wp), -z.im.rounded(wp));
  Real a = carg(one_minus_z);
  double bound = std::asin(1.0) - theta;
  return std::abs(a.to_double()) <= bound + 1e-18;
}

}  // namespace ogf
