#include <doctest.h>

#include "ogf/series.hpp"
#include "ogf/special.hpp"
#include "support.hpp"

using namespace ogf;
using namespace testsupport;

namespace {
const PrecisionContext pc128{128, 32};

Real tol(const char* s) { return Real::from_string(s, 192); }

EvalPoint real_point(const char* t) {
  return EvalPoint(ComplexHP::of_real(Real::from_string(t, 192)), 0.7);
}
}  // namespace

TEST_SUITE("series") {

TEST_CASE("two precisions agree at z = 1/2") {
  // t = ln 2, i.e. sum mu(n) 2^{-n}
  Real t = log(Real::of_si(2, 256));
  EvalPoint p(ComplexHP::of_real(t), 0.7);
  SeriesValue a = eval_exp_series(ArithFn::Mobius, p, pc128, tol("1e-30"));
  SeriesValue b = eval_exp_series(ArithFn::Mobius, p, PrecisionContext{192, 32}, tol("1e-45"));
  CHECK(bits_agree(a.value, b.value) >= 90);
}

TEST_CASE("large t is dominated by the first term") {
  SeriesValue v = eval_exp_series(ArithFn::Mobius, real_point("20"), pc128, tol("1e-25"));
  Real one_term = exp(Real::of_si(-20, 192));
  Real bound_after_first = series_tail_majorant(ArithFn::Mobius, Real::of_si(20, 192), 1, pc128);
  CHECK(abs(v.value.re - one_term) <= bound_after_first);
}

TEST_CASE("divisor series equals its Lambert form") {
  for (const char* ts : {"0.5", "0.2"}) {
    EvalPoint p = real_point(ts);
    SeriesValue v = eval_exp_series(ArithFn::TauDivisors, p, pc128, tol("1e-26"));
    ComplexHP z = cexp(-p.t);
    ComplexHP lam = lambert_sum(z, 1e-30, 192);
    CHECK(bits_agree(v.value, lam) >= 80);
  }
  // complex z inside the sector
  ComplexHP z(Real::from_string("0.45", 192), Real::from_string("0.25", 192));
  SeriesValue v = eval_power_series(ArithFn::TauDivisors, z, pc128, tol("1e-26"));
  CHECK(bits_agree(v.value, lambert_sum(z, 1e-30, 192)) >= 80);
}

TEST_CASE("power series at z = 0 is the empty sum") {
  SeriesValue v = eval_power_series(ArithFn::Mobius, ComplexHP(192), pc128, tol("1e-20"));
  CHECK(v.value.re.is_zero());
  CHECK(v.value.im.is_zero());
  CHECK(v.terms_used == 0);
}

TEST_CASE("prime series at z = 1/2 against the naive prime list") {
  SeriesValue v = eval_power_series(ArithFn::PrimeSequence,
                                    ComplexHP::of_real(Real::from_string("0.5", 192)), pc128,
                                    tol("1e-25"));
  auto primes = primes_naive(120);
  Real ref(256);
  Real half_pow = Real::of_si(1, 256);
  for (std::size_t n = 0; n < primes.size(); ++n) {
    half_pow /= 2;
    ref += half_pow * static_cast<long>(primes[n]);
  }
  // remainder below 2^-120 * p_121-ish; far below the check tolerance
  CHECK(bits_agree(v.value.re, ref) >= 80);
}

TEST_CASE("power/exp consistency is definitional") {
  mpfr_prec_t wp = pc128.work() + 8;
  ComplexHP z(Real::from_string("0.62", wp), Real::from_string("0.11", wp));
  SeriesValue a = eval_power_series(ArithFn::Liouville, z, pc128, tol("1e-24"));
  ComplexHP t = -clog(z);
  double theta = std::asin(1.0) - std::abs(carg(t).to_double());
  SeriesValue b = eval_exp_series(ArithFn::Liouville, EvalPoint(t, theta), pc128, tol("1e-24"));
  CHECK(a.value.re == b.value.re);
  CHECK(a.value.im == b.value.im);
}

TEST_CASE("sector check") {
  CHECK(sector_check(ComplexHP::of_real(Real::from_string("0.5", 96)), 0.3));
  CHECK(sector_check(ComplexHP::of_si(1, 96), 0.3));  // arg(0) = 0 boundary case
  // z = 0.99i: arg(1 - z) ~ -0.78 rad, bound is pi/2 - (pi/2 - 0.1) = 0.1
  ComplexHP zi(Real(96), Real::from_string("0.99", 96));
  CHECK_FALSE(sector_check(zi, std::asin(1.0) - 0.1));
}

TEST_CASE("tail bound is sound on a (fn, t) grid") {
  struct Case {
    ArithFn fn;
    const char* t;
  };
  for (const Case& c : {Case{ArithFn::Mobius, "1e-4"}, Case{ArithFn::Mobius, "1e-2"},
                        Case{ArithFn::TauDivisors, "1e-2"}, Case{ArithFn::TauDivisors, "1"},
                        Case{ArithFn::VonMangoldtMinusOne, "0.05"},
                        Case{ArithFn::PrimeSequence, "0.01"}}) {
    EvalPoint p = real_point(c.t);
    SeriesValue coarse = eval_exp_series(c.fn, p, pc128, tol("1e-14"));
    SeriesValue fine = eval_exp_series(c.fn, p, pc128, tol("1e-26"));
    CHECK(cabs(coarse.value - fine.value) <= coarse.tail_bound);
    CHECK(fine.terms_used > coarse.terms_used);
  }
}

TEST_CASE("tail majorant dominates a brute-force tail") {
  // sum_{n>N} n e^{-n/2} vs the closed form used for |a_n| <= n
  Real x = Real::from_string("0.5", 192);
  Real brute(192);
  for (long n = 11; n <= 400; ++n) brute += Real::of_si(n, 192) * exp(-(x * n));
  CHECK(series_tail_majorant(ArithFn::Mobius, x, 10, pc128) >= brute);

  // prime tail: sum_{n>N} p_n e^{-n/10}
  Real x2 = Real::from_string("0.1", 192);
  auto primes = primes_naive(600);
  Real brute2(192);
  for (long n = 21; n <= 600; ++n)
    brute2 += Real::of_si(static_cast<long>(primes[n - 1]), 192) * exp(-(x2 * n));
  CHECK(series_tail_majorant(ArithFn::PrimeSequence, x2, 20, pc128) >= brute2);

  // truncation below n = 6 must still cover the explicit small primes;
  // the n = 2 term dominates both sides, so allow rounding at 128 bits
  Real x3 = Real::of_si(20, 192);
  Real brute3(192);
  for (long n = 2; n <= 30; ++n)
    brute3 += Real::of_si(static_cast<long>(primes[n - 1]), 192) * exp(-(x3 * n));
  Real slack = Real::from_string("1e-30", 192);
  CHECK(series_tail_majorant(ArithFn::PrimeSequence, x3, 1, pc128) * (1 + slack) >= brute3);
}

TEST_CASE("linearity identities") {
  EvalPoint p = real_point("0.3");
  Real tt = Real::from_string("0.3", 192);
  SeriesValue lhs = eval_exp_series(ArithFn::VonMangoldtMinusOne, p, pc128, tol("1e-26"));
  SeriesValue lam = eval_exp_series(ArithFn::VonMangoldt, p, pc128, tol("1e-26"));
  Real geom = exp(-tt) / (1 - exp(-tt));
  CHECK(bits_agree(lhs.value.re, lam.value.re - geom) >= 78);

  SeriesValue d = eval_exp_series(ArithFn::TwoOmegaMinusTau, p, pc128, tol("1e-26"));
  SeriesValue w = eval_exp_series(ArithFn::TwoOmega, p, pc128, tol("1e-26"));
  SeriesValue tau = eval_exp_series(ArithFn::TauDivisors, p, pc128, tol("1e-26"));
  CHECK(bits_agree(d.value.re, w.value.re - tau.value.re) >= 78);

  // alternating: F_alt = 2 F_odd - F
  EvalPoint q = real_point("0.25");
  SeriesValue alt = eval_exp_series(ArithFn::MobiusAlternating, q, pc128, tol("1e-26"));
  SeriesValue plain = eval_exp_series(ArithFn::Mobius, q, pc128, tol("1e-26"));
  Real f_odd(192);
  Real qt = Real::from_string("0.25", 192);
  for (std::uint64_t n = 1; n <= 400; n += 2)
    f_odd += Real::of_si(value(ArithFn::Mobius, n), 192) * exp(-(qt * static_cast<long>(n)));
  CHECK(abs(alt.value.re - (f_odd * 2 - plain.value.re)) <= Real::from_string("1e-24", 192));
}

TEST_CASE("sector membership of constructed eval points") {
  for (const char* ts : {"0.5", "0.05"}) {
    for (double deg : {0.0, 40.0, -40.0}) {
      mpfr_prec_t wp = 192;
      Real r = Real::from_string(ts, wp);
      Real ang = Real::of_double(deg, wp) * const_pi(wp) / 180;
      Real si(wp), co(wp);
      sin_cos(si, co, ang);
      EvalPoint p(ComplexHP(r * co, r * si), (90.0 - std::abs(deg)) * std::acos(-1.0) / 180.0);
      ComplexHP z = cexp(-p.t);
      for (double theta_smaller : {p.theta - 0.05, p.theta - 0.2})
        if (theta_smaller > 0) CHECK(sector_check(z, theta_smaller));
    }
  }
}

TEST_CASE("error paths") {
  CHECK_THROWS_AS(EvalPoint(ComplexHP::of_real(Real::of_si(-1, 96)), 0.5), DomainError);
  CHECK_THROWS_AS(EvalPoint(ComplexHP(Real::of_si(1, 96), Real::of_si(100, 96)), 1.0),
                  DomainError);
  CHECK_THROWS_AS(
      eval_power_series(ArithFn::Mobius, ComplexHP::of_real(Real::of_si(-1, 96)) * Real::from_string("0.5", 96),
                        pc128, tol("1e-10")),
      DomainError);
  CHECK_THROWS_AS(
      eval_power_series(ArithFn::Mobius, ComplexHP::of_si(2, 96), pc128, tol("1e-10")),
      DomainError);

  SeriesOptions opts;
  opts.memory_cap = 1000;
  try {
    eval_exp_series(ArithFn::Mobius, real_point("1e-4"), pc128, tol("1e-20"), opts);
    FAIL("expected MemoryCapError");
  } catch (const MemoryCapError& e) {
    CHECK(e.required_terms() > 1000);
    CHECK(e.cap() == 1000);
  }
}

TEST_CASE("block-parallel summation is bit-reproducible") {
  EvalPoint p = real_point("0.01");
  SeriesOptions one;
  one.threads = 1;
  SeriesOptions four;
  four.threads = 4;
  SeriesValue a = eval_exp_series(ArithFn::Mobius, p, pc128, tol("1e-22"), one);
  SeriesValue b = eval_exp_series(ArithFn::Mobius, p, pc128, tol("1e-22"), four);
  CHECK(a.value.re == b.value.re);
  CHECK(a.value.im == b.value.im);
}

}  // TEST_SUITE
