#include <doctest.h>

#include "ogf/format.hpp"
#include "ogf/special.hpp"
#include "support.hpp"

using namespace ogf;
using namespace testsupport;

namespace {
const PrecisionContext pc128{128, 32};
const PrecisionContext pc256{256, 32};
}  // namespace

TEST_SUITE("hpnum") {

TEST_CASE("bernoulli numbers against the textbook table") {
  CHECK(bernoulli(0) == Rational(1));
  CHECK(bernoulli(1) == Rational(-1, 2));
  CHECK(bernoulli(2) == Rational(1, 6));
  CHECK(bernoulli(3) == Rational(0));
  CHECK(bernoulli(4) == Rational(-1, 30));
  CHECK(bernoulli(8) == Rational(-1, 30));
  CHECK(bernoulli(12) == Rational(-691, 2730));
  CHECK(bernoulli(20) == Rational(-174611, 330));
  CHECK_THROWS_AS(bernoulli(300), DomainError);
  CHECK(bernoulli(300, 512) != 0);
}

TEST_CASE("euler gamma: value, independent oracle, precision ladder") {
  Real g = euler_gamma(pc128);
  // first 20 digits: 0.57721566490153286060...
  CHECK(format_real(g, 128).substr(0, 21) == "5.7721566490153286060");

  // independent second algorithm
  Real ref(300);
  mpfr_const_euler(ref.raw(), MPFR_RNDN);
  CHECK(bits_agree(euler_gamma(pc256), ref) >= 250);

  // 53-bit rounding
  CHECK(euler_gamma(PrecisionContext{53, 32}).to_double() == 0.5772156649015329);

  // doubling bits never disturbs agreed digits
  CHECK(bits_agree(euler_gamma(PrecisionContext{64, 32}), euler_gamma(pc256)) >= 60);
}

TEST_CASE("gamma: special values") {
  CHECK(gamma(ComplexHP::of_si(1, 160), pc128).re == Real::of_si(1, 128));
  CHECK(gamma(ComplexHP::of_si(5, 160), pc128).re == Real::of_si(24, 128));
  Real sqrt_pi = sqrt(const_pi(200));
  CHECK(bits_agree(gamma(ComplexHP(Real::from_string("0.5", 160), Real(160)), pc128).re,
                   sqrt_pi) >= 120);
}

TEST_CASE("gamma: recurrence on random strip points") {
  auto rng = test_rng(1);
  std::uniform_real_distribution<double> re(0.01, 3.0), im(-100.0, 100.0);
  for (int i = 0; i < 50; ++i) {
    ComplexHP s(Real::of_double(re(rng), 192), Real::of_double(im(rng), 192));
    ComplexHP lhs = gamma(s + ComplexHP::of_si(1, 192), pc128);
    ComplexHP rhs = s * gamma(s, pc128);
    CHECK(bits_agree(lhs, rhs) >= 120 - 8);
  }
}

TEST_CASE("gamma: conjugation symmetry and poles") {
  ComplexHP s(Real::from_string("1.7", 192), Real::from_string("33.25", 192));
  CHECK(bits_agree(gamma(conj(s), pc128), conj(gamma(s, pc128))) >= 118);
  CHECK_THROWS_AS(gamma(ComplexHP::of_si(0, 160), pc128), PoleError);
  CHECK_THROWS_AS(gamma(ComplexHP::of_si(-3, 160), pc128), PoleError);
}

TEST_CASE("gamma: real-axis cross-check against mpfr") {
  for (const char* xs : {"0.25", "2.337", "7.5", "41.0"}) {
    Real x = Real::from_string(xs, 200);
    Real ref(200);
    mpfr_gamma(ref.raw(), x.raw(), MPFR_RNDN);
    CHECK(bits_agree(gamma(ComplexHP::of_real(x), pc128).re, ref) >= 120);
  }
}

TEST_CASE("gamma: reflection side, negative real part") {
  // Gamma(-1.5) = 4 sqrt(pi) / 3
  Real ref = sqrt(const_pi(200)) * 4 / 3;
  Real got = gamma(ComplexHP(Real::from_string("-1.5", 192), Real(192)), pc128).re;
  CHECK(bits_agree(got, ref) >= 118);
}

TEST_CASE("gamma vertical envelope") {
  // ratio |Gamma(1/2 + 50i)| / envelope within 1%
  ComplexHP g = gamma(ComplexHP(Real::from_string("0.5", 192), Real::of_si(50, 192)), pc128);
  Real env = gamma_vertical_envelope(Real::from_string("0.5", 192), Real::of_si(50, 192), pc128);
  Real ratio = cabs(g) / env;
  CHECK(within_abs(ratio - 1, 0.01));

  // tau = 1, sigma = 1/2: envelope equals sqrt(2 pi) e^{-pi/2}
  Real ref = sqrt(const_pi(200) * 2) * exp(-(const_pi(200) / 2));
  CHECK(bits_agree(gamma_vertical_envelope(Real::from_string("0.5", 160), Real::of_si(1, 160),
                                           pc128),
                   ref) >= 120);

  // strictly decreasing in tau for sigma <= 1/2
  for (const char* sig : {"0.3", "0.5"}) {
    Real prev(64);
    bool first = true;
    for (double tau = 1.0; tau <= 40.0; tau += 2.5) {
      Real e = gamma_vertical_envelope(Real::from_string(sig, 160), Real::of_double(tau, 160),
                                       pc128);
      if (!first) CHECK(e < prev);
      prev = e;
      first = false;
    }
  }
  CHECK_THROWS_AS(
      gamma_vertical_envelope(Real::from_string("0.5", 160), Real::from_string("0.5", 160), pc128),
      DomainError);
}

TEST_CASE("zeta: classical values") {
  Real pi2_6 = const_pi(220) * const_pi(220) / 6;
  CHECK(bits_agree(zeta(ComplexHP::of_si(2, 192), pc128).re, pi2_6) >= 120);

  Real minus_half = Real::from_string("-0.5", 192);
  CHECK(bits_agree(zeta(ComplexHP(Real(192), Real(192)), pc128).re, minus_half) >= 120);

  Real ref(220);
  mpfr_zeta_ui(ref.raw(), 3, MPFR_RNDN);
  CHECK(bits_agree(zeta(ComplexHP::of_si(3, 192), pc128).re, ref) >= 120);
}

TEST_CASE("zeta: alternating-series oracle at a complex point") {
  ComplexHP s(Real::of_si(2, 220), Real::of_si(3, 220));
  ComplexHP z = zeta(s, pc128);
  // zeta(s) (1 - 2^{1-s}) = eta(s)
  ComplexHP one = ComplexHP::of_si(1, 220);
  ComplexHP factor = one - cexp((one - s) * ComplexHP::of_real(detail::cached_ln(2, 220)));
  ComplexHP eta = eta_accelerated(s, 96, 220);
  CHECK(bits_agree(z * factor, eta) >= 110);
}

TEST_CASE("zeta: domain guards") {
  CHECK_THROWS_AS(zeta(ComplexHP::of_si(1, 160), pc128), PoleError);
  CHECK_THROWS_AS(zeta(ComplexHP(Real::from_string("-1.5", 160), Real(160)), pc128), RangeError);
  CHECK_THROWS_AS(zeta(ComplexHP(Real::of_si(2, 160), Real::of_double(2e4, 160)), pc128),
                  RangeError);
}

TEST_CASE("zeta: cutoff doubling agreement") {
  ComplexHP s(Real::from_string("0.99", 220), Real::of_si(10, 220));
  ComplexHP a = detail::zeta_em(s, 64, 16, 220);
  ComplexHP b = detail::zeta_em(s, 128, 32, 220);
  ComplexHP c = detail::zeta_em(s, 256, 64, 220);
  CHECK(bits_agree(a, b) >= 90);
  CHECK(bits_agree(b, c) >= 140);
  CHECK(bits_agree(c, zeta(s, pc128).rounded(220)) >= 120);
}

TEST_CASE("zeta and gamma: conjugation reflection at random points") {
  auto rng = test_rng(2);
  std::uniform_real_distribution<double> re(-0.5, 3.0), im(0.5, 200.0);
  for (int i = 0; i < 10; ++i) {
    ComplexHP s(Real::of_double(re(rng), 192), Real::of_double(im(rng), 192));
    CHECK(bits_agree(conj(zeta(conj(s), pc128)), zeta(s, pc128)) >= 112);
  }
}

TEST_CASE("zeta_prime: constants and oracles") {
  // zeta'(0) = -log(2 pi)/2
  Real ref = -(const_log_2pi(220) / 2);
  CHECK(bits_agree(zeta_prime(ComplexHP(Real(192), Real(192)), pc128).re, ref) >= 115);

  // central finite difference of zeta at h = 2^{-64}
  mpfr_prec_t wp = 300;
  Real h(wp);
  mpfr_set_ui_2exp(h.raw(), 1, -64, MPFR_RNDN);
  ComplexHP two = ComplexHP::of_si(2, wp);
  ComplexHP fp = zeta(ComplexHP(two.re + h, two.im), PrecisionContext{280, 32});
  ComplexHP fm = zeta(ComplexHP(two.re - h, two.im), PrecisionContext{280, 32});
  Real fd = (fp.re - fm.re) / (h * 2);
  CHECK(bits_agree(zeta_prime(two, pc128).re, fd) >= 120 / 2);

  // zeta'(3) < 0 on the real axis
  CHECK(zeta_prime(ComplexHP::of_si(3, 192), pc128).re.sign() < 0);

  CHECK(bits_agree(conj(zeta_prime(ComplexHP(Real::of_si(2, 192), Real::of_si(-7, 192)), pc128)),
                   zeta_prime(ComplexHP(Real::of_si(2, 192), Real::of_si(7, 192)), pc128)) >= 110);
}

TEST_CASE("monotone precision: doubling bits keeps agreed digits") {
  ComplexHP s(Real::from_string("1.3", 300), Real::from_string("21.5", 300));
  CHECK(bits_agree(zeta(s, pc128), zeta(s, pc256)) >= 120);
  CHECK(bits_agree(zeta_prime(s, pc128), zeta_prime(s, pc256)) >= 116);
  CHECK(bits_agree(gamma(s, pc128), gamma(s, pc256)) >= 120);
  CHECK(bits_agree(gamma_vertical_envelope(s.re, s.im, pc128),
                   gamma_vertical_envelope(s.re, s.im, pc256)) >= 122);
}

}  // TEST_SUITE
