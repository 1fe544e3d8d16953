#include <doctest.h>

#include <sstream>

#include "ogf/arith.hpp"
#include "support.hpp"

using namespace ogf;
using namespace testsupport;

TEST_SUITE("arith") {

TEST_CASE("mobius values for n = 1..10") {
  SieveTable t = sieve(ArithFn::Mobius, 10);
  std::int64_t expect[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1};
  for (std::uint64_t n = 1; n <= 10; ++n) CHECK(t.value_int(n) == expect[n - 1]);
  CHECK(sieve(ArithFn::Mobius, 1).value_int(1) == 1);
}

TEST_CASE("point values from the factorization oracle") {
  CHECK(sieve(ArithFn::TauDivisors, 12).value_int(12) == 6);
  CHECK(divisors_naive(12).size() == 6);
  PrimePower pp = sieve(ArithFn::VonMangoldt, 9).value_prime_power(9);
  CHECK(pp.p == 3);
  CHECK(pp.k == 2);
  CHECK(value(ArithFn::Liouville, 12) == -1);  // Omega(12) = 3
  CHECK(value(ArithFn::Mobius, 4) == 0);
  CHECK(value(ArithFn::TwoOmega, 1) == 1);
}

TEST_CASE("mertens") {
  SieveOptions so;
  so.prefix_sums = true;
  SieveTable t = sieve(ArithFn::Mobius, 100, so);
  CHECK(mertens(t, 1) == 1);

  std::int64_t m10 = 0, m100 = 0;
  for (std::uint64_t n = 1; n <= 100; ++n) {
    if (n <= 10) m10 += value(ArithFn::Mobius, n);
    m100 += value(ArithFn::Mobius, n);
  }
  CHECK(m10 == -1);
  CHECK(m100 == 1);
  CHECK(mertens(t, 10) == m10);
  CHECK(mertens(t, 100) == m100);
  CHECK_THROWS_AS(mertens(t, 101), RangeError);
  CHECK_THROWS_AS(mertens(sieve(ArithFn::Liouville, 10), 5), UnsupportedError);
}

TEST_CASE("divisor-sum identities up to 10^4") {
  const std::uint64_t N = 10000;
  SieveTable mob = sieve(ArithFn::Mobius, N);
  SieveTable lam = sieve(ArithFn::VonMangoldt, N);
  for (std::uint64_t n = 1; n <= N; ++n) {
    std::int64_t mu_sum = 0;
    for (std::uint64_t d : divisors_naive(n)) mu_sum += mob.value_int(d);
    CHECK(mu_sum == (n == 1 ? 1 : 0));
  }
  // sum_{d|n} Lambda(d) = log n, exactly in (p, k) form: the prime-power
  // divisors p^j of n contribute e_p(n) copies of log p for each prime p.
  for (std::uint64_t n = 2; n <= N; ++n) {
    FactorList f = factorize(n);
    std::uint64_t reconstructed = 1;
    for (std::uint64_t d : divisors_naive(n)) {
      PrimePower pp = lam.value_prime_power(d);
      if (pp.p) reconstructed *= pp.p;
    }
    std::uint64_t expect = 1;
    for (auto& [p, e] : f.factors)
      for (std::uint32_t j = 0; j < e; ++j) expect *= p;
    CHECK(reconstructed == expect);
    CHECK(expect == n);
  }
}

TEST_CASE("liouville, mobius, squarefree relation up to 10^4") {
  const std::uint64_t N = 10000;
  SieveTable mob = sieve(ArithFn::Mobius, N);
  SieveTable liou = sieve(ArithFn::Liouville, N);
  for (std::uint64_t n = 1; n <= N; ++n) {
    FactorList f = factorize(n);
    std::uint64_t big_omega = 0;
    bool squarefree = true;
    for (auto& [p, e] : f.factors) {
      (void)p;
      big_omega += e;
      if (e > 1) squarefree = false;
    }
    CHECK(liou.value_int(n) == (big_omega % 2 ? -1 : 1));
    if (squarefree)
      CHECK(mob.value_int(n) == liou.value_int(n));
    else
      CHECK(mob.value_int(n) == 0);
  }
}

TEST_CASE("multiplicativity on coprime pairs") {
  auto rng = test_rng(3);
  std::uniform_int_distribution<std::uint64_t> dist(2, 99);
  auto gcd = [](std::uint64_t a, std::uint64_t b) {
    while (b) {
      auto t = a % b;
      a = b;
      b = t;
    }
    return a;
  };
  for (ArithFn fn : {ArithFn::Mobius, ArithFn::Liouville, ArithFn::TauDivisors,
                     ArithFn::TwoOmega}) {
    int done = 0;
    while (done < 40) {
      std::uint64_t m = dist(rng), n = dist(rng);
      if (gcd(m, n) != 1 || m * n > 10000) continue;
      CHECK(value(fn, m * n) == value(fn, m) * value(fn, n));
      ++done;
    }
  }
}

TEST_CASE("growth bounds used by the series tails") {
  SieveTable tau = sieve(ArithFn::TauDivisors, 10000);
  SieveTable two = sieve(ArithFn::TwoOmega, 10000);
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    CHECK(two.value_int(n) <= tau.value_int(n));
    CHECK(tau.value_int(n) <= static_cast<std::int64_t>(n));
  }
  SieveTable lam = sieve(ArithFn::VonMangoldt, 10000);
  for (std::uint64_t n = 2; n <= 10000; ++n) {
    PrimePower pp = lam.value_prime_power(n);
    if (!pp.p) continue;
    std::uint64_t pk = 1;
    for (std::uint32_t j = 0; j < pp.k; ++j) pk *= pp.p;
    CHECK(pk == n);  // so log p = (log n)/k <= log n
  }
}

TEST_CASE("sieve equals the trial-division oracle on 1..10^4") {
  const std::uint64_t N = 10000;
  for (ArithFn fn : {ArithFn::Mobius, ArithFn::MobiusAlternating, ArithFn::Liouville,
                     ArithFn::LiouvilleAlternating, ArithFn::TauDivisors, ArithFn::TwoOmega,
                     ArithFn::TwoOmegaMinusTau}) {
    SieveTable t = sieve(fn, N);
    for (std::uint64_t n = 1; n <= N; ++n) CHECK(t.value_int(n) == value(fn, n));
  }
  SieveTable lam = sieve(ArithFn::VonMangoldt, N);
  for (std::uint64_t n = 1; n <= N; ++n) {
    PrimePower a = lam.value_prime_power(n);
    PrimePower b = value_prime_power_at(n);
    CHECK(a.p == b.p);
    CHECK(a.k == b.k);
  }
  SieveTable primes = sieve(ArithFn::PrimeSequence, 2000);
  auto naive = primes_naive(2000);
  CHECK(primes.value_int(1) == 2);
  for (std::uint64_t n = 1; n <= 2000; ++n)
    CHECK(primes.value_int(n) == static_cast<std::int64_t>(naive[n - 1]));
}

TEST_CASE("alternating variants flip the even-index sign") {
  SieveTable mob = sieve(ArithFn::Mobius, 300);
  SieveTable alt = sieve(ArithFn::MobiusAlternating, 300);
  for (std::uint64_t n = 1; n <= 300; ++n)
    CHECK(alt.value_int(n) == (n % 2 ? mob.value_int(n) : -mob.value_int(n)));
  SieveTable liou = sieve(ArithFn::Liouville, 300);
  SieveTable lalt = sieve(ArithFn::LiouvilleAlternating, 300);
  for (std::uint64_t n = 1; n <= 300; ++n)
    CHECK(lalt.value_int(n) == (n % 2 ? liou.value_int(n) : -liou.value_int(n)));
}

TEST_CASE("minus-one variant shares the prime-power representation") {
  SieveTable lam = sieve(ArithFn::VonMangoldt, 1000);
  SieveTable lam1 = sieve(ArithFn::VonMangoldtMinusOne, 1000);
  for (std::uint64_t n = 1; n <= 1000; ++n) {
    CHECK(lam1.value_prime_power(n).p == lam.value_prime_power(n).p);
    CHECK(lam1.value_prime_power(n).k == lam.value_prime_power(n).k);
  }
}

TEST_CASE("factorize invariants on random numbers") {
  auto rng = test_rng(4);
  std::uniform_int_distribution<std::uint64_t> dist(2, 5'000'000);
  for (int i = 0; i < 200; ++i) {
    std::uint64_t n = dist(rng);
    FactorList f = factorize(n);
    std::uint64_t prod = 1;
    std::uint64_t prev = 0;
    for (auto& [p, e] : f.factors) {
      CHECK(p > prev);
      CHECK(is_prime_u64(p));
      prev = p;
      for (std::uint32_t j = 0; j < e; ++j) prod *= p;
    }
    CHECK(prod == n);
  }
}

TEST_CASE("segmented sieving matches the one-shot run") {
  SieveOptions tiny;
  tiny.segment_size = 64;
  for (ArithFn fn : {ArithFn::Mobius, ArithFn::Liouville, ArithFn::TauDivisors,
                     ArithFn::TwoOmegaMinusTau}) {
    SieveTable a = sieve(fn, 5000, tiny);
    SieveTable b = sieve(fn, 5000);
    for (std::uint64_t n = 1; n <= 5000; ++n) CHECK(a.value_int(n) == b.value_int(n));
  }
  SieveTable a = sieve(ArithFn::VonMangoldt, 5000, tiny);
  SieveTable b = sieve(ArithFn::VonMangoldt, 5000);
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    CHECK(a.value_prime_power(n).p == b.value_prime_power(n).p);
    CHECK(a.value_prime_power(n).k == b.value_prime_power(n).k);
  }
}

TEST_CASE("memory cap") {
  SieveOptions so;
  so.memory_cap = 50;
  try {
    sieve(ArithFn::Mobius, 100, so);
    FAIL("expected MemoryCapError");
  } catch (const MemoryCapError& e) {
    CHECK(e.required_terms() == 100);
    CHECK(e.cap() == 50);
  }
}

TEST_CASE("prefix sums recurrence") {
  SieveOptions so;
  so.prefix_sums = true;
  SieveTable t = sieve(ArithFn::Liouville, 500, so);
  CHECK(t.prefix_sum(0) == 0);
  for (std::uint64_t n = 1; n <= 500; ++n)
    CHECK(t.prefix_sum(n) == t.prefix_sum(n - 1) + t.value_int(n));
  CHECK_THROWS_AS(sieve(ArithFn::VonMangoldt, 10, so), UnsupportedError);
}

TEST_CASE("csv export") {
  std::ostringstream out;
  export_csv(sieve(ArithFn::Mobius, 3), out);
  CHECK(out.str() == "n,value\n1,1\n2,-1\n3,-1\n");

  std::ostringstream lam;
  export_csv(sieve(ArithFn::VonMangoldt, 4), lam, PrecisionContext{64, 16});
  std::string s = lam.str();
  CHECK(s.substr(0, s.find('\n')) == "n,log_p_numeric,p,k");
  CHECK(s.find("4,") != std::string::npos);
  CHECK(s.find(",2,2") != std::string::npos);  // 4 = 2^2
}

TEST_CASE("function name round trip") {
  for (ArithFn fn : {ArithFn::Mobius, ArithFn::MobiusAlternating, ArithFn::Liouville,
                     ArithFn::LiouvilleAlternating, ArithFn::VonMangoldt,
                     ArithFn::VonMangoldtMinusOne, ArithFn::TauDivisors, ArithFn::TwoOmega,
                     ArithFn::TwoOmegaMinusTau, ArithFn::PrimeSequence})
    CHECK(arith_fn_from_string(to_string(fn)) == fn);
  CHECK_THROWS_AS(arith_fn_from_string("nope"), DomainError);
}

}  // TEST_SUITE
