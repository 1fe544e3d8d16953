#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ogf/errors.hpp"
#include "ogf/prec.hpp"

namespace ogf {

enum class ArithFn {
  Mobius,
  MobiusAlternating,
  Liouville,
  LiouvilleAlternating,
  VonMangoldt,
  VonMangoldtMinusOne,
  TauDivisors,
  TwoOmega,
  TwoOmegaMinusTau,
  PrimeSequence,
};

const char* to_string(ArithFn fn);
ArithFn arith_fn_from_string(const std::string& name);

// Exact representation of Lambda(n): n = p^k, or p == 0 when Lambda(n) = 0.
struct PrimePower {
  std::uint64_t p = 0;
  std::uint32_t k = 0;
};

struct FactorList {
  std::uint64_t n = 0;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> factors;  // (prime, exponent), primes increasing
};

struct SieveOptions {
  std::uint64_t memory_cap = 200'000'000;  // entries
  std::uint64_t segment_size = 1ull << 22;
  bool prefix_sums = false;
};

// Exact values of one arithmetic function on 1..N. Immutable once built.
class SieveTable {
 public:
  ArithFn fn() const { return fn_; }
  std::uint64_t limit() const { return limit_; }
  bool has_prefix_sums() const { return !prefix_.empty(); }

  // Integer value for the integer-valued functions (everything except the
  // von Mangoldt pair representation).
  std::int64_t value_int(std::uint64_t n) const;
  // (p, k) representation for VonMangoldt / VonMangoldtMinusOne.
  PrimePower value_prime_power(std::uint64_t n) const;

  std::int64_t prefix_sum(std::uint64_t n) const;

  bool stores_prime_powers() const { return !pp_.empty(); }

 private:
  friend SieveTable sieve(ArithFn, std::uint64_t, const SieveOptions&);
  void check_range(std::uint64_t n) const;

  ArithFn fn_ = ArithFn::Mobius;
  std::uint64_t limit_ = 0;
  std::vector<std::int8_t> small_;   // mu / lambda family
  std::vector<std::int64_t> wide_;   // tau / 2^omega / primes
  std::vector<PrimePower> pp_;       // Lambda family
  std::vector<std::int64_t> prefix_;
};

SieveTable sieve(ArithFn fn, std::uint64_t n_max, const SieveOptions& opts = {});

// Point oracle via trial division; independent of the sieve by construction.
// Integer-valued functions only (use value_prime_power_at for Lambda).
std::int64_t value(ArithFn fn, std::uint64_t n);
PrimePower value_prime_power_at(std::uint64_t n);

FactorList factorize(std::uint64_t n);
bool is_prime_u64(std::uint64_t n);
std::uint64_t nth_prime_naive(std::uint64_t n);

// M(x) = sum_{n<=x} mu(n); requires a Mobius table built with prefix sums.
std::int64_t mertens(const SieveTable& table, std::uint64_t x);

// CSV export. Integer-valued tables emit `n,value[,prefix]`; the Lambda
// family emits `n,log_p_numeric,p,k` with log p evaluated at `pc`.
void export_csv(const SieveTable& table, std::ostream& out, PrecisionContext pc = {});

}  // namespace ogf
