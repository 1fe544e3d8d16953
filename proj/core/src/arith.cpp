#include "ogf/arith.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ogf/format.hpp"
#include "ogf/real.hpp"

namespace ogf {

const char* to_string(ArithFn fn) {
  switch (fn) {
    case ArithFn::Mobius: return "mobius";
    case ArithFn::MobiusAlternating: return "mobius-alternating";
    case ArithFn::Liouville: return "liouville";
    case ArithFn::LiouvilleAlternating: return "liouville-alternating";
    case ArithFn::VonMangoldt: return "vonmangoldt";
    case ArithFn::VonMangoldtMinusOne: return "vonmangoldt-minus-one";
    case ArithFn::TauDivisors: return "tau";
    case ArithFn::TwoOmega: return "two-omega";
    case ArithFn::TwoOmegaMinusTau: return "two-omega-minus-tau";
    case ArithFn::PrimeSequence: return "primes";
  }
  return "?";
}

ArithFn arith_fn_from_string(const std::string& name) {
  for (ArithFn fn : {ArithFn::Mobius, ArithFn::MobiusAlternating, ArithFn::Liouville,
                     ArithFn::LiouvilleAlternating, ArithFn::VonMangoldt,
                     ArithFn::VonMangoldtMinusOne, ArithFn::TauDivisors, ArithFn::TwoOmega,
                     ArithFn::TwoOmegaMinusTau, ArithFn::PrimeSequence})
    if (name == to_string(fn)) return fn;
  throw DomainError("unknown arithmetic function '" + name + "'");
}

void SieveTable::check_range(std::uint64_t n) const {
  if (n < 1 || n > limit_) throw RangeError("index " + std::to_string(n) + " outside sieve range");
}

std::int64_t SieveTable::value_int(std::uint64_t n) const {
  check_range(n);
  if (!small_.empty()) return small_[n];
  if (!wide_.empty()) return wide_[n];
  throw UnsupportedError("von Mangoldt values are (p,k) pairs, not integers");
}

PrimePower SieveTable::value_prime_power(std::uint64_t n) const {
  check_range(n);
  if (pp_.empty()) throw UnsupportedError("not a von Mangoldt table");
  return pp_[n];
}

std::int64_t SieveTable::prefix_sum(std::uint64_t n) const {
  if (n == 0) return 0;
  check_range(n);
  if (prefix_.empty()) throw UnsupportedError("table built without prefix sums");
  return prefix_[n];
}

namespace {

std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<std::uint64_t> primes_upto(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<char> composite(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return primes;
}

// One segmented pass shared by all factor-walking sieves. For every n in
// [lo, hi) visits (p, e) for each base prime p | n, then reports the
// leftover cofactor (> 1 means exactly one prime factor above sqrt(N)).
template <typename Visit, typename Finish>
void factor_walk(std::uint64_t lo, std::uint64_t hi, const std::vector<std::uint64_t>& base,
                 std::vector<std::uint64_t>& rem, Visit&& visit, Finish&& finish) {
  std::uint64_t len = hi - lo;
  rem.resize(len);
  for (std::uint64_t i = 0; i < len; ++i) rem[i] = lo + i;
  for (std::uint64_t p : base) {
    if (p * p >= hi && p >= hi) break;
    std::uint64_t start = ((lo + p - 1) / p) * p;
    if (start < p) start = p;
    for (std::uint64_t j = start; j < hi; j += p) {
      std::uint64_t idx = j - lo;
      std::uint32_t e = 0;
      while (rem[idx] % p == 0) {
        rem[idx] /= p;
        ++e;
      }
      if (e) visit(idx, p, e);
    }
  }
  for (std::uint64_t i = 0; i < len; ++i) finish(i, rem[i]);
}

}  // namespace

SieveTable sieve(ArithFn fn, std::uint64_t n_max, const SieveOptions& opts) {
  if (n_max < 1) throw DomainError("sieve limit must be >= 1");
  if (n_max > opts.memory_cap) throw MemoryCapError(n_max, opts.memory_cap);

  SieveTable t;
  t.fn_ = fn;
  t.limit_ = n_max;

  if (fn == ArithFn::PrimeSequence) {
    // p_n <= n (ln n + ln ln n) for n >= 6; below that a fixed bound works.
    double nd = static_cast<double>(n_max);
    std::uint64_t bound = 15;
    if (n_max >= 6) {
      double ln_n = std::log(nd);
      bound = static_cast<std::uint64_t>(nd * (ln_n + std::log(ln_n))) + 16;
    }
    t.wide_.assign(n_max + 1, 0);
    std::uint64_t count = 0;
    std::vector<char> composite(bound + 1, 0);
    for (std::uint64_t i = 2; i <= bound && count < n_max; ++i) {
      if (composite[i]) continue;
      t.wide_[++count] = static_cast<std::int64_t>(i);
      if (i * i <= bound)
        for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = 1;
    }
    if (count < n_max) throw NumericalError("prime sieve bound too small");  // unreachable
  } else {
    std::vector<std::uint64_t> base = primes_upto(isqrt_u64(n_max));
    bool small_out = fn == ArithFn::Mobius || fn == ArithFn::MobiusAlternating ||
                     fn == ArithFn::Liouville || fn == ArithFn::LiouvilleAlternating;
    bool pp_out = fn == ArithFn::VonMangoldt || fn == ArithFn::VonMangoldtMinusOne;
    if (small_out) t.small_.assign(n_max + 1, 0);
    else if (pp_out) t.pp_.assign(n_max + 1, PrimePower{});
    else t.wide_.assign(n_max + 1, 0);

    std::uint64_t seg = std::max<std::uint64_t>(opts.segment_size, 64);
    std::vector<std::uint64_t> rem;
    std::vector<std::int8_t> sign;
    std::vector<std::uint8_t> extra;
    std::vector<std::int64_t> acc;
    std::vector<std::uint64_t> firstp;

    for (std::uint64_t lo = 1; lo <= n_max; lo += seg) {
      std::uint64_t hi = std::min(n_max + 1, lo + seg);
      std::uint64_t len = hi - lo;
      switch (fn) {
        case ArithFn::Mobius:
        case ArithFn::MobiusAlternating: {
          sign.assign(len, 1);
          factor_walk(lo, hi, base, rem,
                      [&](std::uint64_t i, std::uint64_t, std::uint32_t e) {
                        if (e >= 2) sign[i] = 0;
                        else if (sign[i]) sign[i] = -sign[i];
                      },
                      [&](std::uint64_t i, std::uint64_t r) {
                        std::int8_t v = sign[i];
                        if (r > 1 && v) v = -v;
                        std::uint64_t n = lo + i;
                        if (fn == ArithFn::MobiusAlternating && n % 2 == 0) v = -v;
                        t.small_[n] = v;
                      });
          break;
        }
        case ArithFn::Liouville:
        case ArithFn::LiouvilleAlternating: {
          sign.assign(len, 1);
          factor_walk(lo, hi, base, rem,
                      [&](std::uint64_t i, std::uint64_t, std::uint32_t e) {
                        if (e & 1) sign[i] = -sign[i];
                      },
                      [&](std::uint64_t i, std::uint64_t r) {
                        std::int8_t v = sign[i];
                        if (r > 1) v = -v;
                        std::uint64_t n = lo + i;
                        if (fn == ArithFn::LiouvilleAlternating && n % 2 == 0) v = -v;
                        t.small_[n] = v;
                      });
          break;
        }
        case ArithFn::TauDivisors: {
          acc.assign(len, 1);
          factor_walk(lo, hi, base, rem,
                      [&](std::uint64_t i, std::uint64_t, std::uint32_t e) { acc[i] *= e + 1; },
                      [&](std::uint64_t i, std::uint64_t r) {
                        t.wide_[lo + i] = r > 1 ? acc[i] * 2 : acc[i];
                      });
          break;
        }
        case ArithFn::TwoOmega:
        case ArithFn::TwoOmegaMinusTau: {
          acc.assign(len, 1);       // tau
          extra.assign(len, 0);     // omega
          factor_walk(lo, hi, base, rem,
                      [&](std::uint64_t i, std::uint64_t, std::uint32_t e) {
                        acc[i] *= e + 1;
                        ++extra[i];
                      },
                      [&](std::uint64_t i, std::uint64_t r) {
                        std::int64_t tau = r > 1 ? acc[i] * 2 : acc[i];
                        int omega = extra[i] + (r > 1 ? 1 : 0);
                        std::int64_t two_pow = std::int64_t{1} << omega;
                        t.wide_[lo + i] = fn == ArithFn::TwoOmega ? two_pow : two_pow - tau;
                      });
          break;
        }
        case ArithFn::VonMangoldt:
        case ArithFn::VonMangoldtMinusOne: {
          extra.assign(len, 0);     // number of distinct primes seen (capped at 2)
          acc.assign(len, 0);       // total exponent of the first prime
          firstp.assign(len, 0);
          factor_walk(lo, hi, base, rem,
                      [&](std::uint64_t i, std::uint64_t p, std::uint32_t e) {
                        if (extra[i] == 0) {
                          firstp[i] = p;
                          acc[i] = e;
                        }
                        if (extra[i] < 2) ++extra[i];
                      },
                      [&](std::uint64_t i, std::uint64_t r) {
                        std::uint64_t n = lo + i;
                        if (n == 1) return;
                        int distinct = extra[i] + (r > 1 ? 1 : 0);
                        if (distinct == 1) {
                          if (r > 1)
                            t.pp_[n] = PrimePower{r, 1};
                          else
                            t.pp_[n] = PrimePower{firstp[i], static_cast<std::uint32_t>(acc[i])};
                        }
                      });
          break;
        }
        default: break;
      }
    }
  }

  if (opts.prefix_sums) {
    if (!t.pp_.empty())
      throw UnsupportedError("prefix sums are defined only for integer-valued functions");
    t.prefix_.assign(n_max + 1, 0);
    for (std::uint64_t n = 1; n <= n_max; ++n)
      t.prefix_[n] = t.prefix_[n - 1] + (t.small_.empty() ? t.wide_[n] : t.small_[n]);
  }
  return t;
}

FactorList factorize(std::uint64_t n) {
  if (n < 1) throw DomainError("factorize: n must be >= 1");
  FactorList f;
  f.n = n;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p) continue;
    std::uint32_t e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    f.factors.emplace_back(p, e);
  }
  if (m > 1) f.factors.emplace_back(m, 1);
  return f;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2))
    if (n % p == 0) return false;
  return true;
}

std::uint64_t nth_prime_naive(std::uint64_t n) {
  if (n < 1) throw DomainError("nth_prime: n must be >= 1");
  std::uint64_t count = 0;
  for (std::uint64_t c = 2;; c += (c == 2 ? 1 : 2))
    if (is_prime_u64(c) && ++count == n) return c;
}

std::int64_t value(ArithFn fn, std::uint64_t n) {
  if (n < 1) throw DomainError("value: n must be >= 1");
  if (fn == ArithFn::PrimeSequence) return static_cast<std::int64_t>(nth_prime_naive(n));
  FactorList f = factorize(n);
  auto omega = static_cast<int>(f.factors.size());
  std::uint64_t big_omega = 0;
  std::int64_t tau = 1;
  bool squarefree = true;
  for (auto& [p, e] : f.factors) {
    (void)p;
    big_omega += e;
    tau *= e + 1;
    if (e > 1) squarefree = false;
  }
  std::int64_t r;
  switch (fn) {
    case ArithFn::Mobius:
    case ArithFn::MobiusAlternating:
      r = squarefree ? (big_omega % 2 ? -1 : 1) : 0;
      break;
    case ArithFn::Liouville:
    case ArithFn::LiouvilleAlternating:
      r = big_omega % 2 ? -1 : 1;
      break;
    case ArithFn::TauDivisors:
      return tau;
    case ArithFn::TwoOmega:
      return std::int64_t{1} << omega;
    case ArithFn::TwoOmegaMinusTau:
      return (std::int64_t{1} << omega) - tau;
    default:
      throw UnsupportedError("value: use value_prime_power_at for the von Mangoldt family");
  }
  if ((fn == ArithFn::MobiusAlternating || fn == ArithFn::LiouvilleAlternating) && n % 2 == 0)
    r = -r;
  return r;
}

PrimePower value_prime_power_at(std::uint64_t n) {
  if (n < 1) throw DomainError("value: n must be >= 1");
  FactorList f = factorize(n);
  if (f.factors.size() == 1) return PrimePower{f.factors[0].first, f.factors[0].second};
  return PrimePower{};
}

std::int64_t mertens(const SieveTable& table, std::uint64_t x) {
  if (table.fn() != ArithFn::Mobius) throw UnsupportedError("mertens needs a Mobius table");
  return table.prefix_sum(x);
}

void export_csv(const SieveTable& table, std::ostream& out, PrecisionContext pc) {
  if (table.stores_prime_powers()) {
    out << "n,log_p_numeric,p,k\n";
    bool minus_one = table.fn() == ArithFn::VonMangoldtMinusOne;
    for (std::uint64_t n = 1; n <= table.limit(); ++n) {
      PrimePower pp = table.value_prime_power(n);
      Real v(pc.work());
      if (pp.p) mpfr_log_ui(v.raw(), pp.p, MPFR_RNDN);
      if (minus_one) v -= Real::of_si(1, pc.work());
      out << n << ',' << format_real(v.rounded(pc.bits), pc.bits) << ',' << pp.p << ',' << pp.k
          << '\n';
    }
    return;
  }
  out << (table.has_prefix_sums() ? "n,value,prefix\n" : "n,value\n");
  for (std::uint64_t n = 1; n <= table.limit(); ++n) {
    out << n << ',' << table.value_int(n);
    if (table.has_prefix_sums()) out << ',' << table.prefix_sum(n);
    out << '\n';
  }
}

}  // namespace ogf
