#include <mutex>
#include <vector>

#include "ogf/rational.hpp"

namespace ogf {

Rational rational_from_decimal(const std::string& s) {
  if (s.empty()) throw DomainError("empty number");
  if (s.find('/') != std::string::npos) return rational_from_string(s);

  auto epos = s.find_first_of("eE");
  std::string mant = s.substr(0, epos);
  long expo = 0;
  if (epos != std::string::npos) {
    try {
      expo = std::stol(s.substr(epos + 1));
    } catch (const std::exception&) {
      throw DomainError("cannot parse number '" + s + "'");
    }
  }

  auto dot = mant.find('.');
  std::string digits = mant;
  long frac_digits = 0;
  if (dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    frac_digits = static_cast<long>(mant.size() - dot - 1);
  }
  if (digits.empty() || digits == "-" || digits == "+")
    throw DomainError("cannot parse number '" + s + "'");

  Rational q = rational_from_string(digits);
  long net = expo - frac_digits;
  Rational scale(1);
  mpz_ui_pow_ui(scale.get_num_mpz_t(), 10, static_cast<unsigned long>(net < 0 ? -net : net));
  if (net >= 0)
    q *= scale;
  else
    q /= scale;
  q.canonicalize();
  return q;
}

namespace {

std::mutex g_bern_mutex;
std::vector<Rational> g_bern;  // g_bern[n] = B_n, B_1 = -1/2

// Classic recurrence: sum_{k=0}^{m} C(m+1,k) B_k = 0 for m >= 1.
void extend_bernoulli(unsigned upto) {
  if (g_bern.empty()) {
    g_bern.emplace_back(1);                 // B_0
    g_bern.emplace_back(Rational(-1, 2));   // B_1
  }
  for (unsigned m = static_cast<unsigned>(g_bern.size()); m <= upto; ++m) {
    if (m % 2 == 1) {
      g_bern.emplace_back(0);
      continue;
    }
    Rational acc(0);
    mpz_class binom;
    for (unsigned k = 0; k < m; ++k) {
      if (k > 1 && k % 2 == 1) continue;  // odd Bernoulli numbers > 1 vanish
      mpz_bin_uiui(binom.get_mpz_t(), m + 1, k);
      acc += Rational(binom) * g_bern[k];
    }
    acc /= Rational(static_cast<long>(m) + 1);
    g_bern.emplace_back(-acc);
  }
}

}  // namespace

const Rational& bernoulli_uncapped(unsigned n) {
  std::lock_guard<std::mutex> lock(g_bern_mutex);
  if (n >= g_bern.size()) extend_bernoulli(n);
  return g_bern[n];
}

Rational bernoulli(unsigned n, unsigned cap) {
  if (n > cap)
    throw DomainError("Bernoulli index " + std::to_string(n) + " exceeds cap " +
                      std::to_string(cap));
  std::lock_guard<std::mutex> lock(g_bern_mutex);
  if (n >= g_bern.size()) extend_bernoulli(n);
  return g_bern[n];
}

}  // namespace ogf
