#pragma once

#include <cstdint>
#include <vector>

#include "ogf/arith.hpp"
#include "ogf/rational.hpp"
#include "ogf/series.hpp"

namespace ogf {

// Parameters of the error envelope E(t); exact rationals so that the same
// instantiation evaluates identically at every precision.
struct EnvelopeParams {
  Rational b = Rational(203, 10000);
  Rational alpha = Rational(2, 3);
  Rational beta = Rational(1, 3);
  Rational epsilon = Rational(0);
};

void validate(const EnvelopeParams& p);

// (1/t) exp( -(b - eps) log(1/t) / ((log log 1/t)^alpha (log log log 1/t)^beta) ).
// Defined where the triple logarithm is positive, i.e. t < e^{-e}.
Real error_envelope_E(const Real& t_abs, const EnvelopeParams& params, PrecisionContext pc);

// x exp( -c (log x)^{3/5} / (log log x)^{1/5} ), for log log x > 0.
Real walfisz_envelope(const Real& x, const Real& c, PrecisionContext pc);

// (1/t) exp( -c (log 1/t)^{3/5} / (log log 1/t)^{1/5} ).
Real abelian_mu_envelope(const Real& t_abs, const Real& c, PrecisionContext pc);

// Slowly varying factor (log x)^k (log log x)^m.
struct SlowlyVarying {
  unsigned log_pow = 0;
  unsigned loglog_pow = 0;
};

// Gamma(alpha+1) / (1-z)^{alpha+1} * ell(1/(1-z)) for real z in (0,1).
Real abelian_transfer(const Real& alpha, SlowlyVarying ell, const Real& z, PrecisionContext pc);

// T = log(1/|t|) / (log log 1/|t|)^alpha.
Real choose_T(const Real& t_abs, const Real& alpha, PrecisionContext pc);

// Signed coefficient of t^n in the divisor-series expansion
//   (1/t) log(1/t) + gamma/t + sum_n c_n t^n,
// c_n = (-1)^n B_{n+1}^2 / ((n+1)! (n+1)). The alternating sign matches the
// residues of Gamma(s) zeta(s)^2 at s = -n (only n = 0 and odd n survive).
Rational tau_expansion_coefficient(unsigned n);

// Partial expansion through t^{K-1}.
ComplexHP tau_expansion(const ComplexHP& t, unsigned k_terms, PrecisionContext pc);

enum class MainTermSource { PaperLiteral, ResidueDerived };

// Main term of sum a_n z^n near z = 1. The "literal" source is the
// classical displayed form; the residue-derived source comes from the
// Laurent data of D(s) Gamma(s) t^{-s} at s = 1 (they disagree for 2^omega).
ComplexHP corollary_main_term(ArithFn fn, const ComplexHP& z, MainTermSource source,
                              PrecisionContext pc);

// eval_power_series(fn, z) - corollary_main_term(fn, z).
SeriesValue corollary_residual(ArithFn fn, const ComplexHP& z, MainTermSource source,
                               PrecisionContext pc, const Real& target_abs_err,
                               const SeriesOptions& opts = {});

struct FakeAsymRow {
  Real t, F, F_plus_2, scaled;  // scaled = (F + 2) sqrt(t)
};
std::vector<FakeAsymRow> fake_asymptotics_probe(const std::vector<Real>& t_grid,
                                                PrecisionContext pc,
                                                const SeriesOptions& opts = {});

struct RhWindowRow {
  Real x, ratio;
};
struct RhWindowResult {
  std::vector<RhWindowRow> series_side;   // (z, |F_mu(z)| (1-z)^eta)
  std::vector<RhWindowRow> mertens_side;  // (x, |M(x)| / x^eta)
};
RhWindowResult rh_window_probe(const Real& eta, const std::vector<Real>& z_grid,
                               PrecisionContext pc, std::uint64_t mertens_limit = 1'000'000,
                               const SeriesOptions& opts = {});

struct DelangeRow {
  Real z, F, scaled;  // scaled = F sqrt(1-z)
};
std::vector<DelangeRow> delange_probe(const std::vector<Real>& z_grid, PrecisionContext pc,
                                      const SeriesOptions& opts = {});

struct PrimeAbelianRow {
  Real z, series, abelian, ratio;
};
std::vector<PrimeAbelianRow> prime_abelian_probe(const std::vector<Real>& z_grid,
                                                 PrecisionContext pc,
                                                 const SeriesOptions& opts = {});

// Largest c such that |M(x)| <= walfisz_envelope(x, c) for 3 <= x <= x_max
// (reported, never asserted a priori; the constant is not specified).
Real fit_walfisz_constant(const SieveTable& mobius_prefix, std::uint64_t x_max,
                          PrecisionContext pc);

// Smallest L = log(1/t) at which E(t) falls below the Abelian envelope with
// constant c; reports L* and log10(1/t*).
struct CrossoverResult {
  Real l_star;
  Real log10_inv_t_star;
};
CrossoverResult envelope_crossover(const Real& c, const EnvelopeParams& params,
                                   PrecisionContext pc);

}  // namespace ogf
