#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "ogf/arith.hpp"
#include "ogf/complexhp.hpp"
#include "ogf/prec.hpp"

namespace ogf {

// Evaluation point t with Re(t) > 0 inside the sector |arg t| <= pi/2 - theta.
struct EvalPoint {
  ComplexHP t;
  double theta = 0.0;

  EvalPoint(ComplexHP t_, double theta_);
};

// A complex value together with a rigorous bound on the discarded tail and
// some diagnostics about how it was produced.
struct SeriesValue {
  ComplexHP value;
  Real tail_bound;
  std::uint64_t terms_used = 0;
  std::map<std::string, std::string> wall_notes;

  explicit SeriesValue(mpfr_prec_t prec = 64) : value(prec), tail_bound(prec) {}
};

struct SeriesOptions {
  std::uint64_t memory_cap = 200'000'000;
  std::uint32_t block_size = 1u << 16;
  int threads = 0;  // 0 = automatic
  // Optional pre-built table covering at least the required truncation length.
  std::shared_ptr<const SieveTable> table;
};

// Upper bound for |sum_{n>N} a_n e^{-n x}| under the growth majorant used
// for `fn` (|a_n| <= n for everything except the prime sequence, which uses
// p_n <= n (ln n + ln ln n) for n >= 6).
Real series_tail_majorant(ArithFn fn, const Real& re_t, std::uint64_t n_terms,
                          PrecisionContext pc);

// Smallest truncation length whose tail majorant falls below `target`.
std::uint64_t series_truncation_length(ArithFn fn, double re_t, double target);

// F(t) = sum_{n>=1} a_n e^{-n t}, truncated so that the tail majorant stays
// below target_abs_err.
SeriesValue eval_exp_series(ArithFn fn, const EvalPoint& point, PrecisionContext pc,
                            const Real& target_abs_err, const SeriesOptions& opts = {});

// sum a_n z^n with z = e^{-t}; delegates to eval_exp_series via t = -log z.
SeriesValue eval_power_series(ArithFn fn, const ComplexHP& z, PrecisionContext pc,
                              const Real& target_abs_err, const SeriesOptions& opts = {});

// True iff |arg(1 - z)| <= pi/2 - theta.
bool sector_check(const ComplexHP& z, double theta);

}  // namespace ogf
