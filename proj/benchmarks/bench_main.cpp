// Hand-rolled micro-benchmarks for the hot paths: sieving, special
// functions, series summation, contour quadrature. Each case reports
// wall time per operation; not wired into ctest.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "ogf/arith.hpp"
#include "ogf/mellin.hpp"
#include "ogf/series.hpp"
#include "ogf/special.hpp"

using namespace ogf;
using clock_type = std::chrono::steady_clock;

namespace {

void report(const std::string& name, int iters, std::function<void()> body) {
  // one warmup, then timed iterations
  body();
  auto t0 = clock_type::now();
  for (int i = 0; i < iters; ++i) body();
  auto t1 = clock_type::now();
  double total = std::chrono::duration<double>(t1 - t0).count();
  std::printf("%-42s %10.3f ms/op   (%d iters)\n", name.c_str(), total / iters * 1e3, iters);
}

}  // namespace

int main() {
  const PrecisionContext pc{128, 32};
  Real tol12 = Real::from_string("1e-12", 192);

  report("sieve mobius 10^7", 3, [&] { sieve(ArithFn::Mobius, 10'000'000); });
  report("sieve tau 10^6", 3, [&] { sieve(ArithFn::TauDivisors, 1'000'000); });

  ComplexHP s(Real::from_string("0.99", 192), Real::of_si(40, 192));
  report("zeta(0.99 + 40i) @128", 50, [&] { zeta(s, pc); });
  report("zeta'(2) @128", 50, [&] { zeta_prime(ComplexHP::of_si(2, 192), pc); });
  report("gamma(0.99 + 40i) @128", 200, [&] { gamma(s, pc); });
  report("euler_gamma @256", 50, [&] { euler_gamma(PrecisionContext{256, 32}); });

  EvalPoint p(ComplexHP::of_real(Real::from_string("1e-3", 192)), 0.7);
  SeriesOptions opts;
  opts.table = std::make_shared<SieveTable>(
      sieve(ArithFn::Mobius, series_truncation_length(ArithFn::Mobius, 1e-3, 1e-21)));
  report("series F_mu(1e-3), ~7e4 terms", 10,
         [&] { eval_exp_series(ArithFn::Mobius, p, pc, Real::from_string("1e-20", 192), opts); });

  EvalPoint q(ComplexHP::of_real(Real::from_string("0.1", 192)), 0.7);
  Real kappa = default_kappa(Real::from_string("0.1", 192), pc);
  report("inverse_mellin_line mobius t=0.1", 3,
         [&] { inverse_mellin_line(ArithFn::Mobius, q, kappa, pc, tol12); });

  ContourSpec spec(kappa.rounded(192), Real::of_si(10, 192));
  report("inverse_mellin_deformed mobius t=0.1 T=10", 3,
         [&] { inverse_mellin_deformed(ArithFn::Mobius, q, spec, pc, tol12); });
  report("bound_segment arc", 3,
         [&] { bound_segment(Segment::Arc, ArithFn::Mobius, q, spec, pc); });
  return 0;
}
