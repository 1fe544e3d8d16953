#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ogf/complexhp.hpp"
#include "ogf/errors.hpp"

namespace ogf {

struct QuadratureOptions {
  int base_order = 16;       // first Gauss-Legendre order tried per panel
  int max_order = 64;        // orders double up to this before a panel splits
  int max_subdivisions = 64; // total extra panels allowed from splitting
  int threads = 0;           // 0 = automatic, node evaluations run in parallel
};

struct QuadratureResult {
  ComplexHP value;
  Real error_estimate;       // sum of per-panel |G_2n - G_n|
  std::uint64_t evaluations = 0;
  std::uint64_t panels = 0;

  explicit QuadratureResult(mpfr_prec_t p) : value(p), error_estimate(p) {}
};

// Gauss-Legendre nodes/weights on (-1, 1) at the requested precision.
// Computed once per (order, precision) and cached.
struct GLRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};
const GLRule& gauss_legendre_rule(int order, mpfr_prec_t prec);

// Integrates f over [breakpoints.front(), breakpoints.back()], treating each
// consecutive pair as an initial panel. Panels refine by order doubling until
// two successive rules agree to their share of abs_tol, then by bisection.
// Throws QuadratureError when the subdivision budget runs out.
QuadratureResult integrate_adaptive(const std::function<ComplexHP(const Real&)>& f,
                                    const std::vector<Real>& breakpoints, const Real& abs_tol,
                                    mpfr_prec_t wp, const QuadratureOptions& opts = {});

}  // namespace ogf
