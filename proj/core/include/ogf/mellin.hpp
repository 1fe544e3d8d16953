#pragma once

#include <string>

#include "ogf/arith.hpp"
#include "ogf/quadrature.hpp"
#include "ogf/rational.hpp"
#include "ogf/series.hpp"

namespace ogf {

// Boundary parameters (alpha, beta, b, w) of the zero-free-region curve
//   g(tau) = 1 - b (log|tau|)^{-alpha} (log log|tau|)^{-beta}   for |tau| >= w,
// held constant at g(w) for |tau| <= w. Stored exactly as rationals.
struct ZeroFreeRegionSpec {
  Rational alpha = Rational(2, 3);
  Rational beta = Rational(1, 3);
  Rational b = Rational(203, 10000);
  Rational w = Rational(16);
};

void validate(const ZeroFreeRegionSpec& region);

Real g_of_tau(const ZeroFreeRegionSpec& region, const Real& tau, PrecisionContext pc);
Real g_prime_of_tau(const ZeroFreeRegionSpec& region, const Real& tau, PrecisionContext pc);

// The deformed contour of the proof: vertical rays at Re(s) = kappa above
// |Im| = T, horizontal bridges at +-iT, and the arc sigma = g(tau) between.
struct ContourSpec {
  Real kappa;
  Real T;
  ZeroFreeRegionSpec region;
  QuadratureOptions quad;
  double nu = 2.0;
  bool unsafe_tall = false;

  ContourSpec(Real kappa_, Real T_) : kappa(std::move(kappa_)), T(std::move(T_)) {}
};

// kappa = 1 + 1/log(1/|t|), the proof's choice (it uses |t| < 1).
Real default_kappa(const Real& t_abs, PrecisionContext pc);

struct DirichletClosedForm {
  ArithFn fn;
  const char* formula;
  double nu;                 // growth exponent assumed in the majorants
  bool analytic_in_region;   // pole-free on sigma >= g(tau), in particular at s = 1
  bool has_closed_form;
};

const DirichletClosedForm& closed_form_for(ArithFn fn);

// Closed-form Dirichlet generating function D(s) for `fn`.
ComplexHP dirichlet_D(ArithFn fn, const ComplexHP& s, PrecisionContext pc);

// (1/2 pi i) Integral over the vertical line Re(s) = kappa of D(s) Gamma(s) t^{-s} ds.
SeriesValue inverse_mellin_line(ArithFn fn, const EvalPoint& point, const Real& kappa,
                                PrecisionContext pc, const Real& target_abs_err,
                                const QuadratureOptions& quad = {});

struct DeformedResult {
  SeriesValue total;
  ComplexHP seg_vert, seg_hor, seg_arc;

  explicit DeformedResult(mpfr_prec_t p) : total(p), seg_vert(p), seg_hor(p), seg_arc(p) {}
};

// Same value over the deformed contour, with the three segment contributions
// reported separately. Requires an analytic-in-region function and T <= 14
// unless the unsafe override is set (14 keeps the contour rectangle below the
// first nontrivial zeta zero at height ~14.1347).
DeformedResult inverse_mellin_deformed(ArithFn fn, const EvalPoint& point,
                                       const ContourSpec& spec, PrecisionContext pc,
                                       const Real& target_abs_err);

enum class Segment { Vert, Hor, Arc };

Segment segment_from_string(const std::string& s);
const char* to_string(Segment s);

// Explicit numeric majorant for one contour segment: Stirling envelope x
// |t^{-s}| bound x C_D (1+|tau|)^nu, integrated along the segment.
Real bound_segment(Segment which, ArithFn fn, const EvalPoint& point, const ContourSpec& spec,
                   PrecisionContext pc);

// C_D = 2 x max sampled |D(s)| / (1+|tau|)^nu over the contour (deterministic
// sampling). Recorded in run reports; shared by the bounds and the
// truncation-height choice.
Real calibrate_cd(ArithFn fn, const EvalPoint& point, const ContourSpec& spec,
                  PrecisionContext pc);

}  // namespace ogf
