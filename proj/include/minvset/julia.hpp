#pragma once

#include <string>
#include <vector>

#include "minvset/dynamics.hpp"

namespace minvset {

/// R(x) = V(x) / U(x). Construction cancels common roots of V and U (matched
/// within a tolerance) and records that it did.
struct RationalMap {
  Poly num;  // V
  Poly den;  // U
  bool cancelled = false;

  int degree() const { return std::max(num.degree(), den.degree()); }
};

RationalMap make_rational(const Poly& v, const Poly& u, double tol = 1e-9);

/// A point of the Riemann sphere.
struct ExtPoint {
  Complex value{};
  bool at_infinity = false;
};

struct ExceptionalityReport {
  bool nonexceptional = false;
  std::vector<ExtPoint> exceptional_points;  // at most two exist
  std::string reason;
};

/// Extracts R with T(x - z) = z U(x) - V(x), i.e. U = -Q_0 and
/// V = -(Q_1 + x Q_0). Throws DegenerateImage when the image does not
/// depend on z.
RationalMap rational_from_operator(const DiffOp& t);

/// Decides non-exceptionality: the exceptional set must be contained in
/// {infinity}, and either R(inf) = inf or the preimage of R(inf) (minus inf)
/// differs from {R(inf)}. Exceptional points are found as fixed or swapped
/// pairs among the points with one-element preimage. Throws DegreeTooLow for
/// maps of degree < 2.
ExceptionalityReport is_nonexceptional(const RationalMap& r, double tol = 1e-9);

struct JuliaCloud {
  PointCloud cloud;
  Complex start{};
  bool fallback_start = false;  // no repelling fixed point was available
};

/// Plane Julia set by seeded random inverse iteration: from a repelling
/// fixed point (or a flagged fallback start), repeatedly solve
/// V(x) - z U(x) = 0 and pick one root at random; a 64-step burn-in is
/// discarded and walkers run until the cloud gains no new eps-cells for
/// cfg.stall_window rounds.
JuliaCloud julia_backward(const RationalMap& r, const IterationConfig& cfg);

struct CrossValidation {
  double hausdorff_distance = 0.0;
  IterationReport engine;
  JuliaCloud backward;
  std::string report;
};

/// Hausdorff distance between the degree-1 Hutchinson engine cloud and the
/// inverse-iteration Julia cloud for the same operator.
CrossValidation cross_validate_m1(const DiffOp& t, const IterationConfig& cfg);

}  // namespace minvset
