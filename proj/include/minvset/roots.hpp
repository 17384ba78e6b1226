#pragma once

#include <vector>

#include "minvset/bipoly.hpp"
#include "minvset/poly.hpp"
#include "minvset/scalar.hpp"

namespace minvset {

using Poly = Polynomial<Complex>;
using BiPoly = BivariatePoly<Complex>;

/// Zero locus of one polynomial: the full multiset of roots in canonical
/// lexicographic (re, im) order, plus the worst residual |p(r)| divided by
/// the leading coefficient modulus.
struct RootSet {
  std::vector<Complex> roots;
  double residual = 0.0;
};

/// All complex roots of p, multiplicities included.
///
/// Aberth-Ehrlich simultaneous iteration started from a perturbed circle,
/// with a balanced companion-matrix eigensolve as fallback when the
/// iteration stalls. Roots closer than sqrt(tol) are merged into clusters
/// (each cluster reports its centroid with multiplicity), which is how
/// multiple roots come out well-conditioned.
///
/// Throws ZeroPolynomial for the identically zero input and NonConvergence
/// (carrying the best iterate) if even the fallback leaves a bad residual.
RootSet poly_roots(const Poly& p, double tol = 1e-12);

/// Convenience: roots only.
std::vector<Complex> roots_of(const Poly& p, double tol = 1e-12);

}  // namespace minvset
