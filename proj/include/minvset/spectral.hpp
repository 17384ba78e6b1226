#pragma once

#include <Eigen/Dense>

#include <optional>
#include <utility>

#include "minvset/diffop.hpp"
#include "minvset/geometry.hpp"
#include "minvset/roots.hpp"

namespace minvset {

using DiffOp = DiffOperator<Complex>;

/// Relative tolerance used to declare two symbol eigenvalues equal
/// (resonance). The spectra handled here are low-degree integer
/// combinations, so a near-collision is genuine.
inline constexpr double kResonanceRel = 1e-9;

/// Matrix of T acting on C_n[x] in the monomial basis: column j holds the
/// coefficients of T(x^j) truncated to degree n. `overflow` is set when T
/// raised some monomial above degree n (nothing is dropped silently).
struct OperatorMatrix {
  Eigen::MatrixXcd entries;
  bool overflow = false;
};

OperatorMatrix matrix_on_Cn(const DiffOp& t, int n);

/// The unique monic degree-n eigenpolynomial of an exactly solvable T,
/// obtained by back-substitution down the triangular monomial-basis matrix.
/// Throws ResonantSpectrum when lambda_n collides with an earlier eigenvalue
/// (the eigenpolynomial need not be unique then) and NotExactlySolvable
/// otherwise when the precondition fails.
Poly eigenpolynomial(const DiffOp& t, int n);

/// Searches for the smallest k <= k_max with T^k = alpha^k * Id on C_n[x],
/// where alpha is the leading symbol value (T[x^n] = alpha x^n + ...).
/// Requires the restriction to be invertible and degree-preserving.
std::optional<std::pair<int, Complex>> detect_scalar_power(const DiffOp& t, int n, int k_max,
                                                           double tol);

/// Convex hull of the zero locus of the leading coefficient.
ConvexPolygon fundamental_polygon(const DiffOp& t);

}  // namespace minvset
