#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "minvset/roots.hpp"
#include "minvset/spectral.hpp"

namespace minvset {

/// z |-> a z + b
struct AffineMap {
  Complex a;
  Complex b;

  Complex operator()(const Complex& z) const { return a * z + b; }
};

enum class OnePointKind { SoleIntersection, FullFiber };

/// Outcome of the 1-point invariant set search for Psi_{T,n}.
///
/// infinite_family is set when Psi has the structural form Phi(z)(x-z)^l, in
/// which case every point of the plane is a 1-point invariant set and
/// family_data carries (l, Phi). Otherwise `points` lists the finitely many
/// 1-point sets (at most n), each tagged with how it arises.
struct OnePointReport {
  struct Point {
    Complex z0;
    OnePointKind kind = OnePointKind::SoleIntersection;
    double worst_offset = 0.0;  // slice-root distance to z0; 0 for full fibers
  };
  std::vector<Point> points;
  bool infinite_family = false;
  std::optional<std::pair<int, Poly>> family_data;  // (l, Phi)
};

/// Searches for 1-point invariant sets of T in degree n via the diagonal of
/// the curve Psi_{T,n} = 0. Throws ConstantPsi when Psi is constant.
OnePointReport one_point_sets(const DiffOp& t, int n, double tol);

/// Same search, starting from an explicit bivariate polynomial.
OnePointReport one_point_sets(const BiPoly& b, double tol);

/// (U, V) with B = z U(x) - V(x), when B is linear in z. Also reports
/// whether U and V share a zero (matched within tol).
struct LinearSlice {
  Poly u;
  Poly v;
  bool common_zero = false;
};
std::optional<LinearSlice> extract_linear_in_z(const BiPoly& b, double tol = 1e-9);

/// (U, V) with B = x U(z) - V(z), when B is linear in x.
std::optional<LinearSlice> extract_linear_in_x(const BiPoly& b, double tol = 1e-9);

/// The exactly solvable operator whose degree-k curve is
/// scale * prod_j (x - (a_j z + b_j)); its Hutchinson dynamics in degree k
/// is exactly the affine IFS {z -> a_j z + b_j}.
DiffOp operator_from_affine_ifs(const std::vector<AffineMap>& maps, const Complex& scale);

/// Tries to split the curve B(x,z)=0 into n affine branches x = a z + b by
/// sampling slices along a circle, matching roots between consecutive
/// samples, and least-squares fitting each branch. Empty when any slice
/// degenerates or a branch is not affine within tol.
std::optional<std::vector<AffineMap>> detect_affine_ifs(const BiPoly& b, int n, double tol);

/// U_alpha, V_alpha with T((x-alpha)^(n-1)(x-z)) = z U_alpha - V_alpha.
std::pair<Poly, Poly> extract_pinned_rational(const DiffOp& t, int n, const Complex& alpha);

}  // namespace minvset
