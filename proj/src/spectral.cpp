#include "minvset/spectral.hpp"

#include <cmath>

namespace minvset {

OperatorMatrix matrix_on_Cn(const DiffOp& t, int n) {
  OperatorMatrix out;
  out.entries = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  for (int j = 0; j <= n; ++j) {
    const Poly img = t.apply(Poly::monomial(j));
    for (int i = 0; i <= std::min(n, img.degree()); ++i) out.entries(i, j) = img.coeff(i);
    if (img.degree() > n) out.overflow = true;
  }
  return out;
}

Poly eigenpolynomial(const DiffOp& t, int n) {
  const std::vector<Complex> lambdas = symbol_eigenvalues(t, n);
  const Complex ln = lambdas[static_cast<std::size_t>(n)];
  for (int j = 0; j < n; ++j) {
    const Complex lj = lambdas[static_cast<std::size_t>(j)];
    const double scale = std::max({1.0, std::abs(ln), std::abs(lj)});
    if (std::abs(lj - ln) <= kResonanceRel * scale) {
      throw ResonantSpectrum("eigenpolynomial: lambda_" + std::to_string(j) +
                             " collides with lambda_" + std::to_string(n));
    }
  }
  const OperatorMatrix m = matrix_on_Cn(t, n);
  std::vector<Complex> p(static_cast<std::size_t>(n) + 1, Complex(0.0, 0.0));
  p[static_cast<std::size_t>(n)] = Complex(1.0, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    Complex acc(0.0, 0.0);
    for (int j = i + 1; j <= n; ++j) acc += m.entries(i, j) * p[static_cast<std::size_t>(j)];
    p[static_cast<std::size_t>(i)] = acc / (ln - lambdas[static_cast<std::size_t>(i)]);
  }
  return Poly(std::move(p));
}

std::optional<std::pair<int, Complex>> detect_scalar_power(const DiffOp& t, int n, int k_max,
                                                           double tol) {
  const OperatorMatrix m = matrix_on_Cn(t, n);
  if (m.overflow) {
    throw SingularRestriction("detect_scalar_power: T raises degree beyond n");
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(m.entries);
  if (!lu.isInvertible()) {
    throw SingularRestriction("detect_scalar_power: restriction to C_n[x] is singular");
  }
  const Complex alpha = m.entries(n, n);
  Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(n + 1, n + 1);
  Complex alpha_k(1.0, 0.0);
  for (int k = 1; k <= k_max; ++k) {
    power = power * m.entries;
    alpha_k *= alpha;
    const Eigen::MatrixXcd diff =
        power - alpha_k * Eigen::MatrixXcd::Identity(n + 1, n + 1);
    if (diff.cwiseAbs().maxCoeff() <= tol) return std::make_pair(k, alpha);
  }
  return std::nullopt;
}

ConvexPolygon fundamental_polygon(const DiffOp& t) {
  if (t.is_zero()) throw ZeroOperator();
  const Poly& qk = t.leading();
  if (qk.degree() < 1) throw ConstantLeadingCoefficient();
  return convex_hull(poly_roots(qk).roots);
}

}  // namespace minvset
