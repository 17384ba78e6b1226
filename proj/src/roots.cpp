#include "minvset/roots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace minvset {
namespace {

// Evaluates p and p' at x in one pass.
std::pair<Complex, Complex> eval_with_derivative(const std::vector<Complex>& c, Complex x) {
  Complex p(0.0, 0.0), dp(0.0, 0.0);
  for (std::size_t i = c.size(); i-- > 0;) {
    dp = dp * x + p;
    p = p * x + c[i];
  }
  return {p, dp};
}

double fujiwara_bound(const std::vector<Complex>& monic) {
  const int d = static_cast<int>(monic.size()) - 1;
  double b = 0.0;
  for (int i = 0; i < d; ++i) {
    double m = std::abs(monic[static_cast<std::size_t>(i)]);
    if (i == 0) m *= 0.5;
    if (m > 0.0) b = std::max(b, std::pow(m, 1.0 / (d - i)));
  }
  return 2.0 * b;
}

// Stable quadratic formula; picks the sqrt branch that avoids cancellation.
void solve_quadratic(Complex a, Complex b, Complex c, Complex& x0, Complex& x1) {
  const Complex disc = std::sqrt(b * b - 4.0 * a * c);
  Complex q;
  if (std::real(std::conj(b) * disc) >= 0.0) {
    q = -0.5 * (b + disc);
  } else {
    q = -0.5 * (b - disc);
  }
  if (q == Complex(0.0, 0.0)) {
    x0 = Complex(0.0, 0.0);
    x1 = -b / a;
    return;
  }
  x0 = q / a;
  x1 = c / q;
}

std::vector<Complex> companion_roots(const std::vector<Complex>& monic) {
  const int d = static_cast<int>(monic.size()) - 1;
  // Rescale x -> s*y so the companion entries are O(1) before the eigensolve.
  double s = fujiwara_bound(monic);
  if (!(s > 0.0) || !std::isfinite(s)) s = 1.0;
  std::vector<Complex> scaled(monic.size());
  double pw = 1.0;
  for (int i = d; i >= 0; --i) {
    scaled[static_cast<std::size_t>(i)] = monic[static_cast<std::size_t>(i)] / pw;
    pw *= s;
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i + 1 < d; ++i) m(i + 1, i) = Complex(1.0, 0.0);
  for (int i = 0; i < d; ++i) m(i, d - 1) = -scaled[static_cast<std::size_t>(i)];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, /*computeEigenvectors=*/false);
  std::vector<Complex> out(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i) * s;
  return out;
}

void newton_polish(const std::vector<Complex>& c, std::vector<Complex>& roots) {
  for (auto& z : roots) {
    for (int it = 0; it < 4; ++it) {
      auto [p, dp] = eval_with_derivative(c, z);
      if (std::abs(dp) == 0.0) break;
      const Complex step = p / dp;
      if (!std::isfinite(std::abs(step))) break;
      z -= step;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) break;
    }
  }
}

double worst_residual(const std::vector<Complex>& c, const std::vector<Complex>& roots) {
  double w = 0.0;
  for (const auto& r : roots) {
    const Complex p = eval_with_derivative(c, r).first;
    w = std::max(w, std::abs(p) / std::pow(std::max(1.0, std::abs(r)),
                                           static_cast<double>(c.size() - 1)));
  }
  return w;
}

bool aberth(const std::vector<Complex>& c, std::vector<Complex>& z, double tol) {
  const int d = static_cast<int>(c.size()) - 1;
  std::vector<Complex> delta(static_cast<std::size_t>(d));
  for (int iter = 0; iter < 240; ++iter) {
    double worst = 0.0;
    for (int k = 0; k < d; ++k) {
      auto [p, dp] = eval_with_derivative(c, z[static_cast<std::size_t>(k)]);
      Complex w;
      if (std::abs(p) == 0.0) {
        w = Complex(0.0, 0.0);
      } else if (std::abs(dp) == 0.0) {
        w = Complex(1e-8, 1e-8);
      } else {
        w = p / dp;
      }
      Complex sum(0.0, 0.0);
      for (int j = 0; j < d; ++j) {
        if (j == k) continue;
        Complex diff = z[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(j)];
        if (std::abs(diff) < 1e-300) diff = Complex(1e-300, 0.0);
        sum += Complex(1.0, 0.0) / diff;
      }
      const Complex denom = Complex(1.0, 0.0) - w * sum;
      Complex step = (std::abs(denom) < 1e-300) ? w : w / denom;
      if (!std::isfinite(std::abs(step))) step = Complex(0.0, 0.0);
      delta[static_cast<std::size_t>(k)] = step;
      worst = std::max(worst,
                       std::abs(step) / (1.0 + std::abs(z[static_cast<std::size_t>(k)])));
    }
    for (int k = 0; k < d; ++k) z[static_cast<std::size_t>(k)] -= delta[static_cast<std::size_t>(k)];
    if (worst <= std::max(tol, 1e-15)) return true;
  }
  return false;
}

// Merges roots closer than `radius` (single-linkage) and replaces each
// cluster by its centroid, repeated with the cluster's multiplicity.
void cluster_roots(std::vector<Complex>& roots, double radius) {
  const std::size_t n = roots.size();
  if (n < 2) return;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(roots[i] - roots[j]) <= radius) parent[find(i)] = find(j);
  std::vector<Complex> sum(n, Complex(0.0, 0.0));
  std::vector<int> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    sum[r] += roots[i];
    count[r] += 1;
  }
  std::vector<Complex> out;
  out.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (count[r] == 0) continue;
    const Complex centroid = sum[r] / static_cast<double>(count[r]);
    for (int rep = 0; rep < count[r]; ++rep) out.push_back(centroid);
  }
  roots = std::move(out);
}

}  // namespace

RootSet poly_roots(const Poly& p, double tol) {
  if (p.is_zero()) throw ZeroPolynomial();
  const int d = p.degree();
  RootSet rs;
  if (d == 0) return rs;

  const Complex lead = p.leading();
  std::vector<Complex> c(p.coeffs());
  for (auto& v : c) v /= lead;

  std::vector<Complex> roots;
  if (d == 1) {
    roots = {-c[0]};
  } else if (d == 2) {
    Complex x0, x1;
    solve_quadratic(Complex(1.0, 0.0), c[1], c[0], x0, x1);
    roots = {x0, x1};
  } else {
    double r0 = 0.5 * fujiwara_bound(c);
    if (!(r0 > 0.0) || !std::isfinite(r0)) r0 = 1.0;
    const Complex center = -c[static_cast<std::size_t>(d - 1)] / static_cast<double>(d);
    roots.resize(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / d + 0.45;
      roots[static_cast<std::size_t>(k)] = center + r0 * std::polar(1.0, theta);
    }
    if (!aberth(c, roots, tol)) {
      roots = companion_roots(c);
      newton_polish(c, roots);
    }
  }

  cluster_roots(roots, std::sqrt(std::max(tol, 0.0)));
  std::sort(roots.begin(), roots.end(), lex_less);

  double coeff_scale = 1.0;
  for (const auto& v : c) coeff_scale = std::max(coeff_scale, std::abs(v));
  double worst = worst_residual(c, roots);
  if (!std::isfinite(worst) || worst > 1e-6 * coeff_scale) {
    // One more attempt through the companion matrix before giving up.
    std::vector<Complex> fb = companion_roots(c);
    newton_polish(c, fb);
    cluster_roots(fb, std::sqrt(std::max(tol, 0.0)));
    std::sort(fb.begin(), fb.end(), lex_less);
    const double fb_worst = worst_residual(c, fb);
    if (fb_worst < worst) {
      roots = std::move(fb);
      worst = fb_worst;
    }
    if (!std::isfinite(worst) || worst > 1e-6 * coeff_scale) {
      throw NonConvergence("poly_roots: residual did not converge", roots, worst);
    }
  }
  rs.roots = std::move(roots);
  rs.residual = worst;
  return rs;
}

std::vector<Complex> roots_of(const Poly& p, double tol) { return poly_roots(p, tol).roots; }

}  // namespace minvset
