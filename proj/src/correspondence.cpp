#include "minvset/correspondence.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace minvset {
namespace {

double max_abs_coeff(const BiPoly& b) {
  double m = 0.0;
  for (const auto& p : b.z_coeffs())
    for (const auto& c : p.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

bool share_root(const Poly& u, const Poly& v, double tol) {
  if (u.degree() < 1 || v.degree() < 1) return false;
  const auto ru = poly_roots(u).roots;
  const auto rv = poly_roots(v).roots;
  for (const Complex& a : ru)
    for (const Complex& b : rv)
      if (std::abs(a - b) <= tol * std::max(1.0, std::abs(a))) return true;
  return false;
}

}  // namespace

std::optional<LinearSlice> extract_linear_in_z(const BiPoly& b, double tol) {
  auto uv = linear_in_z(b);
  if (!uv) return std::nullopt;
  LinearSlice out{uv->first, uv->second, false};
  out.common_zero = share_root(out.u, out.v, tol);
  return out;
}

std::optional<LinearSlice> extract_linear_in_x(const BiPoly& b, double tol) {
  auto uv = linear_in_x(b);
  if (!uv) return std::nullopt;
  LinearSlice out{uv->first, uv->second, false};
  out.common_zero = share_root(out.u, out.v, tol);
  return out;
}

OnePointReport one_point_sets(const BiPoly& b, double tol) {
  if (b.is_constant()) throw ConstantPsi();
  OnePointReport report;

  // Peel off (x - z) factors in exact coefficient arithmetic with a
  // tolerance: the remainder of each division is the diagonal, treated as
  // structurally zero when it is tiny against the matrix scale.
  const double scale = std::max(1e-300, max_abs_coeff(b));
  BiPoly core = b;
  int peeled = 0;
  while (core.deg_x() >= 1) {
    auto [quot, rem] = core.div_x_minus_z();
    double rem_mag = 0.0;
    for (const auto& c : rem.coeffs()) rem_mag = std::max(rem_mag, std::abs(c));
    if (rem_mag > tol * scale) break;
    core = std::move(quot);
    ++peeled;
  }

  if (peeled >= 1 && core.deg_x() <= 0) {
    // Psi = Phi(z) (x - z)^l : every point of the plane is a 1-point set.
    report.infinite_family = true;
    Poly phi_z = core.deg_x() < 0 ? Poly() : core.transposed().z_coeff(0);
    report.family_data = std::make_pair(peeled, std::move(phi_z));
    return report;
  }

  // Candidate points: the diagonal of the peeled core, plus the zeros of its
  // x-leading coefficient (where a slice can drop degree and lose branches).
  std::vector<Complex> candidates;
  const Poly diag = core.diagonal();
  if (!diag.is_zero() && diag.degree() >= 1) {
    for (const Complex& r : poly_roots(diag, 1e-13).roots) candidates.push_back(r);
  }
  const Poly lead = core.transposed().z_coeff(core.deg_x());
  if (lead.degree() >= 1) {
    for (const Complex& r : poly_roots(lead, 1e-13).roots) candidates.push_back(r);
  }
  std::sort(candidates.begin(), candidates.end(), lex_less);

  const double match_tol = std::max(tol, 1e-12);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Complex z0 = candidates[i];
    if (i > 0 && std::abs(z0 - candidates[i - 1]) <= match_tol) {
      continue;  // dedupe clustered candidates
    }
    Poly slice = b.slice_x(z0);
    double slice_mag = 0.0;
    for (const auto& c : slice.coeffs()) slice_mag = std::max(slice_mag, std::abs(c));
    const double z0_pow = std::pow(std::max(1.0, std::abs(z0)), std::max(0, b.deg_z()));
    if (slice_mag <= tol * scale * z0_pow) {
      report.points.push_back({z0, OnePointKind::FullFiber, 0.0});
      continue;
    }
    if (slice.degree() < 1) continue;  // nonzero constant: empty zero set
    double worst = 0.0;
    bool sole = true;
    for (const Complex& r : poly_roots(slice, 1e-13).roots) {
      const double off = std::abs(r - z0);
      worst = std::max(worst, off);
      if (off > match_tol) {
        sole = false;
        break;
      }
    }
    if (sole) report.points.push_back({z0, OnePointKind::SoleIntersection, worst});
  }
  return report;
}

OnePointReport one_point_sets(const DiffOp& t, int n, double tol) {
  return one_point_sets(psi(t, n), tol);
}

DiffOp operator_from_affine_ifs(const std::vector<AffineMap>& maps, const Complex& scale) {
  if (maps.empty()) throw DomainError("operator_from_affine_ifs: need at least one map");
  if (scale == Complex(0.0, 0.0)) throw ZeroScale();
  BiPoly prod = BiPoly::from_x_poly(Poly::constant(scale));
  for (const AffineMap& m : maps) {
    // x - (a z + b)
    BiPoly factor(std::vector<Poly>{
        Poly(std::vector<Complex>{-m.b, Complex(1.0, 0.0)}),
        Poly::constant(-m.a),
    });
    prod = prod * factor;
  }
  return phi(prod, static_cast<int>(maps.size()));
}

std::optional<std::vector<AffineMap>> detect_affine_ifs(const BiPoly& b, int n, double tol) {
  if (n < 1 || b.deg_x() != n) return std::nullopt;
  const int samples = n + 2;
  // Sample along a circle of radius ~1.618 with a golden-angle phase so
  // symmetric root collisions are unlikely; consecutive samples stay close,
  // which keeps the nearest-neighbor continuation honest.
  const double radius = std::numbers::phi;
  const double phase = 2.0 * std::numbers::pi * (std::numbers::phi - 1.0);

  std::vector<Complex> zs(static_cast<std::size_t>(samples));
  std::vector<std::vector<Complex>> branch(static_cast<std::size_t>(n),
                                           std::vector<Complex>(static_cast<std::size_t>(samples)));
  for (int s = 0; s < samples; ++s) {
    const double theta = phase + 2.0 * std::numbers::pi * s / samples;
    const Complex z = radius * std::polar(1.0, theta);
    zs[static_cast<std::size_t>(s)] = z;
    Poly slice = b.slice_x(z);
    if (slice.degree() != n) return std::nullopt;
    std::vector<Complex> roots;
    try {
      roots = poly_roots(slice, 1e-13).roots;
    } catch (const NonConvergence& e) {
      roots = e.best_roots;
    }
    if (static_cast<int>(roots.size()) != n) return std::nullopt;
    if (s == 0) {
      for (int i = 0; i < n; ++i) branch[static_cast<std::size_t>(i)][0] = roots[static_cast<std::size_t>(i)];
      continue;
    }
    // Greedy nearest-neighbor continuation from the previous sample.
    std::vector<bool> used(roots.size(), false);
    for (int i = 0; i < n; ++i) {
      const Complex prev = branch[static_cast<std::size_t>(i)][static_cast<std::size_t>(s - 1)];
      int best = -1;
      double best_d = 0.0;
      for (int j = 0; j < n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double dist = std::abs(roots[static_cast<std::size_t>(j)] - prev);
        if (best < 0 || dist < best_d) {
          best = j;
          best_d = dist;
        }
      }
      used[static_cast<std::size_t>(best)] = true;
      branch[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] =
          roots[static_cast<std::size_t>(best)];
    }
  }

  // Least-squares fit x = a z + b per branch.
  Eigen::MatrixXcd design(samples, 2);
  for (int s = 0; s < samples; ++s) {
    design(s, 0) = zs[static_cast<std::size_t>(s)];
    design(s, 1) = Complex(1.0, 0.0);
  }
  const auto qr = design.colPivHouseholderQr();
  std::vector<AffineMap> maps;
  maps.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXcd rhs(samples);
    for (int s = 0; s < samples; ++s) rhs(s) = branch[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
    const Eigen::VectorXcd sol = qr.solve(rhs);
    const Eigen::VectorXcd res = design * sol - rhs;
    if (res.cwiseAbs().maxCoeff() > tol) return std::nullopt;
    maps.push_back(AffineMap{sol(0), sol(1)});
  }
  std::sort(maps.begin(), maps.end(), [](const AffineMap& l, const AffineMap& r) {
    const double la = std::abs(l.a), ra = std::abs(r.a);
    if (std::abs(la - ra) > 1e-9 * (1.0 + la + ra)) return la < ra;
    return std::arg(l.a) < std::arg(r.a);
  });
  return maps;
}

std::pair<Poly, Poly> extract_pinned_rational(const DiffOp& t, int n, const Complex& alpha) {
  return pinned_linear_parts(t, n, alpha);
}

}  // namespace minvset
