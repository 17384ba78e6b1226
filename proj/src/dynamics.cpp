#include "minvset/dynamics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "minvset/parallel.hpp"
#include "minvset/rng.hpp"

namespace minvset {
namespace {

constexpr uint64_t kPairStream = 0xA11;
constexpr uint64_t kMultisetStream = 0xB22;

// Dense view of Psi_{T,n} for fast slicing: column s holds the x-coefficients
// of z^s.
struct SliceCache {
  Eigen::MatrixXcd m;
  double scale = 0.0;
  int dx = -1;
  int dz = -1;

  explicit SliceCache(const BiPoly& b) {
    dx = std::max(b.deg_x(), 0);
    dz = std::max(b.deg_z(), 0);
    m = Eigen::MatrixXcd::Zero(dx + 1, dz + 1);
    for (int s = 0; s <= b.deg_z(); ++s) {
      const Poly& p = b.z_coeff(s);
      for (int i = 0; i <= p.degree(); ++i) m(i, s) = p.coeff(i);
    }
    scale = m.size() > 0 ? m.cwiseAbs().maxCoeff() : 0.0;
  }

  // Coefficients of x -> B(x, z0); not trimmed.
  void slice(const Complex& z0, std::vector<Complex>& out) const {
    out.assign(static_cast<std::size_t>(dx) + 1, Complex(0.0, 0.0));
    Complex zp(1.0, 0.0);
    for (int s = 0; s <= dz; ++s) {
      for (int i = 0; i <= dx; ++i) out[static_cast<std::size_t>(i)] += m(i, s) * zp;
      zp *= z0;
    }
  }
};

struct StepOutcome {
  PointCloud next;
  std::size_t escaped = 0;
  std::size_t new_cells = 0;
};

// Roots of the slice at z0 appended to out; escaped roots only counted.
void collect_slice_roots(const SliceCache& cache, const Complex& z0, double r_max,
                         double root_tol, std::vector<Complex>& scratch,
                         std::vector<Complex>& out, std::size_t& escaped) {
  cache.slice(z0, scratch);
  const double zero_tol =
      1e-12 * std::max(cache.scale, 1e-300) *
      std::pow(std::max(1.0, std::abs(z0)), static_cast<double>(cache.dz));
  int deg = -1;
  for (int i = cache.dx; i >= 0; --i) {
    if (std::abs(scratch[static_cast<std::size_t>(i)]) > zero_tol) {
      deg = i;
      break;
    }
  }
  if (deg <= 0) return;  // identically zero (z kept by retention) or constant
  scratch.resize(static_cast<std::size_t>(deg) + 1);
  std::vector<Complex> roots;
  try {
    roots = poly_roots(Poly(std::vector<Complex>(scratch)), root_tol).roots;
  } catch (const NonConvergence& e) {
    roots = e.best_roots;
  }
  for (const Complex& r : roots) {
    if (std::abs(r) > r_max) {
      ++escaped;
    } else {
      out.push_back(r);
    }
  }
}

void collect_poly_roots(const Poly& p, double r_max, double root_tol, std::vector<Complex>& out,
                        std::size_t& escaped) {
  if (p.degree() < 1) return;
  std::vector<Complex> roots;
  try {
    roots = poly_roots(p, root_tol).roots;
  } catch (const NonConvergence& e) {
    roots = e.best_roots;
  }
  for (const Complex& r : roots) {
    if (std::abs(r) > r_max) {
      ++escaped;
    } else {
      out.push_back(r);
    }
  }
}

StepOutcome merge_step(const PointCloud& cloud, std::vector<std::vector<Complex>>& parts,
                       std::size_t escaped, double eps) {
  std::vector<Complex> all(cloud.points);
  for (auto& part : parts) all.insert(all.end(), part.begin(), part.end());
  StepOutcome out;
  out.next = grid_snap(all, eps);
  out.escaped = escaped;
  out.new_cells = out.next.size() > cloud.size() ? out.next.size() - cloud.size() : 0;
  return out;
}

StepOutcome theta_step_impl(const SliceCache& cache, const PointCloud& cloud, double eps,
                            double r_max, double root_tol) {
  const int workers = worker_count();
  std::vector<std::vector<Complex>> parts(static_cast<std::size_t>(workers) + 1);
  std::vector<std::size_t> escapes(static_cast<std::size_t>(workers) + 1, 0);
  parallel_chunks(cloud.size(), [&](int chunk, std::size_t begin, std::size_t end) {
    std::vector<Complex> scratch;
    auto& out = parts[static_cast<std::size_t>(chunk)];
    auto& esc = escapes[static_cast<std::size_t>(chunk)];
    for (std::size_t i = begin; i < end; ++i) {
      collect_slice_roots(cache, cloud.points[i], r_max, root_tol, scratch, out, esc);
    }
  });
  std::size_t escaped = 0;
  for (auto e : escapes) escaped += e;
  return merge_step(cloud, parts, escaped, eps);
}

StepOutcome tau_step_impl(const DiffOp& t, int n, const SliceCache& cache,
                          const PointCloud& cloud, const IterationConfig& cfg, double r_max,
                          uint64_t step_index) {
  if (cloud.empty()) throw EmptyCloud();
  if (n == 1) return theta_step_impl(cache, cloud, cfg.eps, r_max, cfg.root_tol);

  const std::size_t csize = cloud.size();
  const int workers = worker_count();

  // (c) the n-fold-root polynomials of every point: exactly the theta images.
  StepOutcome theta_part = theta_step_impl(cache, cloud, cfg.eps, r_max, cfg.root_tol);

  // (a) basis polynomials (x-u)^j (x-v)^(n-j) over pairs u != v. All pairs
  // are used when the cloud is small enough, otherwise a seeded sample.
  const std::size_t pair_budget =
      std::max<std::size_t>(1, (static_cast<std::size_t>(cfg.tau_samples) + n) /
                                   (static_cast<std::size_t>(n) + 1));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (csize >= 2 && csize * (csize - 1) <= pair_budget) {
    for (std::size_t i = 0; i < csize; ++i)
      for (std::size_t j = 0; j < csize; ++j)
        if (i != j) pairs.emplace_back(i, j);
  } else if (csize >= 2) {
    pairs.reserve(pair_budget);
    for (std::size_t s = 0; s < pair_budget; ++s) {
      const std::size_t i =
          rng::index(rng::hash_keys({cfg.rng_seed, kPairStream, step_index, s, 0}), csize);
      std::size_t j =
          rng::index(rng::hash_keys({cfg.rng_seed, kPairStream, step_index, s, 1}), csize - 1);
      if (j >= i) ++j;
      pairs.emplace_back(i, j);
    }
  }

  // (b) random degree-n multisets drawn from the cloud with replacement.
  const std::size_t multisets = static_cast<std::size_t>(std::max(cfg.tau_samples, 0));

  const std::size_t jobs = pairs.size() + multisets;
  std::vector<std::vector<Complex>> parts(static_cast<std::size_t>(workers) + 2);
  std::vector<std::size_t> escapes(static_cast<std::size_t>(workers) + 2, 0);
  parallel_chunks(jobs, [&](int chunk, std::size_t begin, std::size_t end) {
    auto& out = parts[static_cast<std::size_t>(chunk)];
    auto& esc = escapes[static_cast<std::size_t>(chunk)];
    std::vector<Complex> roots(static_cast<std::size_t>(n));
    for (std::size_t job = begin; job < end; ++job) {
      if (job < pairs.size()) {
        const Complex u = cloud.points[pairs[job].first];
        const Complex v = cloud.points[pairs[job].second];
        for (int j = 0; j <= n; ++j) {
          for (int q = 0; q < n; ++q)
            roots[static_cast<std::size_t>(q)] = (q < j) ? u : v;
          collect_poly_roots(t.apply(poly_from_roots(roots, Complex(1.0, 0.0))), r_max,
                             cfg.root_tol, out, esc);
        }
      } else {
        const std::size_t s = job - pairs.size();
        for (int q = 0; q < n; ++q) {
          const uint64_t h = rng::hash_keys(
              {cfg.rng_seed, kMultisetStream, step_index, s, static_cast<uint64_t>(q)});
          roots[static_cast<std::size_t>(q)] = cloud.points[rng::index(h, csize)];
        }
        collect_poly_roots(t.apply(poly_from_roots(roots, Complex(1.0, 0.0))), r_max,
                           cfg.root_tol, out, esc);
      }
    }
  });

  parts.push_back(std::move(theta_part.next.points));
  std::size_t escaped = theta_part.escaped;
  for (auto e : escapes) escaped += e;
  return merge_step(cloud, parts, escaped, cfg.eps);
}

PointCloud snap_clip(const std::vector<Complex>& pts, double eps, double r_max) {
  std::vector<Complex> kept;
  kept.reserve(pts.size());
  for (const Complex& p : pts)
    if (std::abs(p) <= r_max) kept.push_back(p);
  return grid_snap(kept, eps);
}

}  // namespace

double auto_escape_radius(const DiffOp& t, const std::vector<Complex>& seeds) {
  double qk_reach = 0.0;
  if (!t.is_zero() && t.leading().degree() >= 1) {
    for (const Complex& r : poly_roots(t.leading()).roots)
      qk_reach = std::max(qk_reach, std::abs(r));
  }
  double seed_reach = 0.0;
  for (const Complex& s : seeds) seed_reach = std::max(seed_reach, std::abs(s));
  return 10.0 * (1.0 + qk_reach + seed_reach);
}

PointCloud theta_step(const DiffOp& t, int n, const PointCloud& cloud) {
  if (n < 1) throw DomainError("theta_step: require n >= 1");
  SliceCache cache(psi(t, n));
  return theta_step_impl(cache, cloud, cloud.resolution, std::numeric_limits<double>::infinity(),
                         1e-12)
      .next;
}

PointCloud tau_step(const DiffOp& t, int n, const PointCloud& cloud, const IterationConfig& cfg) {
  if (n < 1) throw DomainError("tau_step: require n >= 1");
  if (cloud.empty()) throw EmptyCloud();
  SliceCache cache(psi(t, n));
  const double r_max =
      cfg.r_max > 0.0 ? cfg.r_max : std::numeric_limits<double>::infinity();
  return tau_step_impl(t, n, cache, cloud, cfg, r_max, 0).next;
}

PointCloud seed_points(const DiffOp& t, int n, IterationMode mode, double eps) {
  auto from_roots = [&](const std::vector<Complex>& pts) {
    return grid_snap(pts, eps);
  };

  auto hutchinson_seeds = [&]() -> std::optional<PointCloud> {
    const BiPoly b = psi(t, n);
    if (b.is_zero()) return std::nullopt;
    Poly diag = b.diagonal();
    if (!diag.is_zero() && diag.degree() >= 1) return from_roots(poly_roots(diag).roots);
    if (diag.is_zero()) {
      // The diagonal is a component: peel (x - z) factors and look for the
      // fixed points of the remaining branches.
      BiPoly core = b;
      while (core.deg_x() >= 1) {
        auto [quot, rem] = core.div_x_minus_z();
        if (!rem.is_zero()) break;
        core = std::move(quot);
        Poly core_diag = core.diagonal();
        if (!core_diag.is_zero() && core_diag.degree() >= 1) {
          return from_roots(poly_roots(core_diag).roots);
        }
      }
    }
    return std::nullopt;
  };

  auto eigen_seeds = [&]() -> PointCloud {
    return from_roots(poly_roots(eigenpolynomial(t, n)).roots);
  };

  if (mode == IterationMode::Full) {
    try {
      return eigen_seeds();
    } catch (const Error&) {
      if (auto seeds = hutchinson_seeds()) return *seeds;
      throw;
    }
  }
  if (auto seeds = hutchinson_seeds()) return *seeds;
  return eigen_seeds();
}

IterationReport minimal_invariant_set(const DiffOp& t, int n, IterationMode mode,
                                      const IterationConfig& cfg) {
  if (n < 1) throw DomainError("minimal_invariant_set: require n >= 1");
  IterationReport report;

  try {
    if (is_exactly_solvable(t)) {
      const ExistenceReport ex = existence_check(t, n);
      if (!ex.unique_dominant || !ex.one_point_free) {
        report.heuristic = true;
        report.heuristic_reason = !ex.unique_dominant
                                      ? "no unique dominant eigenvalue; existence unproven"
                                      : "1-point invariant sets exist; minimal set may be a point";
      } else if (mode == IterationMode::Full && n >= 2) {
        report.heuristic = true;
        report.heuristic_reason = "full tau_n closure is sampled, not exhaustive";
      }
    } else {
      report.heuristic = true;
      report.heuristic_reason = "operator is not exactly solvable; existence theory inapplicable";
    }
  } catch (const Error&) {
    report.heuristic = true;
    report.heuristic_reason = "existence diagnostics unavailable";
  }

  PointCloud seeds = seed_points(t, n, mode, cfg.eps);
  const double r_max = cfg.r_max > 0.0 ? cfg.r_max : auto_escape_radius(t, seeds.points);
  report.r_max_used = r_max;

  PointCloud cloud = snap_clip(seeds.points, cfg.eps, r_max);
  if (cloud.empty()) {
    report.status = RunStatus::Empty;
    report.cloud = std::move(cloud);
    return report;
  }

  SliceCache cache(psi(t, n));
  int quiet_steps = 0;  // consecutive steps with sub-eps movement and no escapes
  for (int step = 1; step <= cfg.max_iter; ++step) {
    StepOutcome outcome =
        (mode == IterationMode::Hutchinson)
            ? theta_step_impl(cache, cloud, cfg.eps, r_max, cfg.root_tol)
            : tau_step_impl(t, n, cache, cloud, cfg, r_max, static_cast<uint64_t>(step));
    report.steps = step;
    if (outcome.next.empty()) {
      report.status = RunStatus::Empty;
      report.cloud = std::move(outcome.next);
      return report;
    }
    const double delta = hausdorff(cloud, outcome.next);
    report.deltas.push_back(delta);
    report.escaped_fraction =
        outcome.escaped == 0
            ? 0.0
            : static_cast<double>(outcome.escaped) /
                  static_cast<double>(outcome.escaped + outcome.new_cells);
    cloud = std::move(outcome.next);
    if (outcome.escaped >= 4 && report.escaped_fraction > 0.5) {
      report.status = RunStatus::Unbounded;
      report.cloud = std::move(cloud);
      return report;
    }
    quiet_steps = (delta < cfg.eps && outcome.escaped == 0) ? quiet_steps + 1 : 0;
    if (quiet_steps >= cfg.stall_window) {
      report.status = RunStatus::Converged;
      report.cloud = std::move(cloud);
      return report;
    }
  }
  report.status = RunStatus::MaxIterReached;
  report.cloud = std::move(cloud);
  return report;
}

ExistenceReport existence_check(const DiffOp& t, int n) {
  const std::vector<Complex> lambdas = symbol_eigenvalues(t, n);
  ExistenceReport out;

  double max_mod = 0.0;
  for (const Complex& l : lambdas) max_mod = std::max(max_mod, std::abs(l));
  const double tie_tol = 1e-9 * std::max(1.0, max_mod);
  int top_index = -1;
  int top_count = 0;
  for (int i = 0; i <= n; ++i) {
    if (std::abs(lambdas[static_cast<std::size_t>(i)]) >= max_mod - tie_tol) {
      top_index = i;
      ++top_count;
    }
  }
  if (top_count == 1) {
    out.dominant_index = top_index;
    out.unique_dominant = top_index >= 1;
    out.unbounded_hint = top_index < n;
  }

  try {
    const OnePointReport opr = one_point_sets(t, n, 1e-8);
    out.one_point_free = opr.points.empty() && !opr.infinite_family;
  } catch (const ConstantPsi&) {
    out.one_point_free = false;
  }

  const Complex ln = lambdas[static_cast<std::size_t>(n)];
  if (std::abs(ln) > tie_tol) {
    for (int l = 0; l < n && !out.infinite_hint; ++l) {
      const Complex ll = lambdas[static_cast<std::size_t>(l)];
      if (std::abs(ll) <= tie_tol) continue;
      const Complex ratio = ll / ln;
      if (std::abs(std::abs(ratio) - 1.0) > 1e-9) {
        out.infinite_hint = true;
        break;
      }
      bool near_unity_root = false;
      const double theta = std::arg(ratio);
      for (int q = 1; q <= 64 && !near_unity_root; ++q) {
        const double frac = theta * q / (2.0 * std::numbers::pi);
        const double angle = 2.0 * std::numbers::pi * std::round(frac) / q;
        if (std::abs(ratio - std::polar(1.0, angle)) <= 1e-9) near_unity_root = true;
      }
      if (!near_unity_root) out.infinite_hint = true;
    }
  }
  return out;
}

std::vector<ConvergenceRow> convergence_study(const DiffOp& t, const std::vector<int>& n_list,
                                              const IterationConfig& cfg) {
  if (!is_nondegenerate(t)) {
    throw DomainError("convergence_study: operator must be non-degenerate");
  }
  if (t.leading().degree() < 1) throw ConstantLeadingCoefficient();
  const std::vector<Complex> qk_roots = poly_roots(t.leading()).roots;
  bool has_simple = false;
  for (std::size_t i = 0; i < qk_roots.size() && !has_simple; ++i) {
    bool repeated = false;
    for (std::size_t j = 0; j < qk_roots.size(); ++j) {
      if (i != j && std::abs(qk_roots[i] - qk_roots[j]) < 1e-9) repeated = true;
    }
    has_simple = !repeated;
  }
  if (!has_simple) {
    throw DomainError("convergence_study: leading coefficient needs a simple zero");
  }

  const ConvexPolygon polygon = fundamental_polygon(t);
  std::vector<ConvergenceRow> rows;
  rows.reserve(n_list.size());
  for (int n : n_list) {
    IterationReport run = minimal_invariant_set(t, n, IterationMode::Full, cfg);
    ConvergenceRow row;
    row.n = n;
    row.status = run.status;
    if (!run.cloud.empty()) {
      const PolygonDistance d = dist_to_polygon(run.cloud, polygon);
      row.sup_out = d.sup_out;
      row.coverage = d.coverage;
      const std::vector<Complex> fill =
          sample_filled_polygon(polygon, std::max(cfg.eps, 1e-4));
      row.fill_distance = directed_hausdorff(fill, run.cloud.points);
    } else {
      row.sup_out = std::numeric_limits<double>::quiet_NaN();
      row.coverage = std::numeric_limits<double>::quiet_NaN();
      row.fill_distance = std::numeric_limits<double>::quiet_NaN();
    }
    row.cloud = std::move(run.cloud);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace minvset
