#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minvset/correspondence.hpp"
#include "minvset/geometry.hpp"
#include "minvset/spectral.hpp"

namespace minvset {

enum class IterationMode { Hutchinson, Full };

enum class RunStatus { Converged, Unbounded, Empty, MaxIterReached };

struct IterationConfig {
  int max_iter = 200;
  double r_max = 0.0;  // <= 0 requests the automatic escape radius
  double eps = 1e-3;
  int stall_window = 3;
  int tau_samples = 64;  // full mode: sampled polynomials per step
  uint64_t rng_seed = 0x5eed;
  double root_tol = 1e-12;
};

struct IterationReport {
  RunStatus status = RunStatus::MaxIterReached;
  PointCloud cloud;
  std::vector<double> deltas;  // per-step Hausdorff movement
  double escaped_fraction = 0.0;
  int steps = 0;
  double r_max_used = 0.0;
  // Set when the run falls outside the regimes with an existence guarantee
  // (e.g. full mode at small n, or seeding had to fall back).
  bool heuristic = false;
  std::string heuristic_reason;
};

/// Diagnostics for the existence / (un)boundedness conditions on the symbol
/// spectrum, plus the 1-point test.
struct ExistenceReport {
  bool unique_dominant = false;          // unique max-|lambda| index, >= 1
  std::optional<int> dominant_index;     // set whenever the max is unique
  bool one_point_free = false;
  bool unbounded_hint = false;           // unique dominant with index < n
  bool infinite_hint = false;            // some lambda_l/lambda_n never a root of unity
};

/// One application of the multivalued map: for every z in the cloud, the
/// roots of Psi_{T,n}(x, z) are added (an identically-zero slice keeps z and
/// adds nothing; a nonzero constant slice has an empty zero set). The input
/// cloud is retained, the union snapped to the cloud's grid.
PointCloud theta_step(const DiffOp& t, int n, const PointCloud& cloud);

/// One step of the forward closure tau_n, under-approximated by (a) the
/// two-point basis polynomials (x-u)^j (x-v)^(n-j) over sampled pairs from
/// the cloud, (b) cfg.tau_samples random degree-n root multisets, and (c)
/// the n-fold-root polynomials of every cloud point. Deterministic for a
/// fixed cfg.rng_seed. At n = 1 this coincides with theta_step exactly.
PointCloud tau_step(const DiffOp& t, int n, const PointCloud& cloud, const IterationConfig& cfg);

/// Seeds guaranteed to lie in the minimal set: roots of the eigenpolynomial
/// p_n (full mode), or the diagonal fixed points of the curve (Hutchinson
/// mode), with fallbacks between the two when one side is unavailable.
PointCloud seed_points(const DiffOp& t, int n, IterationMode mode, double eps = 1e-3);

/// Iterates theta (Hutchinson) or tau (full) from seed_points until the
/// per-step Hausdorff movement stays below eps for stall_window steps
/// (Converged), more than half of the step's new mass escapes past r_max
/// (Unbounded), the cloud empties (Empty), or max_iter is hit.
IterationReport minimal_invariant_set(const DiffOp& t, int n, IterationMode mode,
                                      const IterationConfig& cfg);

ExistenceReport existence_check(const DiffOp& t, int n);

struct ConvergenceRow {
  int n = 0;
  RunStatus status = RunStatus::MaxIterReached;
  double sup_out = 0.0;        // cloud distance to the filled fundamental polygon
  double coverage = 0.0;       // worst polygon-vertex distance to the cloud
  double fill_distance = 0.0;  // worst filled-polygon-sample distance to the cloud
  PointCloud cloud;
};

/// Runs full-mode iterations for each n and measures the cloud against the
/// fundamental polygon. Requires a non-degenerate operator whose leading
/// coefficient has at least one simple zero.
std::vector<ConvergenceRow> convergence_study(const DiffOp& t, const std::vector<int>& n_list,
                                              const IterationConfig& cfg);

/// The escape radius used when cfg.r_max <= 0:
/// 10 * (1 + max |root of Q_k| + max |seed|).
double auto_escape_radius(const DiffOp& t, const std::vector<Complex>& seeds);

}  // namespace minvset
