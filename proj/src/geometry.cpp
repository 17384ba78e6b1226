#include "minvset/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "minvset/errors.hpp"

namespace minvset {
namespace {

struct CellKey {
  int64_t x = 0;
  int64_t y = 0;
  bool operator==(const CellKey&) const = default;
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    uint64_t h = static_cast<uint64_t>(k.x) * 0x9e3779b97f4a7c15ULL;
    h ^= static_cast<uint64_t>(k.y) + 0x7f4a7c15ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

CellKey cell_of(const Complex& p, double eps) {
  return CellKey{static_cast<int64_t>(std::floor(p.real() / eps)),
                 static_cast<int64_t>(std::floor(p.imag() / eps))};
}

double cross(const Complex& o, const Complex& a, const Complex& b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

double segment_distance(const Complex& p, const Complex& a, const Complex& b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

}  // namespace

ConvexPolygon convex_hull(const std::vector<Complex>& points) {
  if (points.empty()) throw EmptyInput("convex_hull: empty input");
  std::vector<Complex> pts(points);
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return ConvexPolygon{pts};

  auto keep_turn = [](const Complex& o, const Complex& a, const Complex& b) {
    const double tol = 1e-12 * std::max(1.0, std::abs(a - o) * std::abs(b - o));
    return cross(o, a, b) > tol;
  };

  std::vector<Complex> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && !keep_turn(hull[k - 2], hull[k - 1], pts[i])) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && !keep_turn(hull[k - 2], hull[k - 1], pts[i])) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() == 2 && hull[0] == hull[1]) hull.pop_back();
  return ConvexPolygon{std::move(hull)};
}

PointCloud grid_snap(const std::vector<Complex>& points, double eps) {
  if (!(eps > 0.0)) throw DomainError("grid_snap: eps must be positive");
  std::unordered_map<CellKey, Complex, CellHash> best;
  best.reserve(points.size() * 2 + 1);
  for (const Complex& p : points) {
    auto [it, inserted] = best.try_emplace(cell_of(p, eps), p);
    if (!inserted && lex_less(p, it->second)) it->second = p;
  }
  PointCloud out;
  out.resolution = eps;
  out.points.reserve(best.size());
  for (const auto& [key, p] : best) out.points.push_back(p);
  std::sort(out.points.begin(), out.points.end(), lex_less);
  return out;
}

PointCloud grid_snap(const PointCloud& cloud, double eps) { return grid_snap(cloud.points, eps); }

namespace {

// Uniform-grid nearest-neighbor index. Ring search widens until the ring's
// lower distance bound exceeds the best match, so distances are exact. A
// query that has seen nothing after kMaxRings falls back to a linear scan
// (isolated outliers would otherwise walk the grid for a long time).
class GridIndex {
 public:
  static constexpr int64_t kMaxRings = 64;

  explicit GridIndex(const std::vector<Complex>& pts, double cell) : cell_(cell), points_(pts) {
    buckets_.reserve(pts.size() * 2 + 1);
    for (const Complex& p : pts) buckets_[cell_of(p, cell_)].push_back(p);
  }

  double nearest_distance(const Complex& q) const {
    const CellKey c = cell_of(q, cell_);
    double best = std::numeric_limits<double>::infinity();
    auto scan_cell = [&](int64_t dx, int64_t dy) {
      auto it = buckets_.find(CellKey{c.x + dx, c.y + dy});
      if (it == buckets_.end()) return;
      for (const Complex& p : it->second) best = std::min(best, std::abs(q - p));
    };
    for (int64_t ring = 0;; ++ring) {
      // Every point in a Chebyshev-ring-r cell is at least (r-1)*cell away.
      const double ring_lower = (ring == 0) ? 0.0 : (static_cast<double>(ring) - 1.0) * cell_;
      if (ring_lower > best) break;
      if (ring > kMaxRings && best == std::numeric_limits<double>::infinity()) {
        for (const Complex& p : points_) best = std::min(best, std::abs(q - p));
        break;
      }
      if (ring == 0) {
        scan_cell(0, 0);
        continue;
      }
      for (int64_t dx = -ring; dx <= ring; ++dx) {
        scan_cell(dx, -ring);
        scan_cell(dx, ring);
      }
      for (int64_t dy = -ring + 1; dy <= ring - 1; ++dy) {
        scan_cell(-ring, dy);
        scan_cell(ring, dy);
      }
    }
    return best;
  }

 private:
  double cell_;
  std::vector<Complex> points_;
  std::unordered_map<CellKey, std::vector<Complex>, CellHash> buckets_;
};

double pick_cell_size(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  // Aim for O(1) points per bucket: spread of the joint bounding box over
  // the square root of the point count.
  double lo_r = a[0].real(), hi_r = lo_r, lo_i = a[0].imag(), hi_i = lo_i;
  for (const auto* v : {&a, &b}) {
    for (const Complex& p : *v) {
      lo_r = std::min(lo_r, p.real());
      hi_r = std::max(hi_r, p.real());
      lo_i = std::min(lo_i, p.imag());
      hi_i = std::max(hi_i, p.imag());
    }
  }
  const double span = std::max(hi_r - lo_r, hi_i - lo_i);
  const double n = static_cast<double>(a.size() + b.size());
  double cell = span / std::max(1.0, std::sqrt(n));
  if (!(cell > 0.0) || !std::isfinite(cell)) cell = 1.0;
  return cell;
}

}  // namespace

double directed_hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.empty() || b.empty()) throw EmptyInput("hausdorff: empty cloud");
  GridIndex index(b, pick_cell_size(a, b));
  double worst = 0.0;
  for (const Complex& p : a) worst = std::max(worst, index.nearest_distance(p));
  return worst;
}

double hausdorff(const PointCloud& a, const PointCloud& b) {
  if (a.empty() || b.empty()) throw EmptyInput("hausdorff: empty cloud");
  // Snapped clouds carry their grid: a few grid cells per bucket keeps the
  // bucket occupancy bounded regardless of outliers.
  double cell = std::max(a.resolution, b.resolution) * 3.0;
  if (!(cell > 0.0)) cell = pick_cell_size(a.points, b.points);
  GridIndex ia(a.points, cell);
  GridIndex ib(b.points, cell);
  double worst = 0.0;
  for (const Complex& p : a.points) worst = std::max(worst, ib.nearest_distance(p));
  for (const Complex& p : b.points) worst = std::max(worst, ia.nearest_distance(p));
  return worst;
}

double point_to_polygon(const Complex& p, const ConvexPolygon& poly) {
  const auto& v = poly.vertices;
  if (v.empty()) throw EmptyInput("point_to_polygon: empty polygon");
  if (v.size() == 1) return std::abs(p - v[0]);
  if (v.size() == 2) return segment_distance(p, v[0], v[1]);
  bool inside = true;
  double nearest_edge = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex& a = v[i];
    const Complex& b = v[(i + 1) % v.size()];
    if (cross(a, b, p) < 0.0) inside = false;
    nearest_edge = std::min(nearest_edge, segment_distance(p, a, b));
  }
  return inside ? 0.0 : nearest_edge;
}

std::vector<Complex> sample_filled_polygon(const ConvexPolygon& poly, double step) {
  if (poly.vertices.empty()) throw EmptyInput("sample_filled_polygon: empty polygon");
  if (!(step > 0.0)) throw DomainError("sample_filled_polygon: step must be positive");
  std::vector<Complex> out(poly.vertices);
  if (poly.vertices.size() == 2) {
    const Complex a = poly.vertices[0], b = poly.vertices[1];
    const int m = static_cast<int>(std::ceil(std::abs(b - a) / step));
    for (int i = 1; i < m; ++i) out.push_back(a + (b - a) * (static_cast<double>(i) / m));
    return out;
  }
  if (poly.vertices.size() >= 3) {
    double lo_r = poly.vertices[0].real(), hi_r = lo_r;
    double lo_i = poly.vertices[0].imag(), hi_i = lo_i;
    for (const Complex& v : poly.vertices) {
      lo_r = std::min(lo_r, v.real());
      hi_r = std::max(hi_r, v.real());
      lo_i = std::min(lo_i, v.imag());
      hi_i = std::max(hi_i, v.imag());
    }
    for (double x = lo_r; x <= hi_r + step * 0.5; x += step) {
      for (double y = lo_i; y <= hi_i + step * 0.5; y += step) {
        const Complex p(x, y);
        if (point_to_polygon(p, poly) == 0.0) out.push_back(p);
      }
    }
  }
  return out;
}

PolygonDistance dist_to_polygon(const PointCloud& cloud, const ConvexPolygon& poly) {
  if (cloud.empty()) throw EmptyInput("dist_to_polygon: empty cloud");
  if (poly.vertices.empty()) throw EmptyInput("dist_to_polygon: empty polygon");
  PolygonDistance out;
  for (const Complex& p : cloud.points) {
    out.sup_out = std::max(out.sup_out, point_to_polygon(p, poly));
  }
  GridIndex index(cloud.points, pick_cell_size(cloud.points, poly.vertices));
  for (const Complex& v : poly.vertices) {
    out.coverage = std::max(out.coverage, index.nearest_distance(v));
  }
  return out;
}

}  // namespace minvset
