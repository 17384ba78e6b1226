#include "minvset/julia.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "minvset/rng.hpp"

namespace minvset {
namespace {

constexpr uint64_t kWalkStream = 0xC33;

double poly_scale(const Poly& p) {
  double m = 0.0;
  for (const auto& c : p.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

// Distinct values of a clustered root multiset.
std::vector<Complex> distinct(const std::vector<Complex>& roots, double tol) {
  std::vector<Complex> out;
  for (const Complex& r : roots) {
    bool seen = false;
    for (const Complex& o : out)
      if (std::abs(r - o) <= tol) seen = true;
    if (!seen) out.push_back(r);
  }
  return out;
}

}  // namespace

RationalMap make_rational(const Poly& v, const Poly& u, double tol) {
  RationalMap r;
  r.num = v;
  r.den = u;
  if (v.degree() >= 1 && u.degree() >= 1) {
    std::vector<Complex> rv = poly_roots(v).roots;
    std::vector<Complex> ru = poly_roots(u).roots;
    const double scale = 1.0 + std::max(poly_scale(v), poly_scale(u));
    bool changed = false;
    for (auto it = ru.begin(); it != ru.end();) {
      auto match = std::min_element(rv.begin(), rv.end(), [&](const Complex& a, const Complex& b) {
        return std::abs(a - *it) < std::abs(b - *it);
      });
      if (match != rv.end() && std::abs(*match - *it) <= tol * scale) {
        rv.erase(match);
        it = ru.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
    if (changed) {
      r.num = poly_from_roots(rv, v.leading());
      r.den = poly_from_roots(ru, u.leading());
      r.cancelled = true;
    }
  }
  return r;
}

RationalMap rational_from_operator(const DiffOp& t) {
  const BiPoly b = psi(t, 1);
  auto lin = linear_in_z(b);
  if (!lin || lin->first.is_zero()) throw DegenerateImage();
  return make_rational(lin->second, lin->first);
}

ExceptionalityReport is_nonexceptional(const RationalMap& r, double tol) {
  const int d = r.degree();
  if (d < 2) throw DegreeTooLow();
  const Poly& v = r.num;
  const Poly& u = r.den;
  ExceptionalityReport out;
  std::ostringstream reason;

  // Pairs (value, preimage) where the full preimage of `value` is a single
  // point of the sphere.
  struct Pair {
    ExtPoint value;
    ExtPoint pre;
  };
  std::vector<Pair> pairs;
  const double match_tol = tol * (1.0 + std::max(poly_scale(v), poly_scale(u)));

  // Value infinity: preimages are the zeros of U, plus infinity itself when
  // deg V > deg U.
  if (u.degree() == 0) {
    // Polynomial map: the only preimage of infinity is infinity.
    pairs.push_back({ExtPoint{{}, true}, ExtPoint{{}, true}});
  } else if (v.degree() <= u.degree()) {
    const std::vector<Complex> ru = distinct(poly_roots(u).roots, match_tol);
    if (ru.size() == 1) pairs.push_back({ExtPoint{{}, true}, ExtPoint{ru[0], false}});
  }

  // Finite totally ramified points: roots of V'U - VU' of multiplicity >= d-1.
  // Computed multiple roots scatter like eps^(1/multiplicity), so the
  // clustering and verification radii widen with the expected multiplicity.
  const Poly w = poly_derive(v, 1) * u - v * poly_derive(u, 1);
  if (w.degree() >= d - 1) {
    const std::vector<Complex> wr = poly_roots(w).roots;
    double wmax = 0.0;
    for (const Complex& x : wr) wmax = std::max(wmax, std::abs(x));
    const double cluster_r =
        10.0 * (1.0 + wmax) * std::pow(1e-15, 1.0 / std::max(1, d - 1)) + match_tol;
    for (const Complex& b0 : distinct(wr, cluster_r)) {
      int mult = 0;
      for (const Complex& x : wr)
        if (std::abs(x - b0) <= cluster_r) ++mult;
      if (mult < d - 1) continue;
      const Complex ub = poly_eval(u, b0);
      if (std::abs(ub) <= match_tol) continue;  // b maps to infinity; handled above
      const Complex val = poly_eval(v, b0) / ub;
      const Poly p = v - u * val;
      if (p.degree() != d) continue;  // infinity is also a preimage
      const double verify_r =
          10.0 * (1.0 + std::abs(b0)) * std::pow(1e-15, 1.0 / d) + std::sqrt(match_tol);
      bool all_at_b = true;
      for (const Complex& x : poly_roots(p).roots)
        if (std::abs(x - b0) > verify_r) all_at_b = false;
      if (all_at_b) pairs.push_back({ExtPoint{val, false}, ExtPoint{b0, false}});
    }
  }

  // Infinity as the sole preimage of a finite value.
  if (v.degree() <= u.degree()) {
    const Complex val = (v.degree() == u.degree()) ? v.leading() / u.leading() : Complex(0.0, 0.0);
    const Poly p = v - u * val;
    if (!p.is_zero() && p.degree() == 0) pairs.push_back({ExtPoint{val, false}, ExtPoint{{}, true}});
  }

  auto same = [&](const ExtPoint& a, const ExtPoint& b) {
    if (a.at_infinity || b.at_infinity) return a.at_infinity && b.at_infinity;
    return std::abs(a.value - b.value) <= std::sqrt(match_tol);
  };

  auto add_exceptional = [&](const ExtPoint& p) {
    for (const ExtPoint& q : out.exceptional_points)
      if (same(p, q)) return;
    out.exceptional_points.push_back(p);
  };

  for (const Pair& p : pairs) {
    if (same(p.value, p.pre)) add_exceptional(p.value);
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      if (same(pairs[i].value, pairs[j].pre) && same(pairs[j].value, pairs[i].pre)) {
        add_exceptional(pairs[i].value);
        add_exceptional(pairs[j].value);
      }
    }
  }

  bool contained_in_infinity = true;
  for (const ExtPoint& p : out.exceptional_points)
    if (!p.at_infinity) contained_in_infinity = false;

  bool second_clause = false;
  if (v.degree() > u.degree()) {
    second_clause = true;  // R(inf) = inf
    reason << "R(inf)=inf";
  } else {
    const Complex c = (v.degree() == u.degree()) ? v.leading() / u.leading() : Complex(0.0, 0.0);
    const Poly p = v - u * c;
    std::vector<Complex> finite_pre;
    if (p.degree() >= 1) finite_pre = distinct(poly_roots(p).roots, std::sqrt(match_tol));
    const bool equals_c =
        finite_pre.size() == 1 && std::abs(finite_pre[0] - c) <= std::sqrt(match_tol);
    second_clause = !equals_c;
    reason << "R(inf) finite; preimage test " << (second_clause ? "passed" : "failed");
    if (v.degree() == u.degree()) reason << " [deg V = deg U boundary case]";
  }

  out.nonexceptional = contained_in_infinity && second_clause;
  if (!contained_in_infinity) reason << "; finite exceptional point present";
  out.reason = reason.str();
  return out;
}

JuliaCloud julia_backward(const RationalMap& r, const IterationConfig& cfg) {
  const int d = r.degree();
  if (d < 2) throw DegreeTooLow();
  const Poly& v = r.num;
  const Poly& u = r.den;

  ExceptionalityReport exc;
  try {
    exc = is_nonexceptional(r);
  } catch (const Error&) {
  }
  auto near_exceptional = [&](const Complex& z) {
    for (const ExtPoint& p : exc.exceptional_points)
      if (!p.at_infinity && std::abs(z - p.value) <= 1e-9) return true;
    return false;
  };

  JuliaCloud out;

  // Repelling fixed point start: roots of V(x) - x U(x) with |R'| > 1.
  // Indifferent fixed points also lie in the Julia set and make a sound
  // (flagged) start when no repelling one exists; a random start is the
  // last resort.
  const Poly fixed_poly = v - shift_up(u, 1);
  const Poly w = poly_derive(v, 1) * u - v * poly_derive(u, 1);
  std::vector<Complex> repelling;
  std::vector<Complex> indifferent;
  if (fixed_poly.degree() >= 1) {
    for (const Complex& z : poly_roots(fixed_poly).roots) {
      const Complex uz = poly_eval(u, z);
      if (std::abs(uz) < 1e-300) continue;
      const double mult = std::abs(poly_eval(w, z)) / std::norm(uz);
      if (near_exceptional(z)) continue;
      if (mult > 1.0 + 1e-9) {
        repelling.push_back(z);
      } else if (mult > 1.0 - 1e-9) {
        indifferent.push_back(z);
      }
    }
  }
  std::sort(repelling.begin(), repelling.end(), lex_less);
  std::sort(indifferent.begin(), indifferent.end(), lex_less);
  bool start_in_julia = true;
  if (!repelling.empty()) {
    out.start = repelling.front();
  } else if (!indifferent.empty()) {
    out.start = indifferent.front();
    out.fallback_start = true;
  } else {
    out.fallback_start = true;
    start_in_julia = false;
    uint64_t salt = 1;
    do {
      const uint64_t h = rng::hash_keys({cfg.rng_seed, kWalkStream, 0xF0, salt++});
      out.start = std::polar(0.25 + rng::u01(h), 2.0 * std::numbers::pi * rng::u01(h ^ 0x9e37));
    } while (near_exceptional(out.start));
  }

  constexpr int kWalkers = 4;
  constexpr int kBurnIn = 64;
  std::array<Complex, kWalkers> pos;
  pos.fill(out.start);
  std::array<uint64_t, kWalkers> step_count{};

  auto advance = [&](int walker, std::vector<Complex>* collect) {
    Complex& z = pos[static_cast<std::size_t>(walker)];
    const Poly p = v - u * z;
    uint64_t& t = step_count[static_cast<std::size_t>(walker)];
    ++t;
    if (p.degree() < 1) {
      z = out.start;  // totally ramified dead end; restart the walker
      return;
    }
    std::vector<Complex> roots;
    try {
      roots = poly_roots(p, cfg.root_tol).roots;
    } catch (const NonConvergence& e) {
      roots = e.best_roots;
    }
    const uint64_t h =
        rng::hash_keys({cfg.rng_seed, kWalkStream, static_cast<uint64_t>(walker), t});
    z = roots[rng::index(h, roots.size())];
    if (collect) collect->push_back(z);
  };

  for (int walker = 0; walker < kWalkers; ++walker)
    for (int i = 0; i < kBurnIn; ++i) advance(walker, nullptr);

  PointCloud cloud;
  cloud.resolution = cfg.eps;
  const int round_len = 4096;
  const int max_rounds = std::max(64, cfg.max_iter);
  int stale_rounds = 0;
  for (int round = 0; round < max_rounds && stale_rounds < cfg.stall_window; ++round) {
    std::vector<Complex> batch;
    batch.reserve(static_cast<std::size_t>(round_len) * kWalkers);
    for (int walker = 0; walker < kWalkers; ++walker)
      for (int i = 0; i < round_len; ++i) advance(walker, &batch);
    batch.insert(batch.end(), cloud.points.begin(), cloud.points.end());
    PointCloud next = grid_snap(batch, cfg.eps);
    stale_rounds = (next.size() == cloud.size()) ? stale_rounds + 1 : 0;
    cloud = std::move(next);
  }
  if (start_in_julia) {
    cloud = grid_snap([&] {
      std::vector<Complex> pts(cloud.points);
      pts.push_back(out.start);
      return pts;
    }(), cfg.eps);
  }

  // Uniform root selection under-samples slowly repelling regions (around a
  // parabolic point the walk essentially never enters the cusp). Refinement
  // sweeps fix that: replace the cloud by the union with its full preimage
  // until the movement stays below eps, mirroring the complete backward
  // invariance of the Julia set.
  int quiet = 0;
  for (int sweep = 0; sweep < max_rounds && quiet < cfg.stall_window; ++sweep) {
    std::vector<Complex> batch(cloud.points);
    for (const Complex& z : cloud.points) {
      const Poly p = v - u * z;
      if (p.degree() < 1) continue;
      std::vector<Complex> roots;
      try {
        roots = poly_roots(p, cfg.root_tol).roots;
      } catch (const NonConvergence& e) {
        roots = e.best_roots;
      }
      batch.insert(batch.end(), roots.begin(), roots.end());
    }
    PointCloud next = grid_snap(batch, cfg.eps);
    const double moved = hausdorff(cloud, next);
    quiet = moved < cfg.eps ? quiet + 1 : 0;
    cloud = std::move(next);
  }
  out.cloud = std::move(cloud);
  return out;
}

CrossValidation cross_validate_m1(const DiffOp& t, const IterationConfig& cfg) {
  CrossValidation out;
  out.engine = minimal_invariant_set(t, 1, IterationMode::Hutchinson, cfg);
  out.backward = julia_backward(rational_from_operator(t), cfg);
  out.hausdorff_distance = hausdorff(out.engine.cloud, out.backward.cloud);
  std::ostringstream text;
  text << "M_1 engine cloud: " << out.engine.cloud.size() << " cells; inverse iteration: "
       << out.backward.cloud.size() << " cells; Hausdorff distance " << out.hausdorff_distance;
  out.report = text.str();
  return out;
}

}  // namespace minvset
