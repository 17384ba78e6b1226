#include <doctest.h>

#include <random>

#include "helpers.hpp"

using namespace testing;
using namespace minvset;

namespace {

BiPoly affine_product(const std::vector<AffineMap>& maps, Complex scale) {
  BiPoly prod = BiPoly::from_x_poly(P({scale}));
  for (const AffineMap& m : maps) {
    prod = prod * BiPoly(std::vector<Poly>{P({-m.b, 1.0}), P({-m.a})});
  }
  return prod;
}

BiPoly hyp_bipoly(int n) {
  // (x - z)^2 - (z - 1)(z - 2)...(z - n)
  BiPoly b(std::vector<Poly>{P({0.0, 0.0, 1.0}), P({0.0, -2.0}), P({1.0})});
  std::vector<Complex> roots;
  for (int j = 1; j <= n; ++j) roots.emplace_back(j, 0);
  const Poly hyp = poly_from_roots(roots, Complex(1, 0));
  std::vector<Poly> sub;
  for (int s = 0; s <= hyp.degree(); ++s) sub.push_back(Poly::constant(hyp.coeff(s)));
  b -= BiPoly(std::move(sub));
  return b;
}

const std::vector<AffineMap> kMaps74{{Complex(-2.25, 0), Complex(1, 0)},
                                     {Complex(0.375, 0), Complex(1, 0)}};
const std::vector<AffineMap> kMapsLevy{{Complex(0.5, 0.5), Complex(0, 0)},
                                       {Complex(0.5, -0.5), Complex(-0.5, -0.5)}};

}  // namespace

TEST_CASE("psi fixtures") {
  // Order-two fixture: Psi equals the split affine product exactly.
  CHECK(max_coeff_diff(psi(example74_operator(), 2), affine_product(kMaps74, Complex(1, 0))) <=
        1e-13);

  // Psi of Q(x) d^n / n! is Q itself.
  const Poly q = P({-1.0, 2.0, 0.0, 1.0});
  std::vector<Complex> scaled(q.coeffs());
  for (auto& c : scaled) c /= 6.0;
  const DiffOp t = DiffOp::single_term(3, Poly(std::move(scaled)));
  CHECK(max_coeff_diff(psi(t, 3), BiPoly::from_x_poly(q)) <= 1e-14);

  // 4x^2 + (2 + 2i - 4z)x + 2z^2 - 2iz for the degree-two contraction pair.
  const BiPoly lv = psi(levy_operator(), 2);
  CHECK(max_coeff_diff(lv.z_coeff(0), P({0.0, Complex(2.0, 2.0), 4.0})) <= 1e-14);
  CHECK(max_coeff_diff(lv.z_coeff(1), P({Complex(0.0, -2.0), -4.0})) <= 1e-14);
  CHECK(max_coeff_diff(lv.z_coeff(2), P({2.0})) <= 1e-14);
}

TEST_CASE("phi special forms") {
  // deg Q = k: Q(x)/k! d^k
  const Poly q = P({1.0, -3.0, 0.0, 2.0});
  const DiffOp t = phi(BiPoly::from_x_poly(q), 3);
  CHECK(t.order() == 3);
  for (int j = 0; j < 3; ++j) CHECK(t.coeff(j).is_zero());
  std::vector<Complex> want(q.coeffs());
  for (auto& c : want) c /= 6.0;
  CHECK(max_coeff_diff(t.coeff(3), Poly(std::move(want))) <= 1e-14);

  // B = Q(z): alternating derivative form.
  const Poly qz = P({2.0, 1.0, -1.0});
  std::vector<Poly> zc;
  for (int s = 0; s <= qz.degree(); ++s) zc.push_back(Poly::constant(qz.coeff(s)));
  const DiffOp tz = phi(BiPoly(std::move(zc)), 3);
  DiffOp want_tz;
  for (int j = 0; j <= 3; ++j) {
    Poly term = poly_derive(qz, j) * Complex(1.0 / 6.0, 0.0);
    if (j % 2 == 1) term = -term;
    want_tz += DiffOp::single_term(3 - j, term);
  }
  CHECK(max_coeff_diff(tz, want_tz) <= 1e-14);

  CHECK_THROWS_AS(phi(hyp_bipoly(5), 3), DegreeTooHigh);
}

TEST_CASE("phi . psi round trip on random exactly solvable operators") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<int> ord(1, 5);
    const int k = ord(rng);
    const DiffOp t = random_exactly_solvable(rng, k);
    CHECK(max_coeff_diff(phi(psi(t, k), k), t) <= 1e-10);
  }
}

TEST_CASE("family operators") {
  // F_{0,1} = a
  const DiffOp f01 = family_operator(0, 1, P({Complex(2.5, -1.0)}));
  CHECK(f01.order() == 0);
  CHECK(max_coeff_diff(f01.coeff(0), P({Complex(2.5, -1.0)})) <= 1e-15);

  // F_{1,2} = (ax + b) d - 2a
  const Complex a(1.5, 0.5), b(-0.25, 0.0);
  const DiffOp f12 = family_operator(1, 2, P({b, a}));
  CHECK(max_coeff_diff(f12, Op({P({-2.0 * a}), P({b, a})})) <= 1e-15);

  // F_{2,3} = (ax^2 + bx + c) d^2 - (4ax + 2b) d + 6a
  const Complex c(0.75, -0.5);
  const DiffOp f23 = family_operator(2, 3, P({c, b, a}));
  CHECK(max_coeff_diff(f23, Op({P({6.0 * a}), P({-2.0 * b, -4.0 * a}), P({c, b, a})})) <= 1e-15);

  // Psi of the family is (n)_m Q(z) (x - z)^(n - m).
  const BiPoly fam = psi(f12, 2);
  BiPoly want = BiPoly(std::vector<Poly>{P({b * 2.0}), P({a * 2.0})}) *
                BiPoly(std::vector<Poly>{P({0.0, 1.0}), P({-1.0})});
  CHECK(max_coeff_diff(fam, want) <= 1e-14);

  CHECK_THROWS_AS(family_operator(2, 2, P({1.0})), DegreeViolation);
  CHECK_THROWS_AS(family_operator(1, 3, P({0.0, 0.0, 1.0})), DegreeViolation);
}

TEST_CASE("one point sets: sharp finite example") {
  for (int n = 2; n <= 5; ++n) {
    const DiffOp t = phi(hyp_bipoly(n), n);
    const OnePointReport report = one_point_sets(t, n, 1e-6);
    CHECK_FALSE(report.infinite_family);
    REQUIRE(report.points.size() == static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
      CHECK(std::abs(report.points[static_cast<std::size_t>(j - 1)].z0 - Complex(j, 0)) <= 1e-6);
      CHECK(report.points[static_cast<std::size_t>(j - 1)].kind == OnePointKind::SoleIntersection);
    }
  }
}

TEST_CASE("one point sets: infinite family and empty cases") {
  const OnePointReport fam = one_point_sets(family_operator(1, 2, P({1.0, 1.0})), 2, 1e-9);
  CHECK(fam.infinite_family);
  REQUIRE(fam.family_data.has_value());
  CHECK(fam.family_data->first == 1);

  // Fig. 3 operator at n = 1: double diagonal root at 1/2 but the slice
  // there has roots +-1/2, so no 1-point set exists.
  const OnePointReport none = one_point_sets(cauliflower_operator(), 1, 1e-9);
  CHECK_FALSE(none.infinite_family);
  CHECK(none.points.empty());

  CHECK_THROWS_AS(one_point_sets(DiffOp::identity(), 2, 1e-9), ConstantPsi);
}

TEST_CASE("one point count never exceeds n") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    std::uniform_int_distribution<int> ord(1, 4);
    const int k = ord(rng);
    const DiffOp t = random_exactly_solvable(rng, k);
    for (int n = std::max(1, k); n <= k + 2; ++n) {
      const OnePointReport r = one_point_sets(t, n, 1e-8);
      if (!r.infinite_family) CHECK(r.points.size() <= static_cast<std::size_t>(n));
    }
  }
}

TEST_CASE("linear slice extraction") {
  const auto zslice = extract_linear_in_z(psi(cauliflower_operator(), 1));
  REQUIRE(zslice.has_value());
  // z U(x) - V(x) with U = -1, V = -(x^2 + 1/4): the ratio is x^2 + 1/4.
  CHECK(max_coeff_diff(zslice->u, P({-1.0})) <= 1e-15);
  CHECK(max_coeff_diff(zslice->v, P({-0.25, 0.0, -1.0})) <= 1e-15);
  CHECK_FALSE(zslice->common_zero);

  const BiPoly bx(std::vector<Poly>{P({0.0, 1.0}), Poly(), P({0.0, 1.0}), P({-1.0})});
  const auto xslice = extract_linear_in_x(bx);
  REQUIRE(xslice.has_value());
  CHECK(max_coeff_diff(xslice->u, P({1.0, 0.0, 1.0})) <= 1e-15);   // z^2 + 1
  CHECK(max_coeff_diff(xslice->v, P({0.0, 0.0, 0.0, 1.0})) <= 1e-15);  // z^3

  const BiPoly sq(std::vector<Poly>{P({0.0, 0.0, 1.0}), P({0.0, -2.0}), P({1.0})});
  CHECK_FALSE(extract_linear_in_x(sq).has_value());
  CHECK_FALSE(extract_linear_in_z(BiPoly::from_x_poly(P({1.0, 1.0}))).has_value());
}

TEST_CASE("operator from an affine IFS") {
  CHECK(max_coeff_diff(operator_from_affine_ifs(kMaps74, Complex(1, 0)), example74_operator()) <=
        1e-13);
  CHECK(max_coeff_diff(operator_from_affine_ifs(kMapsLevy, Complex(4, 0)), levy_operator()) <=
        1e-13);

  const Complex c(0.7, -0.3);
  const DiffOp single = operator_from_affine_ifs({{Complex(0, 0), c}}, Complex(1, 0));
  CHECK(max_coeff_diff(single, Op({Poly(), P({-c, 1.0})})) <= 1e-14);

  CHECK_THROWS_AS(operator_from_affine_ifs(kMaps74, Complex(0, 0)), ZeroScale);
  CHECK_THROWS_AS(operator_from_affine_ifs({}, Complex(1, 0)), DomainError);
}

TEST_CASE("detect affine branches") {
  const auto maps74 = detect_affine_ifs(psi(example74_operator(), 2), 2, 1e-8);
  REQUIRE(maps74.has_value());
  REQUIRE(maps74->size() == 2);
  CHECK(std::abs((*maps74)[0].a - Complex(0.375, 0)) <= 1e-8);
  CHECK(std::abs((*maps74)[0].b - Complex(1, 0)) <= 1e-8);
  CHECK(std::abs((*maps74)[1].a - Complex(-2.25, 0)) <= 1e-8);
  CHECK(std::abs((*maps74)[1].b - Complex(1, 0)) <= 1e-8);

  const auto mapslv = detect_affine_ifs(psi(levy_operator(), 2), 2, 1e-8);
  REQUIRE(mapslv.has_value());
  CHECK(std::abs((*mapslv)[0].a - Complex(0.5, -0.5)) <= 1e-8);
  CHECK(std::abs((*mapslv)[0].b - Complex(-0.5, -0.5)) <= 1e-8);
  CHECK(std::abs((*mapslv)[1].a - Complex(0.5, 0.5)) <= 1e-8);
  CHECK(std::abs((*mapslv)[1].b) <= 1e-8);

  // Non-affine branches: x^2 = z.
  const BiPoly sqrt_curve(std::vector<Poly>{P({0.0, 0.0, 1.0}), P({-1.0})});
  CHECK_FALSE(detect_affine_ifs(sqrt_curve, 2, 1e-8).has_value());

  // Degree-dropping slices (deg_x != n).
  CHECK_FALSE(detect_affine_ifs(psi(dendrite_operator(), 1), 1, 1e-8).has_value());
}

TEST_CASE("IFS detection round trip") {
  std::mt19937_64 rng(314);
  for (int trial = 0; trial < 8; ++trial) {
    std::uniform_int_distribution<int> count(1, 4);
    const int k = count(rng);
    std::vector<AffineMap> maps;
    for (int j = 0; j < k; ++j) {
      Complex a = rand_complex(rng, 0.9);
      if (std::abs(a) < 0.05) a += Complex(0.3, 0.0);
      maps.push_back(AffineMap{a, rand_complex(rng, 1.0)});
    }
    const Complex scale = rand_complex(rng, 2.0) + Complex(3.0, 0.0);
    const auto found = detect_affine_ifs(psi(operator_from_affine_ifs(maps, scale), k), k, 1e-8);
    REQUIRE(found.has_value());
    REQUIRE(found->size() == maps.size());
    // Greedy-match recovered maps to the inputs (ordering is canonical but
    // not necessarily the input order).
    std::vector<bool> used(maps.size(), false);
    for (const AffineMap& got : *found) {
      bool matched = false;
      for (std::size_t j = 0; j < maps.size(); ++j) {
        if (!used[j] && std::abs(got.a - maps[j].a) <= 1e-8 &&
            std::abs(got.b - maps[j].b) <= 1e-8) {
          used[j] = true;
          matched = true;
          break;
        }
      }
      CHECK(matched);
    }
  }
}

TEST_CASE("pinned rational extraction") {
  // n = 1 reduces to the linear-in-z split of Psi.
  const DiffOp t1 = dendrite_operator();
  const auto [u1, v1] = extract_pinned_rational(t1, 1, Complex(0.4, 0.2));
  const auto lin = extract_linear_in_z(psi(t1, 1));
  REQUIRE(lin.has_value());
  CHECK(max_coeff_diff(u1, lin->u) <= 1e-14);
  CHECK(max_coeff_diff(v1, lin->v) <= 1e-14);

  // T2[(x-a)^2] = (x-a) T1[(x-a)] for the halved first-order coefficient.
  std::mt19937_64 rng(64);
  const Poly q1 = P({I, -1.0, 1.0});
  const DiffOp top1 = Op({P({1.0}), q1});
  std::vector<Complex> half(q1.coeffs());
  for (auto& c : half) c *= 0.5;
  const DiffOp top2 = Op({P({1.0}), Poly(std::move(half))});
  for (int trial = 0; trial < 5; ++trial) {
    const Complex a = rand_complex(rng, 1.5);
    const Poly lhs = top2.apply(poly_from_roots({a, a}, Complex(1, 0)));
    const Poly rhs = poly_from_roots({a}, Complex(1, 0)) * top1.apply(P({-a, 1.0}));
    CHECK(max_coeff_diff(lhs, rhs) <= 1e-13);
  }

  // The identity T((x-a)^{n-1}(x-z)) = zU - V holds by construction.
  for (int n = 2; n <= 4; ++n) {
    const Complex a = rand_complex(rng, 1.0);
    const auto [u, v] = extract_pinned_rational(levy_operator(), n, a);
    for (const Complex z : {Complex(0.1, -0.4), Complex(1.2, 0.8)}) {
      std::vector<Complex> roots(static_cast<std::size_t>(n - 1), a);
      roots.push_back(z);
      const Poly lhs = levy_operator().apply(poly_from_roots(roots, Complex(1, 0)));
      CHECK(max_coeff_diff(lhs, u * z - v) <= 1e-12);
    }
  }
}
