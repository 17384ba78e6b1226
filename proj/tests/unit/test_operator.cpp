#include <doctest.h>

#include <random>

#include "helpers.hpp"

using namespace testing;
using namespace minvset;

TEST_CASE("fuchs index and classification flags") {
  const DiffOp ddx = Op({Poly(), P({1.0})});
  CHECK(fuchs_index(ddx) == -1);
  CHECK_FALSE(is_exactly_solvable(ddx));
  CHECK_FALSE(is_nondegenerate(ddx));

  CHECK(fuchs_index(triangle_operator()) == 0);
  CHECK(is_exactly_solvable(triangle_operator()));
  CHECK(is_nondegenerate(triangle_operator()));

  CHECK(fuchs_index(levy_operator()) == 0);

  const DiffOp xd2 = Op({Poly(), P({1.0}), P({0.0, 1.0})});  // x d^2 + d
  CHECK(fuchs_index(xd2) == -1);
  CHECK_FALSE(is_exactly_solvable(xd2));
  CHECK_FALSE(is_nondegenerate(xd2));

  CHECK_THROWS_AS(fuchs_index(DiffOp()), ZeroOperator);
}

TEST_CASE("apply") {
  // Fig. 3 operator maps (x - z) to x^2 + 1/4 - z.
  const DiffOp t = cauliflower_operator();
  for (const Complex z : {Complex(0.3, -1.2), Complex(-2.0, 0.5)}) {
    const Poly img = t.apply(P({-z, 1.0}));
    CHECK(max_coeff_diff(img, P({Complex(0.25, 0.0) - z, 0.0, 1.0})) <= 1e-15);
  }

  // lambda_2 = 1 for the order-two fixture: T(x^2) = (x - 1)^2.
  const Poly img2 = example74_operator().apply(P({0.0, 0.0, 1.0}));
  CHECK(max_coeff_diff(img2, P({1.0, -2.0, 1.0})) <= 1e-14);

  CHECK(levy_operator().apply(Poly()).is_zero());
}

TEST_CASE("symbol eigenvalues") {
  const auto l74 = symbol_eigenvalues(example74_operator(), 2);
  CHECK(std::abs(l74[0] - Complex(-27.0 / 32, 0)) <= 1e-12);
  CHECK(std::abs(l74[1] - Complex(-15.0 / 16, 0)) <= 1e-12);
  CHECK(std::abs(l74[2] - Complex(1.0, 0)) <= 1e-12);

  const auto ld = symbol_eigenvalues(legendre_operator(), 4);
  for (int i = 0; i <= 4; ++i) {
    CHECK(std::abs(ld[static_cast<std::size_t>(i)] - Complex(i * (i + 1.0), 0)) <= 1e-12);
  }

  const auto lc = symbol_eigenvalues(Op({P({Complex(2.0, 1.0)})}), 3);
  for (const Complex& l : lc) CHECK(std::abs(l - Complex(2.0, 1.0)) <= 1e-15);

  CHECK_THROWS_AS(symbol_eigenvalues(Op({Poly(), P({1.0})}), 2), NotExactlySolvable);
}

TEST_CASE("eigenpolynomials") {
  const Poly p2 = eigenpolynomial(legendre_operator(), 2);
  CHECK(max_coeff_diff(p2, P({-1.0 / 3, 0.0, 1.0})) <= 1e-12);
  CHECK(max_coeff_diff(eigenpolynomial(legendre_operator(), 1), P({0.0, 1.0})) <= 1e-12);

  const DiffOp xd = Op({Poly(), P({0.0, 1.0})});
  CHECK(max_coeff_diff(eigenpolynomial(xd, 3), P({0.0, 0.0, 0.0, 1.0})) <= 1e-12);

  // x^2 d^2 has lambda_0 = lambda_1 = 0: degree-1 eigenpolynomials not unique.
  const DiffOp x2d2 = Op({Poly(), Poly(), P({0.0, 0.0, 1.0})});
  CHECK_THROWS_AS(eigenpolynomial(x2d2, 1), ResonantSpectrum);
}

TEST_CASE("eigen residual invariant") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 12; ++trial) {
    std::uniform_int_distribution<int> ord(1, 4);
    const DiffOp t = random_exactly_solvable(rng, ord(rng));
    for (int n = 1; n <= 5; ++n) {
      Poly p;
      try {
        p = eigenpolynomial(t, n);
      } catch (const ResonantSpectrum&) {
        continue;
      }
      const Complex lam = symbol_eigenvalues(t, n)[static_cast<std::size_t>(n)];
      double pnorm = 0.0;
      for (const auto& c : p.coeffs()) pnorm = std::max(pnorm, std::abs(c));
      CHECK(max_coeff_diff(t.apply(p), p * lam) <= 1e-10 * pnorm);
    }
  }
}

TEST_CASE("compose") {
  const DiffOp ddx = Op({Poly(), P({1.0})});
  const DiffOp mul_x = Op({P({0.0, 1.0})});
  const DiffOp prod = compose(ddx, mul_x);
  CHECK(max_coeff_diff(prod, Op({P({1.0}), P({0.0, 1.0})})) <= 1e-15);

  const DiffOp delta2 = compose(legendre_operator(), legendre_operator());
  CHECK(std::abs(symbol_eigenvalues(delta2, 2)[2] - Complex(36.0, 0)) <= 1e-12);
}

TEST_CASE("Legendre polynomial pipeline breaks interval preservation") {
  const DiffOp delta = legendre_operator();
  const DiffOp id = DiffOp::identity();
  DiffOp shifted = delta;
  shifted -= id * Complex(6.0, 0.0);
  const DiffOp t = id + compose(shifted, shifted);

  const Poly img = t.apply(P({0.0, 0.0, 1.5}));
  CHECK(max_coeff_diff(img, P({18.0, 0.0, 1.5})) <= 1e-10);
  for (const Complex& r : poly_roots(img).roots) {
    CHECK(std::abs(r.imag()) > 1.0);  // non-real zeros
  }
}

TEST_CASE("composition coherence on random operators") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    std::uniform_int_distribution<int> ord(0, 3);
    const DiffOp t1 = random_exactly_solvable(rng, ord(rng));
    const DiffOp t2 = random_exactly_solvable(rng, ord(rng));
    const DiffOp both = compose(t1, t2);
    std::vector<Complex> c(7);
    for (auto& v : c) v = rand_complex(rng);
    const Poly p(std::move(c));
    CHECK(max_coeff_diff(both.apply(p), t1.apply(t2.apply(p))) <= 1e-11);
  }
}

TEST_CASE("operator_from_eigenpairs") {
  const DiffOp delta = operator_from_eigenpairs(
      std::vector<Poly>{P({1.0}), P({0.0, 1.0}), P({-1.0 / 3, 0.0, 1.0})},
      std::vector<Complex>{Complex(0, 0), Complex(2, 0), Complex(6, 0)});
  CHECK(max_coeff_diff(delta, legendre_operator()) <= 1e-12);

  const DiffOp ident = operator_from_eigenpairs(
      std::vector<Poly>{P({1.0}), P({0.0, 1.0}), P({0.0, 0.0, 1.0})},
      std::vector<Complex>{Complex(1, 0), Complex(1, 0), Complex(1, 0)});
  CHECK(max_coeff_diff(ident, DiffOp::identity()) <= 1e-14);

  // Alternating signs give the reflection x -> -x on C_4[x].
  std::vector<Poly> monomials;
  std::vector<Complex> signs;
  for (int j = 0; j <= 4; ++j) {
    monomials.push_back(Poly::monomial(j));
    signs.push_back(Complex(j % 2 == 0 ? 1.0 : -1.0, 0.0));
  }
  const DiffOp refl = operator_from_eigenpairs(monomials, signs);
  const OperatorMatrix m = matrix_on_Cn(refl, 4);
  for (int i = 0; i <= 4; ++i) {
    for (int j = 0; j <= 4; ++j) {
      const Complex want = i == j ? signs[static_cast<std::size_t>(i)] : Complex(0, 0);
      CHECK(std::abs(m.entries(i, j) - want) <= 1e-12);
    }
  }
}

TEST_CASE("eigenpair extraction round trip") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 8; ++trial) {
    std::uniform_int_distribution<int> ord(1, 4);
    const int k = ord(rng);
    const DiffOp t = random_exactly_solvable(rng, k);
    std::vector<Poly> polys;
    std::vector<Complex> lambdas;
    bool resonant = false;
    for (int j = 0; j <= k; ++j) {
      try {
        polys.push_back(j == 0 ? P({1.0}) : eigenpolynomial(t, j));
      } catch (const ResonantSpectrum&) {
        resonant = true;
        break;
      }
      lambdas.push_back(symbol_eigenvalues(t, j)[static_cast<std::size_t>(j)]);
    }
    if (resonant) continue;
    CHECK(max_coeff_diff(operator_from_eigenpairs(polys, lambdas), t) <= 1e-9);
  }
}

TEST_CASE("matrix_on_Cn") {
  const OperatorMatrix md = matrix_on_Cn(Op({Poly(), P({1.0})}), 2);
  CHECK_FALSE(md.overflow);
  CHECK(std::abs(md.entries(0, 1) - Complex(1, 0)) <= 1e-15);
  CHECK(std::abs(md.entries(1, 2) - Complex(2, 0)) <= 1e-15);
  CHECK(std::abs(md.entries(0, 0)) == 0.0);

  // x^2 d raises degree: the overflow flag must be set.
  const OperatorMatrix mx = matrix_on_Cn(Op({Poly(), P({0.0, 0.0, 1.0})}), 2);
  CHECK(mx.overflow);

  const OperatorMatrix m74 = matrix_on_Cn(example74_operator(), 2);
  CHECK(std::abs(m74.entries(0, 0) - Complex(-27.0 / 32, 0)) <= 1e-14);
  CHECK(std::abs(m74.entries(1, 1) - Complex(-15.0 / 16, 0)) <= 1e-14);
  CHECK(std::abs(m74.entries(2, 2) - Complex(1.0, 0)) <= 1e-14);
}

TEST_CASE("triangularity of exactly solvable operators") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::uniform_int_distribution<int> ord(1, 4);
    const DiffOp t = random_exactly_solvable(rng, ord(rng));
    const OperatorMatrix m = matrix_on_Cn(t, 8);
    CHECK_FALSE(m.overflow);
    for (int i = 0; i <= 8; ++i)
      for (int j = 0; j < i; ++j) CHECK(std::abs(m.entries(i, j)) <= 1e-13);
  }
}

TEST_CASE("spectrum growth in the leading-symbol window") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    std::uniform_int_distribution<int> ord(1, 4);
    const int k = ord(rng);
    const DiffOp t = random_exactly_solvable(rng, k);
    const int lo = 10 * k;
    const auto lambdas = symbol_eigenvalues(t, lo + 10);
    for (int i = lo; i < lo + 10; ++i) {
      CHECK(std::abs(lambdas[static_cast<std::size_t>(i + 1)]) >
            std::abs(lambdas[static_cast<std::size_t>(i)]));
    }
  }
}

TEST_CASE("detect_scalar_power") {
  const auto ident = detect_scalar_power(DiffOp::identity(), 3, 4, 1e-10);
  REQUIRE(ident.has_value());
  CHECK(ident->first == 1);
  CHECK(std::abs(ident->second - Complex(1, 0)) <= 1e-14);

  std::vector<Poly> monomials;
  std::vector<Complex> signs;
  for (int j = 0; j <= 4; ++j) {
    monomials.push_back(Poly::monomial(j));
    signs.push_back(Complex(j % 2 == 0 ? 1.0 : -1.0, 0.0));
  }
  const DiffOp refl = operator_from_eigenpairs(monomials, signs);
  const auto rp = detect_scalar_power(refl, 4, 6, 1e-9);
  REQUIRE(rp.has_value());
  CHECK(rp->first == 2);
  CHECK(std::abs(rp->second - Complex(1, 0)) <= 1e-12);

  CHECK_FALSE(detect_scalar_power(example74_operator(), 2, 12, 1e-8).has_value());

  // d/dx is nilpotent on C_2[x]: the restriction is singular.
  CHECK_THROWS_AS(detect_scalar_power(Op({Poly(), P({1.0})}), 2, 3, 1e-9), SingularRestriction);
}

TEST_CASE("fundamental polygon") {
  const ConvexPolygon tri = fundamental_polygon(triangle_operator());
  REQUIRE(tri.vertices.size() == 3);
  for (const Complex& v : tri.vertices) {
    CHECK(std::abs(std::pow(v, 3) - Complex(1, 0)) <= 1e-9);
  }

  const ConvexPolygon pt = fundamental_polygon(cauliflower_operator());
  REQUIRE(pt.vertices.size() == 1);
  CHECK(std::abs(pt.vertices[0] - Complex(0.5, 0.0)) <= 1e-7);

  const Complex a(1.5, -2.0);
  const ConvexPolygon single = fundamental_polygon(Op({Poly(), P({-a, 1.0})}));
  REQUIRE(single.vertices.size() == 1);
  CHECK(std::abs(single.vertices[0] - a) <= 1e-12);

  CHECK_THROWS_AS(fundamental_polygon(Op({Poly(), P({1.0})})), ConstantLeadingCoefficient);
}
