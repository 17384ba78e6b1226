#include <doctest.h>

#include <random>

#include "exact_scalar.hpp"

using exact::EBiPoly;
using exact::EOp;
using exact::EPoly;
using exact::GaussRat;
using exact::Rat;
using minvset::binomial_s;
using minvset::falling_factorial_s;
using minvset::family_operator;
using minvset::phi;
using minvset::poly_derive;
using minvset::poly_from_roots;
using minvset::psi;
using minvset::shift_up;

namespace {

GaussRat rand_coeff(std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> small(-3, 3);
  return GaussRat(Rat(small(rng)), Rat(small(rng)));
}

EPoly rand_poly(std::mt19937_64& rng, int deg) {
  std::vector<GaussRat> c(static_cast<std::size_t>(deg) + 1);
  for (auto& v : c) v = rand_coeff(rng);
  if (c.back() == GaussRat(0)) c.back() = GaussRat(1);
  return EPoly(std::move(c));
}

// B = Q(z) * (x - z)^p as an exact bivariate polynomial.
EBiPoly q_of_z_times_power(const EPoly& q, int p) {
  std::vector<EPoly> qz;
  for (int s = 0; s <= q.degree(); ++s) {
    qz.push_back(EPoly::constant(q.coeff(s)));
  }
  EBiPoly b(std::move(qz));
  const EBiPoly xmz(std::vector<EPoly>{
      EPoly(std::vector<GaussRat>{GaussRat(0), GaussRat(1)}),
      EPoly::constant(GaussRat(-1))});
  for (int i = 0; i < p; ++i) b = b * xmz;
  return b;
}

EBiPoly q_of_x_times_power(const EPoly& q, int p) {
  EBiPoly b = EBiPoly::from_x_poly(q);
  const EBiPoly xmz(std::vector<EPoly>{
      EPoly(std::vector<GaussRat>{GaussRat(0), GaussRat(1)}),
      EPoly::constant(GaussRat(-1))});
  for (int i = 0; i < p; ++i) b = b * xmz;
  return b;
}

}  // namespace

TEST_CASE("exact basis identity for the two-point polynomials") {
  // (-1)^(n-m) (x - 1/2)^m = sum_k (-1)^k p_{k,n}(x) C(n-m, k),
  // with p_{k,n} = (x - 1/2)^(n-k) (x + 1/2)^k, checked exactly.
  const GaussRat half(Rat(1, 2));
  for (int n = 0; n <= 8; ++n) {
    for (int m = 0; m <= n; ++m) {
      EPoly lhs = poly_from_roots(std::vector<GaussRat>(static_cast<std::size_t>(m), half),
                                  GaussRat(1));
      if ((n - m) % 2 == 1) lhs = -lhs;

      EPoly rhs;
      for (int k = 0; k <= n - m; ++k) {
        std::vector<GaussRat> roots;
        for (int r = 0; r < n - k; ++r) roots.push_back(half);
        for (int r = 0; r < k; ++r) roots.push_back(-half);
        EPoly term = poly_from_roots(roots, GaussRat(1)) * binomial_s<GaussRat>(n - m, k);
        if (k % 2 == 1) term = -term;
        rhs += term;
      }
      CHECK(exact::poly_eq(lhs, rhs));
    }
  }
}

TEST_CASE("exact derivative linearity and Leibniz rule") {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 10; ++trial) {
    std::uniform_int_distribution<int> deg(0, 6);
    const EPoly p = rand_poly(rng, deg(rng));
    const EPoly q = rand_poly(rng, deg(rng));
    CHECK(exact::poly_eq(poly_derive(p + q, 1), poly_derive(p, 1) + poly_derive(q, 1)));
    CHECK(exact::poly_eq(poly_derive(p * q, 1),
                         poly_derive(p, 1) * q + p * poly_derive(q, 1)));
  }
}

TEST_CASE("exact inverse-map identities") {
  std::mt19937_64 rng(909);
  std::uniform_int_distribution<int> kdist(1, 6);

  for (int trial = 0; trial < 6; ++trial) {
    const int k = kdist(rng);

    // (i) Phi_k( (k)_m Q(x) (x-z)^(k-m) ) = Q(x) d^m for deg Q <= m
    for (int m = 0; m <= k; ++m) {
      std::uniform_int_distribution<int> qd(0, m);
      const EPoly q = rand_poly(rng, qd(rng));
      const EBiPoly b = q_of_x_times_power(q, k - m) * falling_factorial_s<GaussRat>(k, m);
      CHECK(exact::op_eq(phi(b, k), EOp::single_term(m, q)));
    }

    // (ii) deg Q = k: Phi_k(Q) = Q/k! d^k
    {
      const EPoly q = rand_poly(rng, k);
      const EOp t = phi(EBiPoly::from_x_poly(q), k);
      std::vector<GaussRat> scaled(q.coeffs());
      const GaussRat kfact = falling_factorial_s<GaussRat>(k, k);
      for (auto& c : scaled) c = c / kfact;
      CHECK(exact::op_eq(t, EOp::single_term(k, EPoly(std::move(scaled)))));
    }

    // (iii) deg Q <= k - l: Phi_k(Q(x) z^l) = (Q/k!) sum_j (-1)^j (l)_j x^(l-j) d^(k-j)
    for (int l = 0; l <= k; ++l) {
      std::uniform_int_distribution<int> qd(0, k - l);
      const EPoly q = rand_poly(rng, qd(rng));
      std::vector<EPoly> zc(static_cast<std::size_t>(l) + 1);
      zc[static_cast<std::size_t>(l)] = q;
      const EOp t = phi(EBiPoly(std::move(zc)), k);
      EOp want;
      const GaussRat kfact = falling_factorial_s<GaussRat>(k, k);
      for (int j = 0; j <= l; ++j) {
        EPoly term = shift_up(q, l - j) * (falling_factorial_s<GaussRat>(l, j) / kfact);
        if (j % 2 == 1) term = -term;
        want += EOp::single_term(k - j, term);
      }
      CHECK(exact::op_eq(t, want));
    }

    // (iv) deg Q <= k: Phi_k(Q(z)) = (1/k!) sum_j (-1)^j Q^(j)(x) d^(k-j)
    // (v) the same multiplied by x^l
    for (int l = 0; l <= 2; ++l) {
      std::uniform_int_distribution<int> qd(0, k);
      const EPoly q = rand_poly(rng, qd(rng));
      std::vector<EPoly> zc;
      for (int s = 0; s <= q.degree(); ++s) {
        zc.push_back(shift_up(EPoly::constant(q.coeff(s)), l));
      }
      const EOp t = phi(EBiPoly(std::move(zc)), k);
      EOp want;
      const GaussRat kfact = falling_factorial_s<GaussRat>(k, k);
      for (int j = 0; j <= k; ++j) {
        EPoly term = poly_derive(q, j);
        if (term.is_zero()) continue;
        term = shift_up(term, l);
        std::vector<GaussRat> cs(term.coeffs());
        for (auto& c : cs) c = c / kfact;
        term = EPoly(std::move(cs));
        if (j % 2 == 1) term = -term;
        want += EOp::single_term(k - j, term);
      }
      CHECK(exact::op_eq(t, want));
    }

    // (vi) deg Q <= m: Phi_k(Q(z)(x-z)^(k-m)) = F_{m,k}(Q) / (k)_m
    for (int m = 0; m < k; ++m) {
      std::uniform_int_distribution<int> qd(0, m);
      const EPoly q = rand_poly(rng, qd(rng));
      const EOp t = phi(q_of_z_times_power(q, k - m), k);
      EOp fam = family_operator(m, k, q);
      const GaussRat ffmk = falling_factorial_s<GaussRat>(k, m);
      std::vector<EPoly> scaled;
      for (int j = 0; j <= fam.order(); ++j) {
        std::vector<GaussRat> cs(fam.coeff(j).coeffs());
        for (auto& c : cs) c = c / ffmk;
        scaled.emplace_back(std::move(cs));
      }
      CHECK(exact::op_eq(t, EOp(std::move(scaled))));
    }
  }
}

TEST_CASE("exact psi . phi identity on bivariate inputs") {
  std::mt19937_64 rng(111);
  for (int trial = 0; trial < 8; ++trial) {
    std::uniform_int_distribution<int> kdist(1, 5);
    const int k = kdist(rng);
    // Random bivariate polynomial of total degree <= k.
    std::vector<EPoly> zc;
    for (int s = 0; s <= k; ++s) {
      std::vector<GaussRat> c(static_cast<std::size_t>(k - s) + 1);
      for (auto& v : c) v = rand_coeff(rng);
      zc.emplace_back(std::move(c));
    }
    const EBiPoly b(std::move(zc));
    if (b.is_zero()) continue;
    CHECK(exact::bipoly_eq(psi(phi(b, k), k), b));
  }
}

TEST_CASE("exact curve factorization for the order-two fixture") {
  // With a1 = -9/4, a2 = 3/8, b1 = b2 = 1, the operator's curve splits as
  // (x - (a1 z + b1))(x - (a2 z + b2)), exactly.
  const GaussRat a1(Rat(-9, 4)), a2(Rat(3, 8)), b1(1), b2(1);
  const auto factor = [](const GaussRat& a, const GaussRat& b) {
    return EBiPoly(std::vector<EPoly>{
        EPoly(std::vector<GaussRat>{-b, GaussRat(1)}), EPoly::constant(-a)});
  };
  const EBiPoly product = factor(a1, b1) * factor(a2, b2);

  const GaussRat half(Rat(1, 2));
  const EOp t(std::vector<EPoly>{
      EPoly(std::vector<GaussRat>{GaussRat(Rat(-27, 32))}),
      EPoly(std::vector<GaussRat>{GaussRat(Rat(15, 16)), GaussRat(Rat(-3, 32))}),
      EPoly(std::vector<GaussRat>{half, GaussRat(Rat(-31, 16)), GaussRat(Rat(65, 64))})});
  CHECK(exact::bipoly_eq(psi(t, 2), product));
  CHECK(exact::op_eq(phi(product, 2), t));
}
