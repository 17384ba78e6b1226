#pragma once

#include <random>
#include <vector>

#include "minvset/minvset.hpp"

namespace testing {

using minvset::BiPoly;
using minvset::Complex;
using minvset::DiffOp;
using minvset::Poly;

inline Poly P(std::initializer_list<Complex> coeffs) { return Poly(std::vector<Complex>(coeffs)); }

inline DiffOp Op(std::initializer_list<Poly> coeffs) {
  return DiffOp(std::vector<Poly>(coeffs));
}

constexpr Complex I{0.0, 1.0};

// T = x(x+1) d^2 + i d + 2
inline DiffOp levy_operator() { return Op({P({2.0}), P({I}), P({0.0, 1.0, 1.0})}); }

// T = (65x^2/64 - 31x/16 + 1/2) d^2 + (-3x/32 + 15/16) d - 27/32
inline DiffOp example74_operator() {
  return Op({P({-27.0 / 32}), P({15.0 / 16, -3.0 / 32}), P({0.5, -31.0 / 16, 65.0 / 64})});
}

// T(p) = (x^3 - 1) p''' + x p'
inline DiffOp triangle_operator() {
  return Op({Poly(), P({0.0, 1.0}), Poly(), P({-1.0, 0.0, 0.0, 1.0})});
}

// T = (x^2 - x + 1/4) d + 1
inline DiffOp cauliflower_operator() { return Op({P({1.0}), P({0.25, -1.0, 1.0})}); }

// T = (x^2 - x + i) d + 1
inline DiffOp dendrite_operator() { return Op({P({1.0}), P({I, -1.0, 1.0})}); }

// delta = (x^2 - 1) d^2 + 2x d (Legendre operator)
inline DiffOp legendre_operator() {
  return Op({Poly(), P({0.0, 2.0}), P({-1.0, 0.0, 1.0})});
}

inline double max_coeff_diff(const Poly& a, const Poly& b) {
  double worst = 0.0;
  const int top = std::max(a.degree(), b.degree());
  for (int i = 0; i <= top; ++i) worst = std::max(worst, std::abs(a.coeff(i) - b.coeff(i)));
  return worst;
}

inline double max_coeff_diff(const DiffOp& a, const DiffOp& b) {
  double worst = 0.0;
  const int top = std::max(a.order(), b.order());
  for (int j = 0; j <= top; ++j) worst = std::max(worst, max_coeff_diff(a.coeff(j), b.coeff(j)));
  return worst;
}

inline double max_coeff_diff(const BiPoly& a, const BiPoly& b) {
  double worst = 0.0;
  const int top = std::max(a.deg_z(), b.deg_z());
  for (int s = 0; s <= top; ++s) worst = std::max(worst, max_coeff_diff(a.z_coeff(s), b.z_coeff(s)));
  return worst;
}

inline Complex rand_complex(std::mt19937_64& rng, double radius = 1.0) {
  std::uniform_real_distribution<double> u(-radius, radius);
  return {u(rng), u(rng)};
}

/// Random exactly solvable operator of the requested order: deg Q_j <= j
/// with deg Q_k = k forced by a unit-scale leading coefficient.
inline DiffOp random_exactly_solvable(std::mt19937_64& rng, int order) {
  std::vector<Poly> qs;
  for (int j = 0; j <= order; ++j) {
    std::vector<Complex> c(static_cast<std::size_t>(j) + 1);
    for (auto& v : c) v = rand_complex(rng);
    if (j == order) {
      c.back() += Complex(1.5, 0.0);  // keep the leading degree exact
    }
    qs.emplace_back(std::move(c));
  }
  return DiffOp(std::move(qs));
}

}  // namespace testing
