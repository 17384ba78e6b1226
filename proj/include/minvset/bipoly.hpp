#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "minvset/poly.hpp"

namespace minvset {

/// Bivariate polynomial B(x, z) stored z-major: zc[s] is the coefficient of
/// z^s as a polynomial in x. Trailing zero entries are trimmed, so deg_z is
/// the index of the last stored entry.
template <typename S>
class BivariatePoly {
 public:
  BivariatePoly() = default;

  explicit BivariatePoly(std::vector<Polynomial<S>> z_coeffs) : zc_(std::move(z_coeffs)) {
    trim();
  }

  static BivariatePoly from_x_poly(Polynomial<S> p) {
    return BivariatePoly(std::vector<Polynomial<S>>{std::move(p)});
  }

  bool is_zero() const { return zc_.empty(); }

  bool is_constant() const { return total_degree() <= 0; }

  /// -1 for the zero polynomial.
  int deg_z() const { return static_cast<int>(zc_.size()) - 1; }

  int deg_x() const {
    int d = -1;
    for (const auto& p : zc_) d = std::max(d, p.degree());
    return d;
  }

  /// max{i + j : coefficient of x^i z^j nonzero}; -1 for zero.
  int total_degree() const {
    int d = -1;
    for (int s = 0; s < static_cast<int>(zc_.size()); ++s) {
      if (!zc_[s].is_zero()) d = std::max(d, s + zc_[s].degree());
    }
    return d;
  }

  const std::vector<Polynomial<S>>& z_coeffs() const { return zc_; }

  const Polynomial<S>& z_coeff(int s) const {
    static const Polynomial<S> zero;
    if (s < 0 || s >= static_cast<int>(zc_.size())) return zero;
    return zc_[static_cast<std::size_t>(s)];
  }

  /// Coefficient of x^i z^j.
  S coeff(int i, int j) const { return z_coeff(j).coeff(i); }

  BivariatePoly& operator+=(const BivariatePoly& o) {
    if (zc_.size() < o.zc_.size()) zc_.resize(o.zc_.size());
    for (std::size_t s = 0; s < o.zc_.size(); ++s) zc_[s] += o.zc_[s];
    trim();
    return *this;
  }

  BivariatePoly& operator-=(const BivariatePoly& o) {
    if (zc_.size() < o.zc_.size()) zc_.resize(o.zc_.size());
    for (std::size_t s = 0; s < o.zc_.size(); ++s) zc_[s] -= o.zc_[s];
    trim();
    return *this;
  }

  friend BivariatePoly operator+(BivariatePoly a, const BivariatePoly& b) { return a += b; }
  friend BivariatePoly operator-(BivariatePoly a, const BivariatePoly& b) { return a -= b; }

  friend BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) {
    if (a.is_zero() || b.is_zero()) return BivariatePoly();
    std::vector<Polynomial<S>> out(a.zc_.size() + b.zc_.size() - 1);
    for (std::size_t i = 0; i < a.zc_.size(); ++i)
      for (std::size_t j = 0; j < b.zc_.size(); ++j) out[i + j] += a.zc_[i] * b.zc_[j];
    return BivariatePoly(std::move(out));
  }

  friend BivariatePoly operator*(const BivariatePoly& a, const S& s) {
    std::vector<Polynomial<S>> out(a.zc_);
    for (auto& p : out) p = p * s;
    return BivariatePoly(std::move(out));
  }

  /// Substitute z = z0; the resulting univariate polynomial in x may be
  /// identically zero.
  Polynomial<S> slice_x(const S& z0) const {
    Polynomial<S> acc;
    for (std::size_t s = zc_.size(); s-- > 0;) acc = acc * z0 + zc_[s];
    return acc;
  }

  /// Substitute z = x; the restriction of B to the diagonal.
  Polynomial<S> diagonal() const {
    Polynomial<S> acc;
    for (int s = 0; s < static_cast<int>(zc_.size()); ++s) acc += shift_up(zc_[s], s);
    return acc;
  }

  /// B~(x, z) = B(z, x).
  BivariatePoly transposed() const {
    const int dx = deg_x();
    if (dx < 0) return BivariatePoly();
    std::vector<std::vector<S>> rows(static_cast<std::size_t>(dx) + 1);
    for (auto& r : rows) r.assign(zc_.size(), S(0));
    for (std::size_t s = 0; s < zc_.size(); ++s)
      for (int i = 0; i <= zc_[s].degree(); ++i) rows[i][s] = zc_[s].coeff(i);
    std::vector<Polynomial<S>> out;
    out.reserve(rows.size());
    for (auto& r : rows) out.emplace_back(std::move(r));
    return BivariatePoly(std::move(out));
  }

  /// Division by (x - z): B = (x - z) * Q + R(z) with R(z) = B(z, z).
  std::pair<BivariatePoly, Polynomial<S>> div_x_minus_z() const {
    BivariatePoly xm = transposed();  // coefficients of x^i as polynomials in z
    const int d = xm.deg_z();         // = deg_x of *this
    if (d < 1) return {BivariatePoly(), diagonal()};
    std::vector<Polynomial<S>> q(static_cast<std::size_t>(d));
    q[d - 1] = xm.z_coeff(d);
    for (int i = d - 1; i >= 1; --i) q[i - 1] = xm.z_coeff(i) + shift_up(q[i], 1);
    Polynomial<S> rem = xm.z_coeff(0) + shift_up(q[0], 1);
    return {BivariatePoly(std::move(q)).transposed(), std::move(rem)};
  }

  /// kappa(x, t) = B(x, x - t); the second slot of the result holds powers
  /// of t. This is the substitution behind the inverse map Phi_k, done by
  /// exact binomial convolution on the coefficients.
  BivariatePoly subst_z_eq_x_minus_t() const {
    std::vector<Polynomial<S>> acc(zc_.size());
    for (int s = 0; s < static_cast<int>(zc_.size()); ++s) {
      // z^s = (x - t)^s = sum_t' C(s,t') x^(s-t') (-1)^t' t^t'
      for (int t = 0; t <= s; ++t) {
        S c = binomial_s<S>(s, t);
        if (t % 2 == 1) c = S(0) - c;
        acc[t] += shift_up(zc_[s], s - t) * c;
      }
    }
    return BivariatePoly(std::move(acc));
  }

 private:
  void trim() {
    for (auto& p : zc_) p.trim();
    while (!zc_.empty() && zc_.back().is_zero()) zc_.pop_back();
  }

  std::vector<Polynomial<S>> zc_;
};

/// When B is linear in z, returns (U, V) with B = z U(x) - V(x).
template <typename S>
std::optional<std::pair<Polynomial<S>, Polynomial<S>>> linear_in_z(const BivariatePoly<S>& b) {
  if (b.deg_z() != 1) return std::nullopt;
  return std::make_pair(b.z_coeff(1), -b.z_coeff(0));
}

/// When B is linear in x, returns (U, V) with B = x U(z) - V(z).
template <typename S>
std::optional<std::pair<Polynomial<S>, Polynomial<S>>> linear_in_x(const BivariatePoly<S>& b) {
  if (b.deg_x() != 1) return std::nullopt;
  BivariatePoly<S> t = b.transposed();
  return std::make_pair(t.z_coeff(1), -t.z_coeff(0));
}

}  // namespace minvset
