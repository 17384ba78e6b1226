#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "minvset/errors.hpp"
#include "minvset/scalar.hpp"

namespace minvset {

/// Univariate polynomial with coefficients in S, stored in ascending powers.
/// The zero polynomial is the empty coefficient list; otherwise the last
/// stored coefficient is nonzero. Every constructor and arithmetic operation
/// re-establishes that normalization, so degree() is always well defined.
///
/// Instantiated with std::complex<double> throughout the library; the test
/// suite also instantiates it with an exact rational scalar.
template <typename S>
class Polynomial {
 public:
  Polynomial() = default;

  explicit Polynomial(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(const S& v) { return Polynomial(std::vector<S>{v}); }

  /// c * x^k
  static Polynomial monomial(int k, const S& c = S(1)) {
    std::vector<S> v(static_cast<std::size_t>(k) + 1, S(0));
    v.back() = c;
    return Polynomial(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }

  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  const std::vector<S>& coeffs() const { return c_; }

  /// Coefficient of x^i (zero beyond the stored range).
  S coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return S(0);
    return c_[static_cast<std::size_t>(i)];
  }

  S leading() const { return c_.empty() ? S(0) : c_.back(); }

  Polynomial& operator+=(const Polynomial& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), S(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), S(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& v : r.c_) v = S(0) - v;
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<S> out(a.c_.size() + b.c_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        out[i + j] = out[i + j] + a.c_[i] * b.c_[j];
    return Polynomial(std::move(out));
  }

  friend Polynomial operator*(const Polynomial& a, const S& s) {
    Polynomial r(a);
    for (auto& v : r.c_) v = v * s;
    r.trim();
    return r;
  }

  friend Polynomial operator*(const S& s, const Polynomial& a) { return a * s; }

  /// Drops trailing coefficients that are (numerically) zero. For inexact
  /// scalars the cutoff is kTrimRel times the largest coefficient modulus.
  void trim() {
    double scale = 0.0;
    if constexpr (!ScalarTraits<S>::exact) {
      for (const auto& v : c_) scale = std::max(scale, std::abs(v));
    }
    while (!c_.empty() && ScalarTraits<S>::is_zero(c_.back(), scale)) c_.pop_back();
  }

 private:
  std::vector<S> c_;
};

/// Horner evaluation; exact for degree 0.
template <typename S>
S poly_eval(const Polynomial<S>& p, const S& x) {
  S acc = S(0);
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

/// order-fold formal derivative; zero polynomial when order exceeds degree.
template <typename S>
Polynomial<S> poly_derive(const Polynomial<S>& p, int order = 1) {
  if (order < 0) throw DomainError("poly_derive: negative order");
  if (order == 0) return p;
  if (p.degree() < order) return Polynomial<S>();
  std::vector<S> cur(p.coeffs());
  for (int pass = 0; pass < order; ++pass) {
    std::vector<S> next(cur.size() - 1);
    for (std::size_t i = 1; i < cur.size(); ++i) next[i - 1] = cur[i] * S(static_cast<long long>(i));
    cur = std::move(next);
  }
  return Polynomial<S>(std::move(cur));
}

/// leading * prod (x - r_i). Empty root list gives the constant `leading`.
template <typename S>
Polynomial<S> poly_from_roots(const std::vector<S>& roots, const S& leading) {
  if (leading == S(0)) throw ZeroLeading();
  std::vector<S> c{leading};
  c.reserve(roots.size() + 1);
  for (const S& r : roots) {
    c.push_back(S(0));
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] = (S(0) - r) * c[0];
  }
  return Polynomial<S>(std::move(c));
}

/// p * x^k
template <typename S>
Polynomial<S> shift_up(const Polynomial<S>& p, int k) {
  if (p.is_zero() || k == 0) return p;
  std::vector<S> out(p.coeffs().size() + static_cast<std::size_t>(k), S(0));
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) out[i + k] = p.coeffs()[i];
  return Polynomial<S>(std::move(out));
}

}  // namespace minvset
