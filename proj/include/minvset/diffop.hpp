#pragma once

#include <algorithm>
#include <climits>
#include <utility>
#include <vector>

#include "minvset/bipoly.hpp"
#include "minvset/poly.hpp"

namespace minvset {

/// Linear differential operator T = sum_j Q_j(x) d^j/dx^j with polynomial
/// coefficients, stored as the list Q_0..Q_k. The zero operator is the empty
/// list; otherwise Q_k is nonzero and k = order().
template <typename S>
class DiffOperator {
 public:
  DiffOperator() = default;

  explicit DiffOperator(std::vector<Polynomial<S>> coeffs) : q_(std::move(coeffs)) { trim(); }

  static DiffOperator identity() {
    return DiffOperator(std::vector<Polynomial<S>>{Polynomial<S>::constant(S(1))});
  }

  static DiffOperator multiplication(Polynomial<S> q0) {
    return DiffOperator(std::vector<Polynomial<S>>{std::move(q0)});
  }

  /// q(x) d^j/dx^j
  static DiffOperator single_term(int j, Polynomial<S> q) {
    std::vector<Polynomial<S>> v(static_cast<std::size_t>(j) + 1);
    v[static_cast<std::size_t>(j)] = std::move(q);
    return DiffOperator(std::move(v));
  }

  bool is_zero() const { return q_.empty(); }

  /// -1 for the zero operator.
  int order() const { return static_cast<int>(q_.size()) - 1; }

  const std::vector<Polynomial<S>>& coeffs() const { return q_; }

  const Polynomial<S>& coeff(int j) const {
    static const Polynomial<S> zero;
    if (j < 0 || j >= static_cast<int>(q_.size())) return zero;
    return q_[static_cast<std::size_t>(j)];
  }

  const Polynomial<S>& leading() const { return coeff(order()); }

  /// T(p) = sum_j Q_j * p^(j)
  Polynomial<S> apply(const Polynomial<S>& p) const {
    Polynomial<S> out;
    Polynomial<S> dp = p;
    for (int j = 0; j <= order(); ++j) {
      if (j > 0) dp = poly_derive(dp, 1);
      if (dp.is_zero()) break;
      if (!coeff(j).is_zero()) out += coeff(j) * dp;
    }
    return out;
  }

  DiffOperator& operator+=(const DiffOperator& o) {
    if (q_.size() < o.q_.size()) q_.resize(o.q_.size());
    for (std::size_t j = 0; j < o.q_.size(); ++j) q_[j] += o.q_[j];
    trim();
    return *this;
  }

  DiffOperator& operator-=(const DiffOperator& o) {
    if (q_.size() < o.q_.size()) q_.resize(o.q_.size());
    for (std::size_t j = 0; j < o.q_.size(); ++j) q_[j] -= o.q_[j];
    trim();
    return *this;
  }

  friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
  friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }

  friend DiffOperator operator*(const DiffOperator& a, const S& s) {
    std::vector<Polynomial<S>> out(a.q_);
    for (auto& p : out) p = p * s;
    return DiffOperator(std::move(out));
  }

 private:
  void trim() {
    for (auto& p : q_) p.trim();
    while (!q_.empty() && q_.back().is_zero()) q_.pop_back();
  }

  std::vector<Polynomial<S>> q_;
};

/// Fuchs index: max over nonzero Q_j of (deg Q_j - j).
template <typename S>
int fuchs_index(const DiffOperator<S>& t) {
  if (t.is_zero()) throw ZeroOperator();
  int rho = INT_MIN;
  for (int j = 0; j <= t.order(); ++j) {
    if (!t.coeff(j).is_zero()) rho = std::max(rho, t.coeff(j).degree() - j);
  }
  return rho;
}

template <typename S>
bool is_exactly_solvable(const DiffOperator<S>& t) {
  return fuchs_index(t) == 0;
}

/// The Fuchs index is realized by the leading coefficient and is
/// non-negative, so the operator does not strictly decrease degrees.
template <typename S>
bool is_nondegenerate(const DiffOperator<S>& t) {
  const int rho = fuchs_index(t);
  return rho >= 0 && t.leading().degree() - t.order() == rho;
}

/// Operator composition via the Leibniz expansion
/// (Q d^a) o (R d^b) = Q * sum_i C(a,i) R^(i) d^(a+b-i).
template <typename S>
DiffOperator<S> compose(const DiffOperator<S>& t1, const DiffOperator<S>& t2) {
  if (t1.is_zero() || t2.is_zero()) return DiffOperator<S>();
  std::vector<Polynomial<S>> out(
      static_cast<std::size_t>(t1.order() + t2.order()) + 1);
  for (int a = 0; a <= t1.order(); ++a) {
    const Polynomial<S>& q = t1.coeff(a);
    if (q.is_zero()) continue;
    for (int b = 0; b <= t2.order(); ++b) {
      const Polynomial<S>& r = t2.coeff(b);
      if (r.is_zero()) continue;
      Polynomial<S> dr = r;
      for (int i = 0; i <= a; ++i) {
        if (i > 0) {
          dr = poly_derive(dr, 1);
          if (dr.is_zero()) break;
        }
        out[static_cast<std::size_t>(a + b - i)] += q * dr * binomial_s<S>(a, i);
      }
    }
  }
  return DiffOperator<S>(std::move(out));
}

/// lambda_i for i = 0..n, where T(x^i) = lambda_i x^i + lower order terms.
template <typename S>
std::vector<S> symbol_eigenvalues(const DiffOperator<S>& t, int n) {
  if (!is_exactly_solvable(t)) throw NotExactlySolvable();
  std::vector<S> lambdas;
  lambdas.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    lambdas.push_back(t.apply(Polynomial<S>::monomial(i)).coeff(i));
  }
  return lambdas;
}

/// Psi_{T,n}(x, z) = T[(x - z)^n] = sum_j (n)_j Q_j(x) (x - z)^(n-j),
/// expanded to the coefficient matrix.
template <typename S>
BivariatePoly<S> psi(const DiffOperator<S>& t, int n) {
  std::vector<Polynomial<S>> zc(static_cast<std::size_t>(n) + 1);
  const int jmax = std::min(t.order(), n);
  for (int j = 0; j <= jmax; ++j) {
    const Polynomial<S>& q = t.coeff(j);
    if (q.is_zero()) continue;
    const S ff = falling_factorial_s<S>(n, j);
    const int m = n - j;
    for (int s = 0; s <= m; ++s) {
      S c = ff * binomial_s<S>(m, s);
      if (s % 2 == 1) c = S(0) - c;
      zc[static_cast<std::size_t>(s)] += shift_up(q, m - s) * c;
    }
  }
  return BivariatePoly<S>(std::move(zc));
}

/// Phi_k: the unique exactly solvable operator of order at most k with
/// T[(x-z)^k] = B, recovered through the substitution z = x - t.
template <typename S>
DiffOperator<S> phi(const BivariatePoly<S>& b, int k) {
  if (b.total_degree() > k) {
    throw DegreeTooHigh("phi: bivariate degree exceeds requested order");
  }
  BivariatePoly<S> kappa = b.subst_z_eq_x_minus_t();
  std::vector<Polynomial<S>> q(static_cast<std::size_t>(k) + 1);
  for (int tpow = 0; tpow <= kappa.deg_z(); ++tpow) {
    const int j = k - tpow;
    if (j < 0) throw DegreeTooHigh("phi: substitution produced degree above k");
    const S inv = falling_factorial_s<S>(k, j);
    Polynomial<S> w = kappa.z_coeff(tpow);
    if (!w.is_zero()) {
      std::vector<S> cs(w.coeffs());
      for (auto& c : cs) c = c / inv;
      q[static_cast<std::size_t>(j)] = Polynomial<S>(std::move(cs));
    }
  }
  return DiffOperator<S>(std::move(q));
}

/// The family F_{m,n} with parameter polynomial Q_m (deg <= m < n):
///   sum_{j=0}^m (-1)^(m-j) C(n-j, n-m) Q_m^(m-j)(x) d^j.
/// Satisfies T[(x-z)^n] = (n)_m Q_m(z) (x-z)^(n-m), so every point of the
/// plane is a 1-point invariant set in degree n.
template <typename S>
DiffOperator<S> family_operator(int m, int n, const Polynomial<S>& qm) {
  if (m < 0 || m >= n) throw DegreeViolation("family_operator: require 0 <= m < n");
  if (qm.degree() > m) throw DegreeViolation("family_operator: deg Q_m must be <= m");
  std::vector<Polynomial<S>> out(static_cast<std::size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) {
    Polynomial<S> term = poly_derive(qm, m - j) * binomial_s<S>(n - j, n - m);
    if ((m - j) % 2 == 1) term = -term;
    out[static_cast<std::size_t>(j)] = std::move(term);
  }
  return DiffOperator<S>(std::move(out));
}

/// Builds the unique exactly solvable operator of order at most k with the
/// given monic eigenpolynomials (degrees 0..k) and eigenvalues, by solving
/// for Q_0, Q_1, ... in turn.
template <typename S>
DiffOperator<S> operator_from_eigenpairs(const std::vector<Polynomial<S>>& polys,
                                         const std::vector<S>& lambdas) {
  if (polys.size() != lambdas.size() || polys.empty()) {
    throw DomainError("operator_from_eigenpairs: need equally many polynomials and values");
  }
  for (std::size_t j = 0; j < polys.size(); ++j) {
    if (polys[j].degree() != static_cast<int>(j) ||
        !(polys[j].leading() == S(1))) {
      throw DomainError("operator_from_eigenpairs: polys[j] must be monic of degree j");
    }
  }
  std::vector<Polynomial<S>> q(polys.size());
  for (std::size_t l = 0; l < polys.size(); ++l) {
    // l! Q_l = lambda_l p_l - sum_{j<l} Q_j p_l^(j)
    Polynomial<S> rhs = polys[l] * lambdas[l];
    Polynomial<S> dp = polys[l];
    for (std::size_t j = 0; j < l; ++j) {
      if (j > 0) dp = poly_derive(dp, 1);
      rhs -= q[j] * dp;
    }
    const S fact = falling_factorial_s<S>(static_cast<long long>(l), static_cast<long long>(l));
    std::vector<S> cs(rhs.coeffs());
    for (auto& c : cs) c = c / fact;
    q[l] = Polynomial<S>(std::move(cs));
  }
  return DiffOperator<S>(std::move(q));
}

/// U_a, V_a with T((x-a)^(n-1)(x-z)) = z U_a(x) - V_a(x).
template <typename S>
std::pair<Polynomial<S>, Polynomial<S>> pinned_linear_parts(const DiffOperator<S>& t, int n,
                                                            const S& alpha) {
  if (n < 1) throw DomainError("pinned_linear_parts: require n >= 1");
  Polynomial<S> base = poly_from_roots(std::vector<S>(static_cast<std::size_t>(n - 1), alpha), S(1));
  Polynomial<S> u = -t.apply(base);
  Polynomial<S> v = -t.apply(shift_up(base, 1));
  return {std::move(u), std::move(v)};
}

}  // namespace minvset
