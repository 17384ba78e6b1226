#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "minvset/errors.hpp"

namespace minvset {

using Complex = std::complex<double>;

/// Relative threshold below which a trailing coefficient is treated as zero
/// when normalizing polynomials (see Polynomial::trim).
inline constexpr double kTrimRel = 1e-13;

/// Traits hook that lets the polynomial/operator templates run over both the
/// production scalar (std::complex<double>) and exact scalars used by the
/// test suite. Exact scalars set `exact = true` and compare against zero
/// directly; inexact scalars use a magnitude threshold.
template <typename S>
struct ScalarTraits {
  static constexpr bool exact = true;
  static bool is_zero(const S& v, double /*scale*/) { return v == S{}; }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static bool is_zero(const Complex& v, double scale) {
    return std::abs(v) <= kTrimRel * scale;
  }
};

/// Exact falling factorial (n)_m = n(n-1)...(n-m+1). Throws DomainError when
/// m > n or the product leaves the 64-bit range.
inline long long falling_factorial(long long n, long long m) {
  if (n < 0 || m < 0 || m > n) throw DomainError("falling_factorial: require 0 <= m <= n");
  __int128 acc = 1;
  for (long long t = 0; t < m; ++t) {
    acc *= (n - t);
    if (acc > static_cast<__int128>(INT64_MAX)) {
      throw DomainError("falling_factorial: 64-bit overflow");
    }
  }
  return static_cast<long long>(acc);
}

/// Falling factorial accumulated in the scalar ring; avoids integer overflow
/// for large n and stays exact over exact scalars.
template <typename S>
S falling_factorial_s(long long n, long long m) {
  S acc = S(1);
  for (long long t = 0; t < m; ++t) acc = acc * S(n - t);
  return acc;
}

/// Binomial coefficient in the scalar ring.
template <typename S>
S binomial_s(long long n, long long k) {
  if (k < 0 || k > n) return S(0);
  if (k > n - k) k = n - k;
  S acc = S(1);
  for (long long t = 0; t < k; ++t) {
    acc = acc * S(n - t);
    acc = acc / S(t + 1);
  }
  return acc;
}

inline bool lex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace minvset
