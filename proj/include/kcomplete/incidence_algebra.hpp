#pragma once

#include <concepts>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kcomplete/poset.hpp"

namespace kcomplete {

// Any exact field works as the scalar: rationals for the expectation formula,
// rate differences for the transform coefficients, rational functions in t
// for distribution-level checks.
template <class K>
concept ExactScalar = requires(K a, K b) {
  { a + b } -> std::convertible_to<K>;
  { a - b } -> std::convertible_to<K>;
  { a * b } -> std::convertible_to<K>;
  { a / b } -> std::convertible_to<K>;
  { a == b } -> std::convertible_to<bool>;
  K(0);
  K(1);
};

struct SingularDiagonalError : std::runtime_error {
  explicit SingularDiagonalError(int element)
      : std::runtime_error("interval function is singular: zero diagonal at element " + std::to_string(element)),
        element(element) {}
  int element;
};

// A scalar value on every interval a <= b of a fixed-size poset; implicitly 0
// elsewhere. In a linear extension this is an upper triangular matrix, which
// is all the inversion below relies on.
template <ExactScalar K>
struct IntervalFunction {
  std::vector<std::vector<K>> v;

  explicit IntervalFunction(int n) : v(n, std::vector<K>(n, K(0))) {}

  static IntervalFunction identity(int n) {
    IntervalFunction f(n);
    for (int i = 0; i < n; ++i) f.v[i][i] = K(1);
    return f;
  }

  int size() const { return static_cast<int>(v.size()); }
  const K& operator()(int a, int b) const { return v[a][b]; }
  K& operator()(int a, int b) { return v[a][b]; }
};

template <ExactScalar K>
IntervalFunction<K> convolve(const FinitePoset& p, const IntervalFunction<K>& f, const IntervalFunction<K>& g) {
  IntervalFunction<K> h(p.size());
  for (int a = 0; a < p.size(); ++a)
    for (int b = a; b < p.size(); ++b) {
      if (!p.leq(a, b)) continue;
      K sum(0);
      for (int c = a; c <= b; ++c)
        if (p.leq(a, c) && p.leq(c, b)) sum = sum + f(a, c) * g(c, b);
      h(a, b) = sum;
    }
  return h;
}

// Inverse under convolution, by back-substitution on the upper triangular
// matrix. Requires a nonzero value on every singleton interval.
template <ExactScalar K>
IntervalFunction<K> invert(const FinitePoset& p, const IntervalFunction<K>& f) {
  const int n = p.size();
  for (int a = 0; a < n; ++a)
    if (f(a, a) == K(0)) throw SingularDiagonalError(a);
  IntervalFunction<K> g(n);
  for (int b = 0; b < n; ++b) {
    g(b, b) = K(1) / f(b, b);
    for (int a = b - 1; a >= 0; --a) {
      if (!p.leq(a, b)) continue;
      K sum(0);
      for (int c = a + 1; c <= b; ++c)
        if (p.leq(a, c) && p.leq(c, b)) sum = sum + f(a, c) * g(c, b);
      g(a, b) = (K(0) - sum) / f(a, a);
    }
  }
  return g;
}

// The same inverse entry by explicit chain enumeration: sum over chains
// a = c_1 < ... < c_s = b of (-1)^(s-1) * prod f(c_i, c_i+1) / prod f(c_i, c_i).
// Exponential in the worst case; kept as the oracle for invert().
template <ExactScalar K>
K invert_via_chains(const FinitePoset& p, const IntervalFunction<K>& f, int a, int b) {
  if (!p.leq(a, b)) return K(0);
  for (int e = 0; e < p.size(); ++e)
    if (f(e, e) == K(0)) throw SingularDiagonalError(e);
  K total(0);
  for (const auto& chain : enumerate_chains(p, a, b)) {
    K term = K(1) / f(chain[0], chain[0]);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      term = term * f(chain[i], chain[i + 1]) / f(chain[i + 1], chain[i + 1]);
    if (chain.size() % 2 == 1)
      total = total + term;
    else
      total = total - term;
  }
  return total;
}

}  // namespace kcomplete
