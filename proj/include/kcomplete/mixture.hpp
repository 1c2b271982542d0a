#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "kcomplete/rational.hpp"

namespace kcomplete {

// One term coeff * rate/(rate+t) of a Laplace transform, equivalently a
// signed weight on the exponential distribution with that rate. element
// records the lattice index the term came from, -1 if it has no single
// origin (merged terms).
struct MixtureTerm {
  Rat coeff;
  Rat rate;
  int element = -1;
};

// A signed mixture of exponentials. Represents a genuine distribution when
// the coefficients sum to 1; intermediate values may not.
struct ExpMixture {
  std::vector<MixtureTerm> terms;
};

inline Rat coeff_sum(const ExpMixture& m) {
  Rat s = 0;
  for (const auto& t : m.terms) s += t.coeff;
  return s;
}

// L(t) = sum c * I/(I+t), exact. t may be any rational except a pole -I.
inline Rat mixture_eval(const ExpMixture& m, const Rat& t) {
  Rat s = 0;
  for (const auto& term : m.terms) {
    Rat den = term.rate + t;
    if (den == 0) throw std::domain_error("mixture evaluated at pole t = " + rat_str(t));
    s += term.coeff * term.rate / den;
  }
  return s;
}

// -L'(0): the mean of the mixture.
inline Rat mixture_mean(const ExpMixture& m) {
  Rat s = 0;
  for (const auto& t : m.terms) s += t.coeff / t.rate;
  return s;
}

// L''(0): the second moment.
inline Rat mixture_second_moment(const ExpMixture& m) {
  Rat s = 0;
  for (const auto& t : m.terms) s += 2 * t.coeff / (t.rate * t.rate);
  return s;
}

inline double mixture_density(const ExpMixture& m, double x) {
  if (x < 0) return 0.0;
  double s = 0;
  for (const auto& t : m.terms) {
    double rate = rat_double(t.rate);
    s += rat_double(t.coeff) * rate * std::exp(-rate * x);
  }
  return s;
}

inline double mixture_cdf(const ExpMixture& m, double x) {
  if (x < 0) return 0.0;
  double s = 0;
  for (const auto& t : m.terms) {
    double rate = rat_double(t.rate);
    s += rat_double(t.coeff) * (1.0 - std::exp(-rate * x));
  }
  return s;
}

// Canonical form: one term per distinct rate, zero coefficients dropped,
// sorted by rate. Element provenance does not survive merging.
inline ExpMixture merged_terms(const ExpMixture& m) {
  std::map<Rat, Rat> by_rate;
  for (const auto& t : m.terms) by_rate[t.rate] += t.coeff;
  ExpMixture out;
  for (const auto& [rate, coeff] : by_rate)
    if (coeff != 0) out.terms.push_back({coeff, rate, -1});
  return out;
}

// Same distribution: equal canonical forms.
inline bool mixture_equal(const ExpMixture& a, const ExpMixture& b) {
  auto ca = merged_terms(a);
  auto cb = merged_terms(b);
  if (ca.terms.size() != cb.terms.size()) return false;
  for (std::size_t i = 0; i < ca.terms.size(); ++i)
    if (ca.terms[i].rate != cb.terms[i].rate || ca.terms[i].coeff != cb.terms[i].coeff) return false;
  return true;
}

}  // namespace kcomplete
