#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "kcomplete/cover_lattice.hpp"
#include "kcomplete/incidence_algebra.hpp"
#include "kcomplete/mixture.hpp"
#include "kcomplete/rational.hpp"

namespace kcomplete {

// A comparable pair of lattice elements whose rectangles have the same total
// rate. Any such pair puts a repeated pole into the transform, so the
// per-element coefficient formulas do not apply.
struct GenericityViolation {
  int lower;
  int upper;
  Rat rate;
};

struct GenericityReport {
  std::vector<GenericityViolation> violations;
  bool generic() const { return violations.empty(); }
};

struct NonGenericError : std::runtime_error {
  explicit NonGenericError(GenericityReport r)
      : std::runtime_error("rate " + rat_str(r.violations.at(0).rate) + " repeats on the comparable pair (" +
                           std::to_string(r.violations.at(0).lower) + "," +
                           std::to_string(r.violations.at(0).upper) + ")"),
        report(std::move(r)) {}
  GenericityReport report;
};

// Ties between incomparable rectangles are harmless; only comparable pairs
// matter.
inline GenericityReport genericity(const CriticalLattice& lat) {
  GenericityReport report;
  for (int a = 0; a < lat.size(); ++a)
    for (int b = a + 1; b < lat.size(); ++b)
      if (lat.poset().leq(a, b) && lat.element(a).rect.rate == lat.element(b).rect.rate)
        report.violations.push_back({a, b, lat.element(a).rect.rate});
  return report;
}

namespace detail {

// The interval function f(a,b) = I(R_a meet R_b) whose incidence-algebra
// inverse carries the expectation.
inline IntervalFunction<Rat> meet_rate_function(const CriticalLattice& lat) {
  IntervalFunction<Rat> f(lat.size());
  for (int a = 0; a < lat.size(); ++a)
    for (int b = a; b < lat.size(); ++b)
      if (lat.poset().leq(a, b)) f(a, b) = lat.meet_rate(a, b);
  return f;
}

}  // namespace detail

// E = sum over intervals a <= b of f^-1(a,b).
inline Rat expectation_interval_form(const CriticalLattice& lat) {
  auto inv = invert(lat.poset(), detail::meet_rate_function(lat));
  Rat total = 0;
  for (int a = 0; a < lat.size(); ++a)
    for (int b = a; b < lat.size(); ++b)
      if (lat.poset().leq(a, b)) total += inv(a, b);
  return total;
}

// E = sum over nonempty chains of (-1)^(s-1) prod I(R_i meet R_i+1) / prod I(R_i).
inline Rat expectation_chain_form(const CriticalLattice& lat) {
  Rat total = 0;
  for (const auto& chain : enumerate_chains(lat.poset())) {
    Rat term = 1;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) term *= lat.meet_rate(chain[i], chain[i + 1]);
    for (int e : chain) term /= lat.element(e).rect.rate;
    if (chain.size() % 2 == 1)
      total += term;
    else
      total -= term;
  }
  return total;
}

// L = sum over elements R of a_R * b_R * I_R/(I_R + t), with a_R summing
// over chains ending at R and b_R over chains starting at R. Each chain
// contributes sign (-1)^length times, per edge, (I(meet) - I_R)/(I(far) - I_R)
// where far is the edge end away from R. Defined only in the generic case.
inline ExpMixture laplace_chain_form(const CriticalLattice& lat) {
  if (auto report = genericity(lat); !report.generic()) throw NonGenericError(std::move(report));
  ExpMixture mix;
  for (int r = 0; r < lat.size(); ++r) {
    const Rat& ir = lat.element(r).rect.rate;
    Rat a = 0;
    for (const auto& chain : enumerate_chains(lat.poset(), std::nullopt, r)) {
      Rat term = chain.size() % 2 == 0 ? 1 : -1;
      for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        term *= (lat.meet_rate(chain[i], chain[i + 1]) - ir) / (lat.element(chain[i]).rect.rate - ir);
      a += term;
    }
    Rat b = 0;
    for (const auto& chain : enumerate_chains(lat.poset(), r, std::nullopt)) {
      Rat term = chain.size() % 2 == 0 ? 1 : -1;
      for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        term *= (lat.meet_rate(chain[i], chain[i + 1]) - ir) / (lat.element(chain[i + 1]).rect.rate - ir);
      b += term;
    }
    mix.terms.push_back({a * b, ir, r});
  }
  return mix;
}

namespace detail {

// g_R restricted to an induced subposet containing R. Entries of the inverse
// on intervals within the subposet agree with the full lattice because the
// chain expansion only visits the interval.
inline IntervalFunction<Rat> g_function(const CriticalLattice& lat, int r, const FinitePoset& sub,
                                        const std::vector<int>& orig) {
  IntervalFunction<Rat> g(sub.size());
  for (int i = 0; i < sub.size(); ++i)
    for (int j = i; j < sub.size(); ++j) {
      if (!sub.leq(i, j)) continue;
      if (orig[i] == r && orig[j] == r)
        g(i, j) = 1;
      else
        g(i, j) = lat.meet_rate(orig[i], orig[j]) - lat.element(r).rect.rate;
    }
  return g;
}

}  // namespace detail

// Same transform through incidence-algebra inversion of g_R on the down-set
// and up-set of each element: c_R = (sum of g^-1 into R) * (sum of g^-1 out
// of R).
inline ExpMixture laplace_inverse_form(const CriticalLattice& lat) {
  if (auto report = genericity(lat); !report.generic()) throw NonGenericError(std::move(report));
  ExpMixture mix;
  for (int r = 0; r < lat.size(); ++r) {
    auto below = lat.poset().down_set(r);
    auto dposet = lat.poset().induced(below);
    auto dinv = invert(dposet, detail::g_function(lat, r, dposet, below));
    const int rd = static_cast<int>(below.size()) - 1;
    Rat down = 0;
    for (int i = 0; i < dposet.size(); ++i)
      if (dposet.leq(i, rd)) down += dinv(i, rd);

    auto above = lat.poset().up_set(r);
    auto uposet = lat.poset().induced(above);
    auto uinv = invert(uposet, detail::g_function(lat, r, uposet, above));
    Rat up = 0;
    for (int j = 0; j < uposet.size(); ++j)
      if (uposet.leq(0, j)) up += uinv(0, j);

    mix.terms.push_back({down * up, lat.element(r).rect.rate, r});
  }
  return mix;
}

}  // namespace kcomplete
