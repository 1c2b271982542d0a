#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "kcomplete/matrix_model.hpp"
#include "kcomplete/mixture.hpp"
#include "kcomplete/polynomial.hpp"
#include "kcomplete/rational.hpp"

namespace kcomplete {

struct RepeatedPoleError : std::runtime_error {
  explicit RepeatedPoleError(Rat r)
      : std::runtime_error("transform has a repeated pole at rate " + rat_str(r)), rate(std::move(r)) {}
  Rat rate;
};

// Rows whose removal drops the maximum zero matching to k-2. Putting an
// extra zero into such a row keeps the matching at k-1 and makes the row
// forced; putting it anywhere else completes a zero k-assignment.
inline std::vector<int> essential_matching_rows(const MatrixSpec& m) {
  if (hypothesis_class(m) != HypothesisClass::ExactlyKMinus1)
    throw HypothesisError("essential rows are defined for a maximum zero matching of size exactly k-1");
  if (!forced_rows(m).empty()) throw HypothesisError("essential rows require a normalized matrix with no forced rows");
  const auto zeros = zero_positions(m);
  std::vector<int> out;
  for (int r = 0; r < m.rows(); ++r) {
    std::vector<Cell> rest;
    for (const Cell& z : zeros)
      if (z.row != r) rest.push_back(z);
    if (detail::max_matching_size(m.rows(), m.cols(), rest) == m.k() - 2) out.push_back(r);
  }
  return out;
}

namespace detail {

// One step of the recursion on a normalized matrix (no forced rows): the
// zero columns form the unique minimum cover, the uncovered rectangle spans
// all rows, and the minimum of that rectangle drives the case split.
struct RecursionStep {
  Rat total;
  std::vector<int> essential;
  std::vector<Rat> branch_rate;
};

inline RecursionStep recursion_step(const MatrixSpec& m) {
  std::vector<char> zero_col(m.cols(), 0);
  int nzc = 0;
  for (const Cell& z : zero_positions(m))
    if (!zero_col[z.col]) zero_col[z.col] = 1, ++nzc;
  if (nzc != m.k() - 1) throw std::logic_error("matrix with forced rows passed to recursion step");

  RecursionStep step;
  step.total = 0;
  std::vector<Rat> row_rate(m.rows(), Rat(0));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (!zero_col[c]) row_rate[r] += m.at(r, c).value();
  for (const Rat& v : row_rate) step.total += v;
  step.essential = essential_matching_rows(m);
  for (int r : step.essential) step.branch_rate.push_back(row_rate[r]);
  return step;
}

}  // namespace detail

// E by the recursion: condition on where the minimum of the uncovered
// rectangle falls. An essential row keeps the problem alive with that row
// forced; any other position completes a zero k-assignment.
inline Rat expectation_recursive(const MatrixSpec& m) {
  switch (hypothesis_class(m)) {
    case HypothesisClass::Insufficient:
      throw HypothesisError("expectation requires a zero (k-1)-assignment");
    case HypothesisClass::ZeroCostK:
      return 0;
    case HypothesisClass::ExactlyKMinus1:
      break;
  }
  if (auto forced = forced_rows(m); !forced.empty()) return expectation_recursive(remove_row(m, forced.front()));
  auto step = detail::recursion_step(m);
  Rat e = 1 / step.total;
  for (std::size_t i = 0; i < step.essential.size(); ++i)
    e += step.branch_rate[i] / step.total * expectation_recursive(remove_row(m, step.essential[i]));
  return e;
}

// The transform by the same recursion. Exact in t, and valid with or
// without repeated pole rates.
inline RationalFunction laplace_recursive(const MatrixSpec& m) {
  switch (hypothesis_class(m)) {
    case HypothesisClass::Insufficient:
      throw HypothesisError("transform requires a zero (k-1)-assignment");
    case HypothesisClass::ZeroCostK:
      return RationalFunction(1);
    case HypothesisClass::ExactlyKMinus1:
      break;
  }
  if (auto forced = forced_rows(m); !forced.empty()) return laplace_recursive(remove_row(m, forced.front()));
  auto step = detail::recursion_step(m);
  Rat p = 1;
  for (const Rat& v : step.branch_rate) p -= v / step.total;
  RationalFunction inner(p);
  for (std::size_t i = 0; i < step.essential.size(); ++i)
    inner = inner + RationalFunction(step.branch_rate[i] / step.total) * laplace_recursive(remove_row(m, step.essential[i]));
  RationalFunction phi(Polynomial(step.total), Polynomial(std::vector<Rat>{step.total, 1}));
  return phi * inner;
}

// Number of conditioning steps in the whole recursion tree. Every pole of
// the transform is the rate of some step's uncovered rectangle, so this
// count bounds the denominator degree. The longest single path does not:
// distinct branches contribute distinct poles.
inline int recursion_step_count(const MatrixSpec& m) {
  switch (hypothesis_class(m)) {
    case HypothesisClass::Insufficient:
      throw HypothesisError("recursion step count requires a zero (k-1)-assignment");
    case HypothesisClass::ZeroCostK:
      return 0;
    case HypothesisClass::ExactlyKMinus1:
      break;
  }
  if (auto forced = forced_rows(m); !forced.empty()) return recursion_step_count(remove_row(m, forced.front()));
  auto step = detail::recursion_step(m);
  int total = 1;
  for (int r : step.essential) total += recursion_step_count(remove_row(m, r));
  return total;
}

// The transform a mixture represents, as an explicit rational function.
inline RationalFunction mixture_transform(const ExpMixture& mix) {
  RationalFunction sum(0);
  for (const auto& term : mix.terms)
    sum = sum + RationalFunction(Polynomial(term.coeff * term.rate), Polynomial(std::vector<Rat>{term.rate, 1}));
  return sum;
}

namespace detail {

// Divisors of |n|, built from trial division. A cofactor that resists the
// trial bound is kept whole, which can only make the candidate set smaller;
// callers treat a missing root as an error, never as a wrong answer.
inline std::vector<mpz_class> positive_divisors(mpz_class n) {
  n = abs(n);
  if (n == 0) throw std::logic_error("divisors of zero requested");
  std::vector<std::pair<mpz_class, int>> factors;
  auto push = [&](const mpz_class& p, int e) { factors.emplace_back(p, e); };
  int e2 = 0;
  while (mpz_divisible_ui_p(n.get_mpz_t(), 2)) n /= 2, ++e2;
  if (e2) push(2, e2);
  for (unsigned long q = 3; q <= 1000000UL && n > 1; q += 2) {
    if (mpz_cmp_ui(n.get_mpz_t(), q * q) < 0) break;
    if (!mpz_divisible_ui_p(n.get_mpz_t(), q)) continue;
    int e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), q)) n /= static_cast<unsigned long>(q), ++e;
    push(q, e);
  }
  if (n > 1) push(n, 1);
  std::vector<mpz_class> divs{1};
  for (const auto& [p, e] : factors) {
    const std::size_t base = divs.size();
    if (base * (e + 1) > 500000) throw std::domain_error("denominator constant term is too composite to factor");
    mpz_class pe = 1;
    for (int i = 1; i <= e; ++i) {
      pe *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pe);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// All rational roots, with multiplicity, ascending. Rational root theorem on
// the integerized polynomial, deflating on every hit.
inline std::vector<Rat> rational_roots(const Polynomial& p) {
  if (p.is_zero()) throw std::logic_error("roots of the zero polynomial requested");
  Polynomial cur = p;
  std::vector<Rat> roots;
  while (cur.degree() >= 1 && cur.coeff(0) == 0)
    roots.push_back(0), cur = divmod(cur, Polynomial::x()).first;
  while (cur.degree() >= 1) {
    mpz_class denlcm = 1;
    for (const Rat& c : cur.coeffs()) denlcm = lcm(denlcm, c.get_den());
    mpz_class a0 = cur.coeff(0).get_num() * (denlcm / cur.coeff(0).get_den());
    mpz_class an = cur.leading().get_num() * (denlcm / cur.leading().get_den());
    bool found = false;
    for (const mpz_class& q : positive_divisors(an)) {
      for (const mpz_class& num : positive_divisors(a0)) {
        for (int sign : {1, -1}) {
          Rat cand(sign * num, q);
          cand.canonicalize();
          if (cur.eval(cand) != 0) continue;
          std::vector<Rat> lin{-cand, 1};
          do {
            roots.push_back(cand);
            cur = divmod(cur, Polynomial(lin)).first;
          } while (cur.degree() >= 1 && cur.eval(cand) == 0);
          found = true;
          break;
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace detail

// Splits a transform with simple negative rational poles into mixture form.
// Input must be a genuine transform: value 1 at t = 0 and a proper fraction.
inline ExpMixture partial_fractions(const RationalFunction& f) {
  if (f.num().degree() >= f.den().degree()) throw std::domain_error("transform must be a proper fraction");
  if (f.eval(0) != 1) throw std::domain_error("transform must equal 1 at t = 0");
  Polynomial sq = poly_gcd(f.den(), derivative(f.den()));
  if (sq.degree() >= 1) {
    auto reps = detail::rational_roots(sq);
    if (reps.empty()) throw std::domain_error("repeated pole is not rational");
    throw RepeatedPoleError(-reps.front());
  }
  auto roots = detail::rational_roots(f.den());
  if (static_cast<int>(roots.size()) != f.den().degree())
    throw std::domain_error("transform has a pole that is not rational");
  Polynomial dprime = derivative(f.den());
  ExpMixture mix;
  // roots ascend, so walk them backwards to emit terms by ascending rate
  for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
    const Rat& r = *it;
    if (r >= 0) throw std::domain_error("transform has a pole at nonnegative t = " + rat_str(r));
    Rat rate = -r;
    mix.terms.push_back({f.num().eval(r) / dprime.eval(r) / rate, rate, -1});
  }
  return mix;
}

}  // namespace kcomplete
