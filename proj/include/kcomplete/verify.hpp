#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kcomplete/cover_lattice.hpp"
#include "kcomplete/exact_formulas.hpp"
#include "kcomplete/matrix_model.hpp"
#include "kcomplete/mixture.hpp"
#include "kcomplete/recursion_engine.hpp"
#include "kcomplete/rng.hpp"

namespace kcomplete {

struct CheckFailure {
  std::string check;
  std::string detail;
};

// Random instance with a maximum zero matching of exactly k-1: that many
// zeros in independent position, extra zeros kept only when they leave the
// matching number unchanged. Rates are p/q with p, q in [1, 10].
inline MatrixSpec random_instance(SplitMix64& rng, int max_dim, int max_k) {
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng.next() % static_cast<std::uint64_t>(hi - lo + 1)); };
  const int m = pick(2, std::max(2, max_dim));
  const int n = pick(2, std::max(2, max_dim));
  const int k = pick(1, std::min({m, n, std::max(1, max_k)}));

  std::vector<int> rows(m), cols(n);
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);
  for (int i = 0; i < k - 1; ++i) {
    std::swap(rows[i], rows[pick(i, m - 1)]);
    std::swap(cols[i], cols[pick(i, n - 1)]);
  }
  std::vector<std::vector<char>> zero(m, std::vector<char>(n, 0));
  for (int i = 0; i < k - 1; ++i) zero[rows[i]][cols[i]] = 1;

  auto matching_size = [&]() {
    std::vector<Cell> cells;
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < n; ++c)
        if (zero[r][c]) cells.push_back({r, c});
    return detail::max_matching_size(m, n, cells);
  };
  for (int tries = pick(0, 3); tries > 0; --tries) {
    const int r = pick(0, m - 1), c = pick(0, n - 1);
    if (zero[r][c]) continue;
    zero[r][c] = 1;
    if (matching_size() != k - 1) zero[r][c] = 0;
  }

  std::vector<Rate> entries;
  entries.reserve(static_cast<std::size_t>(m) * n);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < n; ++c) {
      if (zero[r][c]) {
        entries.push_back(Rate::zero_entry());
        continue;
      }
      Rat v(pick(1, 10), pick(1, 10));
      v.canonicalize();
      entries.push_back(Rate::finite(v));
    }
  return MatrixSpec(m, n, k, std::move(entries));
}

namespace detail {

inline bool covers_all(const std::vector<Cell>& zeros, unsigned row_mask, unsigned col_mask) {
  for (const Cell& z : zeros)
    if (!((row_mask >> z.row) & 1u) && !((col_mask >> z.col) & 1u)) return false;
  return true;
}

}  // namespace detail

// Every cross-method identity the engine promises, on one instance. An
// empty result is a pass. Exceptions from any stage are reported as
// failures of that stage, never propagated.
inline std::vector<CheckFailure> check_instance(const MatrixSpec& m) {
  std::vector<CheckFailure> fails;
  auto fail = [&](const std::string& check, const std::string& detail) { fails.push_back({check, detail}); };
  auto guard = [&](const char* check, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& ex) {
      fail(check, std::string("exception: ") + ex.what());
    }
  };

  const auto h = hypothesis_class(m);
  if (h == HypothesisClass::Insufficient) {
    fail("hypothesis", "max zero matching is below k-1; the exact formulas do not apply");
    return fails;
  }
  if (h == HypothesisClass::ZeroCostK) {
    guard("zero_cost", [&] {
      if (expectation_recursive(m) != 0) fail("zero_cost", "expectation must be 0 for a zero-cost k-assignment");
      if (!(laplace_recursive(m) == RationalFunction(1)))
        fail("zero_cost", "transform must be constant 1 for a zero-cost k-assignment");
    });
    return fails;
  }

  const auto zeros = zero_positions(m);

  guard("covers", [&] {
    auto covers = enumerate_covers(m);
    if (covers.empty()) {
      fail("covers", "no minimum cover found");
      return;
    }
    for (const Cover& c : covers) {
      if (static_cast<int>(c.rows.size() + c.cols.size()) != m.k() - 1)
        fail("covers", "cover size differs from k-1");
      unsigned rm = 0, cm = 0;
      for (int r : c.rows) rm |= 1u << r;
      for (int cc : c.cols) cm |= 1u << cc;
      if (!detail::covers_all(zeros, rm, cm)) fail("covers", "enumerated cover misses a zero");
    }
    if (m.k() >= 2 && m.rows() <= 10 && m.cols() <= 10) {
      for (unsigned rm = 0; rm < (1u << m.rows()); ++rm)
        for (unsigned cm = 0; cm < (1u << m.cols()); ++cm)
          if (__builtin_popcount(rm) + __builtin_popcount(cm) == m.k() - 2 && detail::covers_all(zeros, rm, cm))
            fail("covers", "a cover smaller than k-1 exists, contradicting the matching number");
    }

    auto forced = forced_rows(m);
    std::vector<int> common = covers.front().rows;
    for (const Cover& c : covers) {
      std::vector<int> next;
      std::set_intersection(common.begin(), common.end(), c.rows.begin(), c.rows.end(), std::back_inserter(next));
      common = std::move(next);
    }
    if (forced != common) fail("forced_rows", "forced rows differ from the intersection of all cover row parts");
  });

  std::optional<CriticalLattice> lat;
  guard("lattice", [&] {
    lat.emplace(build_lattice(m));
    if (lat->element(lat->top()).cover.rows != forced_rows(m))
      fail("lattice", "top cover's row part is not the forced row set");
    for (int a = 0; a < lat->size(); ++a)
      for (int b = a + 1; b < lat->size(); ++b) {
        const Cover& ca = lat->element(a).cover;
        const Cover& cb = lat->element(b).cover;
        Cover meet{detail::set_union(ca.rows, cb.rows), detail::set_intersect(ca.cols, cb.cols)};
        Cover join{detail::set_intersect(ca.rows, cb.rows), detail::set_union(ca.cols, cb.cols)};
        bool meet_found = false, join_found = false;
        for (int i = 0; i < lat->size(); ++i) {
          meet_found = meet_found || lat->element(i).cover == meet;
          join_found = join_found || lat->element(i).cover == join;
        }
        if (!meet_found) fail("lattice", "meet of two covers is not a minimum cover");
        if (!join_found) fail("lattice", "join of two covers is not a minimum cover");
        if (lat->poset().leq(a, b) && !(lat->meet_rate(a, b) > 0))
          fail("lattice", "comparable rectangles with empty intersection");
      }
  });

  std::optional<Rat> expect;
  guard("expectation", [&] {
    if (!lat) return;
    Rat e_interval = expectation_interval_form(*lat);
    Rat e_chain = expectation_chain_form(*lat);
    Rat e_rec = expectation_recursive(m);
    if (e_interval != e_chain)
      fail("expectation", "interval form " + rat_str(e_interval) + " != chain form " + rat_str(e_chain));
    if (e_interval != e_rec)
      fail("expectation", "interval form " + rat_str(e_interval) + " != recursion " + rat_str(e_rec));
    if (!(e_interval > 0)) fail("expectation", "expected value must be positive without a zero k-assignment");
    expect = e_interval;
  });

  std::optional<RationalFunction> rf;
  guard("laplace_recursion", [&] {
    rf = laplace_recursive(m);
    if (rf->eval(0) != 1) fail("laplace_recursion", "transform is not 1 at t = 0");
    if (rf->num().degree() >= rf->den().degree()) fail("laplace_recursion", "transform is not a proper fraction");
    if (rf->den().degree() > recursion_step_count(m))
      fail("laplace_recursion", "denominator degree exceeds the number of recursion steps");
    if (expect) {
      Rat d = derivative(*rf).eval(0);
      if (-d != *expect) fail("laplace_recursion", "-L'(0) = " + rat_str(Rat(-d)) + " != E = " + rat_str(*expect));
      Rat second = derivative(derivative(*rf)).eval(0);
      if (second - *expect * *expect < 0) fail("laplace_recursion", "variance from L''(0) is negative");
    }
  });

  if (!lat || !rf || !expect) return fails;

  auto report = genericity(*lat);
  if (report.generic()) {
    guard("laplace_closed", [&] {
      auto chain = laplace_chain_form(*lat);
      auto inverse = laplace_inverse_form(*lat);
      if (chain.terms.size() != inverse.terms.size()) {
        fail("laplace_closed", "chain and inverse forms differ in term count");
        return;
      }
      for (std::size_t i = 0; i < chain.terms.size(); ++i)
        if (chain.terms[i].coeff != inverse.terms[i].coeff || chain.terms[i].rate != inverse.terms[i].rate ||
            chain.terms[i].element != inverse.terms[i].element) {
          fail("laplace_closed", "chain and inverse coefficients differ at element " + std::to_string(i));
          break;
        }
      if (coeff_sum(chain) != 1) fail("laplace_closed", "mixture coefficients do not sum to 1");
      if (mixture_mean(chain) != *expect) fail("laplace_closed", "mixture mean differs from the expectation");
      if (mixture_second_moment(chain) - *expect * *expect < 0) fail("laplace_closed", "mixture variance is negative");
      if (!(mixture_transform(chain) == *rf)) fail("laplace_closed", "mixture and recursion transforms differ");
      if (mixture_eval(chain, 1) != rf->eval(1)) fail("laplace_closed", "evaluation at t = 1 differs");
      auto pf = partial_fractions(*rf);
      if (!mixture_equal(pf, chain)) fail("laplace_closed", "partial fractions of the recursion differ from the mixture");
      for (int i = 0; i <= 50; ++i)
        if (mixture_density(chain, i * 0.1) < -1e-12) {
          fail("laplace_closed", "density below tolerance at x = " + std::to_string(i * 0.1));
          break;
        }
      if (std::abs(mixture_cdf(chain, 0.0)) > 1e-12) fail("laplace_closed", "cdf(0) is not 0");
    });
  } else {
    guard("non_generic", [&] {
      try {
        laplace_chain_form(*lat);
        fail("non_generic", "chain form must refuse a non-generic lattice");
      } catch (const NonGenericError&) {
      }
      try {
        laplace_inverse_form(*lat);
        fail("non_generic", "inverse form must refuse a non-generic lattice");
      } catch (const NonGenericError&) {
      }
      try {
        auto pf = partial_fractions(*rf);
        if (!(mixture_transform(pf) == *rf)) fail("non_generic", "partial fractions do not reproduce the transform");
        if (coeff_sum(pf) != 1) fail("non_generic", "partial fraction coefficients do not sum to 1");
        if (mixture_mean(pf) != *expect) fail("non_generic", "partial fraction mean differs from the expectation");
      } catch (const RepeatedPoleError&) {
      }
    });
  }
  return fails;
}

// True when the instance exhibits an identity failure worth reproducing.
// Instances outside the engine's hypothesis are not reproducers.
inline bool fails_identities(const MatrixSpec& m) {
  if (hypothesis_class(m) == HypothesisClass::Insufficient) return false;
  return !check_instance(m).empty();
}

// Shrink a failing instance: drop rows and columns, de-zero cells, push
// rates to 1, as long as the failure survives. Each accepted step reduces a
// monotone quantity, so this terminates.
inline MatrixSpec minimize_failing(MatrixSpec cur) {
  auto try_take = [&](const MatrixSpec& cand) {
    if (!fails_identities(cand)) return false;
    cur = cand;
    return true;
  };
  bool improved = true;
  while (improved) {
    improved = false;
    for (int r = 0; r < cur.rows() && !improved; ++r) {
      if (cur.rows() <= 1 || cur.k() > std::min(cur.rows() - 1, cur.cols())) break;
      std::vector<Rate> entries;
      for (int rr = 0; rr < cur.rows(); ++rr) {
        if (rr == r) continue;
        for (int c = 0; c < cur.cols(); ++c) entries.push_back(cur.at(rr, c));
      }
      improved = try_take(MatrixSpec(cur.rows() - 1, cur.cols(), cur.k(), std::move(entries)));
    }
    for (int c = 0; c < cur.cols() && !improved; ++c) {
      if (cur.cols() <= 1 || cur.k() > std::min(cur.rows(), cur.cols() - 1)) break;
      std::vector<Rate> entries;
      for (int r = 0; r < cur.rows(); ++r)
        for (int cc = 0; cc < cur.cols(); ++cc)
          if (cc != c) entries.push_back(cur.at(r, cc));
      improved = try_take(MatrixSpec(cur.rows(), cur.cols() - 1, cur.k(), std::move(entries)));
    }
    for (int r = 0; r < cur.rows() && !improved; ++r)
      for (int c = 0; c < cur.cols() && !improved; ++c) {
        if (!cur.at(r, c).is_zero_entry() && cur.at(r, c).value() == 1) continue;
        std::vector<Rate> entries;
        for (int rr = 0; rr < cur.rows(); ++rr)
          for (int cc = 0; cc < cur.cols(); ++cc)
            entries.push_back(rr == r && cc == c ? Rate::finite(1) : cur.at(rr, cc));
        improved = try_take(MatrixSpec(cur.rows(), cur.cols(), cur.k(), std::move(entries)));
      }
  }
  return cur;
}

}  // namespace kcomplete
