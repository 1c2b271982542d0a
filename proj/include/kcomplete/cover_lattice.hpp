#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kcomplete/matrix_model.hpp"
#include "kcomplete/poset.hpp"
#include "kcomplete/rational.hpp"

namespace kcomplete {

// A minimum cover of the zero set by k-1 lines, split into its row part and
// column part. Both sorted ascending, 0-based.
struct Cover {
  std::vector<int> rows;
  std::vector<int> cols;
  bool operator==(const Cover&) const = default;
};

// The critical rectangle of a cover: the cells left uncovered. Zero-free by
// definition of a cover, so the total rate is a plain rational.
struct Rectangle {
  std::vector<int> rows;
  std::vector<int> cols;
  Rat rate;
};

struct LatticeElement {
  Cover cover;
  Rectangle rect;
};

namespace detail {

inline bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline std::vector<int> set_intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::vector<int> set_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::vector<int> complement(int n, const std::vector<int>& a) {
  std::vector<int> out;
  auto it = a.begin();
  for (int i = 0; i < n; ++i) {
    if (it != a.end() && *it == i) {
      ++it;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace detail

// Order on covers: alpha <= beta iff cols(alpha) subset cols(beta) and
// rows(alpha) superset rows(beta). Equivalent to R(alpha)'s columns
// containing R(beta)'s and rows contained in R(beta)'s.
inline bool cover_leq(const Cover& a, const Cover& b) {
  return detail::is_subset(a.cols, b.cols) && detail::is_subset(b.rows, a.rows);
}

inline Rectangle rectangle_of(const MatrixSpec& spec, const Cover& cover) {
  Rectangle rect;
  rect.rows = detail::complement(spec.rows(), cover.rows);
  rect.cols = detail::complement(spec.cols(), cover.cols);
  rect.rate = 0;
  for (int r : rect.rows)
    for (int c : rect.cols) {
      if (spec.at(r, c).is_zero_entry())
        throw std::logic_error("cover leaves zero at (" + std::to_string(r) + "," + std::to_string(c) +
                               ") uncovered");
      rect.rate += spec.at(r, c).value();
    }
  return rect;
}

// Total rate of R(a) meet R(b) as cell sets. For comparable covers a <= b
// this region equals rows(R(a)) x cols(R(b)) and is nonempty and zero-free.
inline Rat intersection_rate(const MatrixSpec& spec, const Rectangle& a, const Rectangle& b) {
  Rat total = 0;
  for (int r : detail::set_intersect(a.rows, b.rows))
    for (int c : detail::set_intersect(a.cols, b.cols))
      total += spec.at(r, c).value();
  return total;
}

// All minimum (k-1)-covers of the zero set. The row part determines the
// column part: the columns of the zeros it leaves row-uncovered. Enumerating
// row subsets of size < k and keeping those whose completion has total size
// exactly k-1 therefore yields every minimum cover exactly once.
inline std::vector<Cover> enumerate_covers(const MatrixSpec& spec) {
  if (hypothesis_class(spec) != HypothesisClass::ExactlyKMinus1)
    throw HypothesisError("cover enumeration requires a maximum zero matching of size exactly k-1");
  const int m = spec.rows();
  const int target = spec.k() - 1;
  const auto zeros = zero_positions(spec);

  std::vector<Cover> covers;
  std::vector<int> subset;
  auto recurse = [&](auto&& self, int next) -> void {
    if (static_cast<int>(subset.size()) <= target) {
      std::vector<bool> in_subset(m, false);
      for (int r : subset) in_subset[r] = true;
      std::vector<bool> col_seen(spec.cols(), false);
      Cover cover;
      cover.rows = subset;
      for (const Cell& z : zeros)
        if (!in_subset[z.row] && !col_seen[z.col]) {
          col_seen[z.col] = true;
          cover.cols.push_back(z.col);
        }
      std::sort(cover.cols.begin(), cover.cols.end());
      if (static_cast<int>(cover.rows.size() + cover.cols.size()) == target) covers.push_back(std::move(cover));
    }
    if (static_cast<int>(subset.size()) == target) return;
    for (int r = next; r < m; ++r) {
      subset.push_back(r);
      self(self, r + 1);
      subset.pop_back();
    }
  };
  recurse(recurse, 0);
  return covers;
}

// The lattice of minimum covers with its critical rectangles, numbered in a
// linear extension: ascending column count, then columns, then rows.
class CriticalLattice {
 public:
  CriticalLattice(MatrixSpec spec, std::vector<LatticeElement> elements, FinitePoset poset)
      : spec_(std::move(spec)), elements_(std::move(elements)), poset_(std::move(poset)) {
    auto mins = poset_.minimal_elements();
    auto maxs = poset_.maximal_elements();
    if (mins.size() != 1 || maxs.size() != 1)
      throw std::logic_error("cover order is not a lattice: minimum or maximum is not unique");
    bottom_ = mins[0];
    top_ = maxs[0];
  }

  const MatrixSpec& spec() const { return spec_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const LatticeElement& element(int i) const { return elements_.at(i); }
  const FinitePoset& poset() const { return poset_; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }

  Rat meet_rate(int a, int b) const {
    return intersection_rate(spec_, elements_[a].rect, elements_[b].rect);
  }

 private:
  MatrixSpec spec_;
  std::vector<LatticeElement> elements_;
  FinitePoset poset_;
  int bottom_;
  int top_;
};

inline CriticalLattice build_lattice(const MatrixSpec& spec) {
  auto covers = enumerate_covers(spec);
  std::sort(covers.begin(), covers.end(), [](const Cover& a, const Cover& b) {
    if (a.cols.size() != b.cols.size()) return a.cols.size() < b.cols.size();
    if (a.cols != b.cols) return a.cols < b.cols;
    return a.rows < b.rows;
  });

  std::vector<LatticeElement> elements;
  elements.reserve(covers.size());
  for (const Cover& cover : covers) elements.push_back({cover, rectangle_of(spec, cover)});

  const int n = static_cast<int>(elements.size());
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) leq[a][b] = cover_leq(elements[a].cover, elements[b].cover);

  return CriticalLattice(spec, std::move(elements), FinitePoset(std::move(leq)));
}

}  // namespace kcomplete
