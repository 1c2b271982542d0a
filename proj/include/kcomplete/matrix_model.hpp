#pragma once

#include <algorithm>
#include <compare>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kcomplete/rational.hpp"

namespace kcomplete {

// Thrown when a deterministic-zero entry leaks into rate arithmetic. Critical
// rectangles contain no zero entries, so hitting this is a logic bug upstream.
struct ZeroEntryError : std::logic_error {
  ZeroEntryError() : std::logic_error("zero entry used in rate arithmetic") {}
};

// Thrown when an operation requires a hypothesis class the instance does not
// satisfy (e.g. cover enumeration on an instance without k-1 independent zeros).
struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One matrix entry: an exponential with a strictly positive rational rate, or
// a deterministic zero.
class Rate {
 public:
  static Rate zero_entry() { return Rate(true, Rat(0)); }

  static Rate finite(Rat value) {
    if (value <= 0) throw std::invalid_argument("rate must be positive, got " + rat_str(value));
    return Rate(false, std::move(value));
  }

  bool is_zero_entry() const { return zero_; }

  const Rat& value() const {
    if (zero_) throw ZeroEntryError();
    return value_;
  }

  bool operator==(const Rate& other) const {
    return zero_ == other.zero_ && (zero_ || value_ == other.value_);
  }

 private:
  Rate(bool zero, Rat value) : zero_(zero), value_(std::move(value)) {}
  bool zero_;
  Rat value_;
};

struct Cell {
  int row = 0;
  int col = 0;
  auto operator<=>(const Cell&) const = default;
};

// A set of cells with pairwise distinct rows and distinct columns.
class Matching {
 public:
  Matching() = default;

  explicit Matching(std::vector<Cell> cells) : cells_(std::move(cells)) {
    std::sort(cells_.begin(), cells_.end());
    for (std::size_t i = 0; i < cells_.size(); ++i)
      for (std::size_t j = i + 1; j < cells_.size(); ++j)
        if (cells_[i].row == cells_[j].row || cells_[i].col == cells_[j].col)
          throw std::invalid_argument("cells do not form a matching");
  }

  const std::vector<Cell>& cells() const { return cells_; }
  int size() const { return static_cast<int>(cells_.size()); }

 private:
  std::vector<Cell> cells_;
};

// The m x n grid of entry rates together with the target assignment size k.
// Indices are 0-based here; user-facing I/O converts to 1-based.
class MatrixSpec {
 public:
  MatrixSpec(int rows, int cols, int k, std::vector<Rate> entries)
      : rows_(rows), cols_(cols), k_(k), entries_(std::move(entries)) {
    if (rows_ < 1 || cols_ < 1) throw std::invalid_argument("matrix must have at least one row and column");
    if (k_ < 0 || k_ > std::min(rows_, cols_))
      throw std::invalid_argument("k must satisfy 0 <= k <= min(rows, cols)");
    if (entries_.size() != static_cast<std::size_t>(rows_) * cols_)
      throw std::invalid_argument("entry grid does not match dimensions");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int k() const { return k_; }

  const Rate& at(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("cell out of range");
    return entries_[static_cast<std::size_t>(r) * cols_ + c];
  }

 private:
  int rows_, cols_, k_;
  std::vector<Rate> entries_;
};

enum class HypothesisClass {
  ZeroCostK,        // k independent zeros exist: the optimum is 0 almost surely
  ExactlyKMinus1,   // exactly k-1 independent zeros: the closed formulas apply
  Insufficient,     // fewer than k-1 independent zeros: out of scope
};

inline std::string to_string(HypothesisClass h) {
  switch (h) {
    case HypothesisClass::ZeroCostK: return "zero_cost_k";
    case HypothesisClass::ExactlyKMinus1: return "exactly_k_minus_1";
    case HypothesisClass::Insufficient: return "insufficient";
  }
  return "?";
}

inline std::vector<Cell> zero_positions(const MatrixSpec& m) {
  std::vector<Cell> zs;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (m.at(r, c).is_zero_entry()) zs.push_back({r, c});
  return zs;
}

namespace detail {

// Kuhn's augmenting-path maximum matching on an explicit cell set,
// rows on the left. Returns col->row assignment (-1 for unmatched).
inline std::vector<int> match_cols(int rows, int cols, const std::vector<Cell>& cells) {
  std::vector<std::vector<int>> adj(rows);
  for (const Cell& z : cells) adj[z.row].push_back(z.col);
  std::vector<int> col_match(cols, -1);
  std::vector<char> seen;
  auto augment = [&](auto&& self, int r) -> bool {
    for (int c : adj[r]) {
      if (seen[c]) continue;
      seen[c] = 1;
      if (col_match[c] == -1 || self(self, col_match[c])) {
        col_match[c] = r;
        return true;
      }
    }
    return false;
  };
  for (int r = 0; r < rows; ++r) {
    seen.assign(cols, 0);
    augment(augment, r);
  }
  return col_match;
}

inline int max_matching_size(int rows, int cols, const std::vector<Cell>& cells) {
  auto col_match = match_cols(rows, cols, cells);
  return static_cast<int>(std::count_if(col_match.begin(), col_match.end(), [](int r) { return r >= 0; }));
}

}  // namespace detail

// A maximum-cardinality matching inside the zero set.
inline Matching max_zero_matching(const MatrixSpec& m) {
  auto col_match = detail::match_cols(m.rows(), m.cols(), zero_positions(m));
  std::vector<Cell> cells;
  for (int c = 0; c < m.cols(); ++c)
    if (col_match[c] != -1) cells.push_back({col_match[c], c});
  return Matching(std::move(cells));
}

inline HypothesisClass hypothesis_class(const MatrixSpec& m) {
  int size = max_zero_matching(m).size();
  if (size >= m.k()) return HypothesisClass::ZeroCostK;
  if (size == m.k() - 1) return HypothesisClass::ExactlyKMinus1;
  return HypothesisClass::Insufficient;
}

// Rows that belong to every (k-1)-cover of the zeros. A row r can be avoided
// by a (k-1)-cover iff taking all columns of row r's zeros and covering the
// remaining zeros by a maximum matching still fits in k-1 lines.
inline std::vector<int> forced_rows(const MatrixSpec& m) {
  if (hypothesis_class(m) != HypothesisClass::ExactlyKMinus1)
    throw HypothesisError("no (k-1)-cover of the zeros exists");
  auto zeros = zero_positions(m);
  std::vector<int> forced;
  for (int r = 0; r < m.rows(); ++r) {
    std::vector<char> col_forced(m.cols(), 0);
    int ncols = 0;
    for (const Cell& z : zeros)
      if (z.row == r && !col_forced[z.col]) col_forced[z.col] = 1, ++ncols;
    std::vector<Cell> rest;
    for (const Cell& z : zeros)
      if (z.row != r && !col_forced[z.col]) rest.push_back(z);
    if (ncols + detail::max_matching_size(m.rows(), m.cols(), rest) > m.k() - 1) forced.push_back(r);
  }
  return forced;
}

// M with row r deleted and k decremented; expectation is preserved when r is
// a forced row.
inline MatrixSpec remove_row(const MatrixSpec& m, int row) {
  if (m.k() == 0) throw std::invalid_argument("cannot decrement k below 0");
  if (row < 0 || row >= m.rows()) throw std::out_of_range("row out of range");
  if (m.rows() == 1) throw std::invalid_argument("cannot remove the only row");
  std::vector<Rate> entries;
  entries.reserve(static_cast<std::size_t>(m.rows() - 1) * m.cols());
  for (int r = 0; r < m.rows(); ++r) {
    if (r == row) continue;
    for (int c = 0; c < m.cols(); ++c) entries.push_back(m.at(r, c));
  }
  return MatrixSpec(m.rows() - 1, m.cols(), m.k() - 1, std::move(entries));
}

inline MatrixSpec insert_zero(const MatrixSpec& m, int row, int col) {
  if (m.at(row, col).is_zero_entry()) throw std::invalid_argument("cell is already a zero entry");
  std::vector<Rate> entries;
  entries.reserve(static_cast<std::size_t>(m.rows()) * m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      entries.push_back(r == row && c == col ? Rate::zero_entry() : m.at(r, c));
  return MatrixSpec(m.rows(), m.cols(), m.k(), std::move(entries));
}

}  // namespace kcomplete
