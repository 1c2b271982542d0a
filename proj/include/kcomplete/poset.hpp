#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kcomplete {

// An explicit finite poset on elements 0..n-1. The element numbering must be
// a linear extension: leq(a, b) with a != b implies a < b, so every relation
// matrix is upper triangular as stored.
class FinitePoset {
 public:
  explicit FinitePoset(std::vector<std::vector<bool>> leq) : leq_(std::move(leq)) {
    const int n = size();
    for (const auto& row : leq_)
      if (static_cast<int>(row.size()) != n) throw std::invalid_argument("relation matrix not square");
    for (int a = 0; a < n; ++a) {
      if (!leq_[a][a]) throw std::invalid_argument("relation not reflexive at " + std::to_string(a));
      for (int b = 0; b < n; ++b) {
        if (a != b && leq_[a][b] && leq_[b][a])
          throw std::invalid_argument("relation not antisymmetric on " + std::to_string(a) + "," + std::to_string(b));
        if (b < a && leq_[a][b])
          throw std::invalid_argument("element order is not a linear extension");
        if (!leq_[a][b]) continue;
        for (int c = 0; c < n; ++c)
          if (leq_[b][c] && !leq_[a][c])
            throw std::invalid_argument("relation not transitive through " + std::to_string(b));
      }
    }
  }

  int size() const { return static_cast<int>(leq_.size()); }
  bool leq(int a, int b) const { return leq_[a][b]; }
  bool less(int a, int b) const { return a != b && leq_[a][b]; }

  std::vector<int> minimal_elements() const {
    std::vector<int> out;
    for (int b = 0; b < size(); ++b) {
      bool minimal = true;
      for (int a = 0; a < size(); ++a)
        if (less(a, b)) { minimal = false; break; }
      if (minimal) out.push_back(b);
    }
    return out;
  }

  std::vector<int> maximal_elements() const {
    std::vector<int> out;
    for (int a = 0; a < size(); ++a) {
      bool maximal = true;
      for (int b = 0; b < size(); ++b)
        if (less(a, b)) { maximal = false; break; }
      if (maximal) out.push_back(a);
    }
    return out;
  }

  std::vector<int> down_set(int b) const {
    std::vector<int> out;
    for (int a = 0; a < size(); ++a)
      if (leq_[a][b]) out.push_back(a);
    return out;
  }

  std::vector<int> up_set(int a) const {
    std::vector<int> out;
    for (int b = 0; b < size(); ++b)
      if (leq_[a][b]) out.push_back(b);
    return out;
  }

  // Subposet on the given elements (ascending indices), renumbered 0..m-1.
  FinitePoset induced(const std::vector<int>& elements) const {
    const int n = static_cast<int>(elements.size());
    std::vector<std::vector<bool>> sub(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sub[i][j] = leq_[elements[i]][elements[j]];
    return FinitePoset(std::move(sub));
  }

 private:
  std::vector<std::vector<bool>> leq_;
};

// Covering pairs (a, b): a < b with nothing strictly between.
inline std::vector<std::pair<int, int>> hasse_edges(const FinitePoset& p) {
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < p.size(); ++b) {
      if (!p.less(a, b)) continue;
      bool covering = true;
      for (int c = 0; c < p.size(); ++c)
        if (p.less(a, c) && p.less(c, b)) { covering = false; break; }
      if (covering) edges.emplace_back(a, b);
    }
  return edges;
}

// All strictly increasing element sequences, optionally anchored at one or
// both endpoints. Lexicographic in the element numbering, so deterministic.
inline std::vector<std::vector<int>> enumerate_chains(const FinitePoset& p,
                                                      std::optional<int> from = std::nullopt,
                                                      std::optional<int> to = std::nullopt) {
  std::vector<std::vector<int>> chains;
  std::vector<int> current;
  auto extend = [&](auto&& self, int last) -> void {
    if (!to || last == *to) chains.push_back(current);
    if (to && last == *to) return;
    for (int next = last + 1; next < p.size(); ++next) {
      if (!p.less(last, next)) continue;
      if (to && !p.leq(next, *to)) continue;
      current.push_back(next);
      self(self, next);
      current.pop_back();
    }
  };
  if (from && to && !p.leq(*from, *to)) return chains;
  for (int start = 0; start < p.size(); ++start) {
    if (from && start != *from) continue;
    if (to && !p.leq(start, *to)) continue;
    current.assign(1, start);
    extend(extend, start);
  }
  return chains;
}

}  // namespace kcomplete
