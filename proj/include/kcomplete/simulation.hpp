#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "kcomplete/matrix_model.hpp"
#include "kcomplete/rng.hpp"

namespace kcomplete {

struct SampleEstimate {
  double mean = 0;
  double std_error = 0;
  long long n = 0;
  std::uint64_t seed = 0;
  std::optional<double> t;
};

// One sampled cost grid: zeros stay 0, a rate-a entry becomes -ln(U)/a.
// Cells are drawn row-major, so a grid is a pure function of the stream
// state.
inline std::vector<std::vector<double>> sample_matrix(const MatrixSpec& m, SplitMix64& stream) {
  std::vector<std::vector<double>> grid(m.rows(), std::vector<double>(m.cols(), 0.0));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      const Rate& rate = m.at(r, c);
      if (rate.is_zero_entry()) continue;
      grid[r][c] = -std::log(stream.next_uniform01()) / rat_double(rate.value());
    }
  return grid;
}

struct AssignmentResult {
  double value = 0;
  Matching cells{{}};
};

// Minimum-cost matching of size exactly k: k rounds of shortest augmenting
// paths over reduced costs, multi-sourced at the unmatched rows. Potentials
// keep every reduced cost nonnegative, so each round is a plain Dijkstra
// and the matching stays optimal for its cardinality.
inline AssignmentResult min_cost_k_assignment(const std::vector<std::vector<double>>& cost, int k) {
  const int m = static_cast<int>(cost.size());
  const int n = m > 0 ? static_cast<int>(cost[0].size()) : 0;
  if (k < 0 || k > std::min(m, n)) throw std::invalid_argument("assignment size out of range");
  for (const auto& row : cost)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("cost grid is ragged");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(m, 0.0), v(n, 0.0);
  std::vector<int> row_match(m, -1), col_match(n, -1);

  for (int phase = 0; phase < k; ++phase) {
    std::vector<double> dist(n, kInf);
    std::vector<int> pred(n, -1);
    std::vector<char> done(n, 0);
    for (int r = 0; r < m; ++r) {
      if (row_match[r] != -1) continue;
      for (int c = 0; c < n; ++c) {
        double d = cost[r][c] - u[r] - v[c];
        if (d < dist[c]) dist[c] = d, pred[c] = r;
      }
    }

    int free_col = -1;
    std::vector<char> row_final(m, 0);
    while (true) {
      int best = -1;
      for (int c = 0; c < n; ++c)
        if (!done[c] && (best == -1 || dist[c] < dist[best])) best = c;
      if (best == -1 || dist[best] == kInf) throw std::logic_error("no augmenting path in assignment solver");
      done[best] = 1;
      if (col_match[best] == -1) {
        free_col = best;
        break;
      }
      const int r = col_match[best];
      row_final[r] = 1;
      for (int c = 0; c < n; ++c) {
        if (done[c]) continue;
        double nd = dist[best] + cost[r][c] - u[r] - v[c];
        if (nd < dist[c]) dist[c] = nd, pred[c] = r;
      }
    }

    const double total = dist[free_col];
    for (int r = 0; r < m; ++r) {
      if (row_match[r] == -1)
        u[r] += total;
      else if (row_final[r])
        u[r] += total - dist[row_match[r]];
    }
    for (int c = 0; c < n; ++c)
      if (done[c]) v[c] += dist[c] - total;

    for (int c = free_col; c != -1;) {
      const int r = pred[c];
      const int next = row_match[r];
      row_match[r] = c;
      col_match[c] = r;
      c = next;
    }
  }

  std::vector<Cell> cells;
  double value = 0;
  for (int r = 0; r < m; ++r)
    if (row_match[r] != -1) {
      cells.push_back({r, row_match[r]});
      value += cost[r][row_match[r]];
    }
  return {value, Matching(std::move(cells))};
}

// Exhaustive oracle: every k-subset of rows against every injection into
// columns. Exponential; test-scale grids only.
inline double brute_force_k_assignment(const std::vector<std::vector<double>>& cost, int k) {
  const int m = static_cast<int>(cost.size());
  const int n = m > 0 ? static_cast<int>(cost[0].size()) : 0;
  if (k < 0 || k > std::min(m, n)) throw std::invalid_argument("assignment size out of range");
  double best = k == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  std::vector<int> rows;
  std::vector<char> col_used(n, 0);
  auto inject = [&](auto&& self, std::size_t i, double acc) -> void {
    if (i == rows.size()) {
      best = std::min(best, acc);
      return;
    }
    for (int c = 0; c < n; ++c) {
      if (col_used[c]) continue;
      col_used[c] = 1;
      self(self, i + 1, acc + cost[rows[i]][c]);
      col_used[c] = 0;
    }
  };
  auto choose = [&](auto&& self, int next) -> void {
    if (static_cast<int>(rows.size()) == k) {
      inject(inject, 0, 0.0);
      return;
    }
    for (int r = next; r < m; ++r) {
      rows.push_back(r);
      self(self, r + 1);
      rows.pop_back();
    }
  };
  choose(choose, 0);
  return best;
}

namespace detail {

// Fixed-size blocks accumulated by Welford's update and merged in block
// order by Chan's formula. The block boundary is part of the contract: the
// result is a pure function of (seed, N), whatever the thread count.
inline constexpr long long kSampleBlock = 4096;

struct MomentAccumulator {
  long long n = 0;
  double mean = 0;
  double m2 = 0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void merge(const MomentAccumulator& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double delta = o.mean - mean;
    const long long total = n + o.n;
    mean += delta * static_cast<double>(o.n) / static_cast<double>(total);
    m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) / static_cast<double>(total);
    n = total;
  }
};

inline int simulation_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  int threads = hw == 0 ? 1 : static_cast<int>(hw);
  if (const char* env = std::getenv("KCOMPLETE_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || cap < 1) cap = 1;
    threads = static_cast<int>(std::min<long>(threads, cap));
  }
  return std::max(threads, 1);
}

template <class SampleFn>
SampleEstimate estimate_by_blocks(long long n, std::uint64_t seed, SampleFn&& sample) {
  if (n < 2) throw std::invalid_argument("estimate requires at least 2 samples");
  const long long blocks = (n + kSampleBlock - 1) / kSampleBlock;
  std::vector<MomentAccumulator> acc(blocks);
  auto run_block = [&](long long b) {
    const long long lo = b * kSampleBlock;
    const long long hi = std::min(n, lo + kSampleBlock);
    for (long long i = lo; i < hi; ++i) acc[b].add(sample(static_cast<std::uint64_t>(i)));
  };

  const int threads = std::min<long long>(simulation_threads(), blocks);
  if (threads <= 1) {
    for (long long b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (long long b = w; b < blocks; b += threads) run_block(b);
      });
    for (auto& th : pool) th.join();
  }

  MomentAccumulator total;
  for (const auto& a : acc) total.merge(a);
  SampleEstimate est;
  est.mean = total.mean;
  est.std_error = std::sqrt(total.m2 / static_cast<double>(total.n - 1)) / std::sqrt(static_cast<double>(total.n));
  est.n = total.n;
  est.seed = seed;
  return est;
}

}  // namespace detail

inline SampleEstimate estimate_expectation(const MatrixSpec& m, long long n, std::uint64_t seed) {
  return detail::estimate_by_blocks(n, seed, [&](std::uint64_t i) {
    auto stream = sample_stream(seed, i);
    return min_cost_k_assignment(sample_matrix(m, stream), m.k()).value;
  });
}

inline SampleEstimate estimate_laplace(const MatrixSpec& m, double t, long long n, std::uint64_t seed) {
  auto est = detail::estimate_by_blocks(n, seed, [&](std::uint64_t i) {
    auto stream = sample_stream(seed, i);
    return std::exp(-t * min_cost_k_assignment(sample_matrix(m, stream), m.k()).value);
  });
  est.t = t;
  return est;
}

}  // namespace kcomplete
