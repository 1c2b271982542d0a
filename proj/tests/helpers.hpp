#pragma once

#include <string>
#include <vector>

#include "kcomplete/matrix_model.hpp"
#include "kcomplete/rational.hpp"

namespace testutil {

// Grid shorthand: "0" is a zero entry, anything else parses as a rate.
inline kcomplete::MatrixSpec make(int k, const std::vector<std::vector<std::string>>& grid) {
  const int rows = static_cast<int>(grid.size());
  const int cols = static_cast<int>(grid.front().size());
  std::vector<kcomplete::Rate> entries;
  for (const auto& row : grid)
    for (const auto& cell : row)
      entries.push_back(cell == "0" ? kcomplete::Rate::zero_entry()
                                    : kcomplete::Rate::finite(kcomplete::parse_rational(cell)));
  return kcomplete::MatrixSpec(rows, cols, k, std::move(entries));
}

inline kcomplete::Rat rat(const std::string& s) { return kcomplete::parse_rational(s); }

}  // namespace testutil
