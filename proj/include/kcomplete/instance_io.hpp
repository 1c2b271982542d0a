#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kcomplete/cover_lattice.hpp"
#include "kcomplete/exact_formulas.hpp"
#include "kcomplete/matrix_model.hpp"
#include "kcomplete/mixture.hpp"
#include "kcomplete/polynomial.hpp"
#include "kcomplete/rational.hpp"
#include "kcomplete/simulation.hpp"

namespace kcomplete {

using json = nlohmann::json;

struct InstanceError : std::runtime_error {
  explicit InstanceError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline int require_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw InstanceError(std::string("instance field \"") + key + "\" must be an integer");
  return j[key].get<int>();
}

inline Rate parse_entry(const json& e, int row, int col) {
  const std::string where = " at (" + std::to_string(row + 1) + "," + std::to_string(col + 1) + ")";
  if (e.is_string()) {
    const std::string s = e.get<std::string>();
    if (s == "zero") return Rate::zero_entry();
    Rat v;
    try {
      v = parse_rational(s);
    } catch (const std::exception& ex) {
      throw InstanceError("bad rate \"" + s + "\"" + where + ": " + ex.what());
    }
    if (v <= 0) throw InstanceError("rate must be positive" + where + ", got " + s);
    return Rate::finite(v);
  }
  if (e.is_number_integer()) {
    if (e.is_number_unsigned() ? e.get<std::uint64_t>() == 0 : e.get<std::int64_t>() <= 0)
      throw InstanceError("rate must be a positive integer" + where);
    return Rate::finite(Rat(e.get<std::int64_t>()));
  }
  if (e.is_number())
    throw InstanceError("non-integer numeric rate" + where + "; write exact rates as strings \"p/q\"");
  throw InstanceError("entry" + where + " must be \"zero\", \"p/q\", or a positive integer");
}

}  // namespace detail

inline MatrixSpec parse_instance(const json& j) {
  if (!j.is_object()) throw InstanceError("instance must be a JSON object");
  const int rows = detail::require_int(j, "rows");
  const int cols = detail::require_int(j, "cols");
  const int k = detail::require_int(j, "k");
  if (!j.contains("entries") || !j["entries"].is_array())
    throw InstanceError("instance field \"entries\" must be an array of rows");
  const auto& grid = j["entries"];
  if (static_cast<int>(grid.size()) != rows) throw InstanceError("entries row count does not match \"rows\"");
  std::vector<Rate> entries;
  for (int r = 0; r < rows; ++r) {
    if (!grid[r].is_array() || static_cast<int>(grid[r].size()) != cols)
      throw InstanceError("entries row " + std::to_string(r + 1) + " does not match \"cols\"");
    for (int c = 0; c < cols; ++c) entries.push_back(detail::parse_entry(grid[r][c], r, c));
  }
  try {
    return MatrixSpec(rows, cols, k, std::move(entries));
  } catch (const std::exception& ex) {
    throw InstanceError(ex.what());
  }
}

inline json instance_to_json(const MatrixSpec& m) {
  json grid = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c)
      row.push_back(m.at(r, c).is_zero_entry() ? json("zero") : json(rat_str(m.at(r, c).value())));
    grid.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"k", m.k()}, {"entries", std::move(grid)}};
}

// Matrix rows and columns are 1-based in every report, matching the instance
// file's human orientation. Lattice element indices are 0-based positions
// into the "elements" array.
inline json cover_to_json(const Cover& cover) {
  json rows = json::array(), cols = json::array();
  for (int r : cover.rows) rows.push_back(r + 1);
  for (int c : cover.cols) cols.push_back(c + 1);
  return json{{"rows", std::move(rows)}, {"cols", std::move(cols)}};
}

inline json lattice_to_json(const CriticalLattice& lat) {
  json elements = json::array();
  for (int i = 0; i < lat.size(); ++i) {
    const auto& el = lat.element(i);
    json rect_rows = json::array(), rect_cols = json::array();
    for (int r : el.rect.rows) rect_rows.push_back(r + 1);
    for (int c : el.rect.cols) rect_cols.push_back(c + 1);
    elements.push_back(json{{"index", i},
                            {"cover", cover_to_json(el.cover)},
                            {"rectangle", json{{"rows", std::move(rect_rows)},
                                               {"cols", std::move(rect_cols)},
                                               {"rate", rat_str(el.rect.rate)}}}});
  }
  json edges = json::array();
  for (const auto& [a, b] : hasse_edges(lat.poset())) edges.push_back(json::array({a, b}));
  auto report = genericity(lat);
  json violations = json::array();
  for (const auto& v : report.violations)
    violations.push_back(json{{"lower", v.lower}, {"upper", v.upper}, {"rate", rat_str(v.rate)}});
  return json{{"elements", std::move(elements)},
              {"hasse_edges", std::move(edges)},
              {"bottom", lat.bottom()},
              {"top", lat.top()},
              {"generic", report.generic()},
              {"violations", std::move(violations)}};
}

inline json mixture_to_json(const ExpMixture& mix) {
  json terms = json::array();
  for (const auto& t : mix.terms) {
    json term{{"rate", rat_str(t.rate)}, {"coeff", rat_str(t.coeff)}};
    term["cover"] = t.element >= 0 ? json(t.element) : json(nullptr);
    terms.push_back(std::move(term));
  }
  return terms;
}

inline json rf_to_json(const RationalFunction& f) {
  json num = json::array(), den = json::array();
  for (const Rat& c : f.num().coeffs()) num.push_back(rat_str(c));
  for (const Rat& c : f.den().coeffs()) den.push_back(rat_str(c));
  return json{{"num", std::move(num)}, {"den", std::move(den)}};
}

inline json estimate_to_json(const SampleEstimate& est) {
  json j{{"mean", est.mean}, {"std_error", est.std_error}, {"n", est.n}, {"seed", est.seed}};
  if (est.t) j["t"] = *est.t;
  return j;
}

}  // namespace kcomplete
