#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>

#include "kcomplete/instance_io.hpp"
#include "kcomplete/mixture.hpp"
#include "kcomplete/rational.hpp"

namespace kcomplete {

struct MethodValues {
  Rat interval;
  Rat chains;
  Rat recursion;
};

// The disagreement contract (exit 3) in one testable place: any mismatch
// between methods is an internal bug and reports every value.
inline std::pair<int, json> expect_report(const MethodValues& v) {
  if (v.interval == v.chains && v.interval == v.recursion)
    return {0, json{{"expectation", rat_str(v.interval)}, {"method", "all"}}};
  return {3, json{{"error", "cross-method disagreement"},
                  {"interval", rat_str(v.interval)},
                  {"chains", rat_str(v.chains)},
                  {"recursion", rat_str(v.recursion)}}};
}

// Grid export, x = 0, step, 2*step, ... up to max_x. Full binary64 decimal
// rendering so the file round-trips.
inline std::string density_csv(const ExpMixture& mix, double max_x, double step) {
  char line[128];
  std::string out = "x,pdf,cdf\n";
  for (int i = 0;; ++i) {
    const double x = i * step;
    if (x > max_x * (1 + 1e-12)) break;
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", x, mixture_density(mix, x), mixture_cdf(mix, x));
    out += line;
  }
  return out;
}

inline double z_score(double mean, double std_error, double exact) {
  if (std_error > 0) return (mean - exact) / std_error;
  return mean == exact ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace kcomplete
