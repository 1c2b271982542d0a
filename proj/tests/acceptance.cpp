#include <cmath>
#include <exception>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "kcomplete/cover_lattice.hpp"
#include "kcomplete/exact_formulas.hpp"
#include "kcomplete/mixture.hpp"
#include "kcomplete/recursion_engine.hpp"
#include "kcomplete/simulation.hpp"
#include "kcomplete/verify.hpp"
#include "poset_helpers.hpp"

using namespace kcomplete;
using testutil::make;
using testutil::rat;

namespace {

int failures = 0;

void criterion(int idx, const std::string& label, const std::function<bool(std::string&)>& body) {
  std::string why;
  bool ok = false;
  try {
    ok = body(why);
  } catch (const std::exception& e) {
    why = e.what();
  }
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << idx << ": " << label;
  if (!ok && !why.empty()) std::cout << " (" << why << ")";
  std::cout << "\n";
  if (!ok) ++failures;
}

bool expect_all_methods(const MatrixSpec& m, const Rat& e, std::string& why) {
  auto lat = build_lattice(m);
  for (const Rat& got : {expectation_interval_form(lat), expectation_chain_form(lat), expectation_recursive(m)})
    if (got != e) {
      why = "expected " + rat_str(e) + ", got " + rat_str(got);
      return false;
    }
  return true;
}

bool within3(const SampleEstimate& est, double exact, const std::string& name, std::string& why) {
  if (std::abs(est.mean - exact) <= 3 * est.std_error) return true;
  why = name + ": mean " + std::to_string(est.mean) + " vs exact " + std::to_string(exact) +
        " exceeds 3*SE = " + std::to_string(3 * est.std_error);
  return false;
}

}  // namespace

int main() {
  const auto unit = make(2, {{"0", "1"}, {"1", "1"}});
  const auto generic = make(2, {{"0", "1"}, {"2", "3"}});
  const auto diamond = make(3, {{"0", "1", "1"}, {"1", "0", "1"}, {"1", "1", "1"}});

  criterion(1, "exact small-instance values by all methods", [&](std::string& why) {
    if (!expect_all_methods(unit, rat("3/4"), why)) return false;
    if (!expect_all_methods(generic, rat("3/10"), why)) return false;
    if (!expect_all_methods(diamond, rat("11/18"), why)) return false;
    auto mix = merged_terms(laplace_chain_form(build_lattice(generic)));
    if (mix.terms.size() != 2 || mix.terms[0].rate != 4 || mix.terms[0].coeff != 2 ||
        mix.terms[1].rate != 5 || mix.terms[1].coeff != -1) {
      why = "generic 2x2 mixture is not (+2 @ 4, -1 @ 5)";
      return false;
    }
    return true;
  });

  criterion(2, "degenerate transform falls back to the recursion", [&](std::string& why) {
    try {
      laplace_chain_form(build_lattice(unit));
      why = "closed form accepted a non-generic lattice";
      return false;
    } catch (const NonGenericError&) {
    }
    auto x = Polynomial::x();
    auto rf = laplace_recursive(unit);
    if (rf != RationalFunction(x + Polynomial(4), (x + Polynomial(2)) * (x + Polynomial(2)))) {
      why = "recursion transform is not (4+t)/(2+t)^2";
      return false;
    }
    if (derivative(rf).eval(Rat(0)) != rat("-3/4")) {
      why = "transform derivative at 0 is not -3/4";
      return false;
    }
    return true;
  });

  criterion(3, "cross-method identities on 50 randomized instances", [&](std::string& why) {
    for (int i = 0; i < 50; ++i) {
      auto rng = sample_stream(8675309, static_cast<std::uint64_t>(i));
      auto m = random_instance(rng, 5, 4);
      auto fs = check_instance(m);
      if (!fs.empty()) {
        why = "instance " + std::to_string(i) + " " + fs.front().check + ": " + fs.front().detail;
        return false;
      }
    }
    return true;
  });

  criterion(4, "incidence inversion equals the chain expansion on 20 random posets", [&](std::string& why) {
    SplitMix64 rng(5150);
    for (int trial = 0; trial < 20; ++trial) {
      auto p = testutil::random_poset(rng, 2 + static_cast<int>(rng.next() % 5));
      auto f = testutil::random_interval_function(rng, p);
      auto g = invert(p, f);
      for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b)
          if (p.leq(a, b) && g(a, b) != invert_via_chains(p, f, a, b)) {
            why = "poset " + std::to_string(trial) + " interval (" + std::to_string(a) + "," +
                  std::to_string(b) + ")";
            return false;
          }
    }
    return true;
  });

  criterion(5, "Monte Carlo matches the exact values within 3 SE", [&](std::string& why) {
    const long long n = 100000;
    std::uint64_t seed = 1001;
    for (const auto* m : {&unit, &generic, &diamond}) {
      const Rat e = expectation_recursive(*m);
      if (!within3(estimate_expectation(*m, n, seed), rat_double(e), "E", why)) return false;
      const Rat l1 = laplace_recursive(*m).eval(Rat(1));
      if (!within3(estimate_laplace(*m, 1.0, n, seed + 1), rat_double(l1), "L(1)", why)) return false;
      seed += 2;
    }
    if (laplace_recursive(generic).eval(Rat(1)) != rat("23/30")) {
      why = "generic 2x2 L(1) is not 23/30";
      return false;
    }
    return true;
  });

  criterion(6, "simulator reproduces the k=2,3 all-unit constants", [&](std::string& why) {
    const long long n = 100000;
    auto two = make(2, {{"1", "1"}, {"1", "1"}});
    auto three = make(3, {{"1", "1", "1"}, {"1", "1", "1"}, {"1", "1", "1"}});
    if (!within3(estimate_expectation(two, n, 2001), 1.25, "2x2", why)) return false;
    if (!within3(estimate_expectation(three, n, 2002), 49.0 / 36.0, "3x3", why)) return false;
    return true;
  });

  criterion(7, "assignment solver equals brute force on 1000 grids", [&](std::string& why) {
    SplitMix64 rng(7077);
    for (int trial = 0; trial < 1000; ++trial) {
      const int rows = 1 + static_cast<int>(rng.next() % 6);
      const int cols = 1 + static_cast<int>(rng.next() % 6);
      std::vector<std::vector<double>> cost(rows, std::vector<double>(cols));
      for (auto& row : cost)
        for (double& c : row) c = rng.next_uniform01();
      for (int k = 0; k <= std::min(rows, cols); ++k) {
        const double fast = min_cost_k_assignment(cost, k).value;
        const double slow = brute_force_k_assignment(cost, k);
        if (fast != slow) {
          why = "grid " + std::to_string(trial) + " k=" + std::to_string(k) + ": " +
                std::to_string(fast) + " vs " + std::to_string(slow);
          return false;
        }
      }
    }
    return true;
  });

  return failures == 0 ? 0 : 1;
}
