#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kcomplete/cli_support.hpp"
#include "kcomplete/cover_lattice.hpp"
#include "kcomplete/exact_formulas.hpp"
#include "kcomplete/instance_io.hpp"
#include "kcomplete/matrix_model.hpp"
#include "kcomplete/mixture.hpp"
#include "kcomplete/recursion_engine.hpp"
#include "kcomplete/simulation.hpp"
#include "kcomplete/verify.hpp"

namespace {

constexpr int kExitInstance = 2;
constexpr int kExitNonGeneric = 4;

using kcomplete::json;
using kcomplete::Rat;

kcomplete::MatrixSpec load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw kcomplete::InstanceError("cannot open instance file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw kcomplete::InstanceError(std::string("invalid JSON: ") + e.what());
  }
  return kcomplete::parse_instance(doc);
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) ^ rd();
}

int run_lattice(const std::string& path) {
  auto spec = load_instance(path);
  const auto hyp = kcomplete::hypothesis_class(spec);
  if (hyp == kcomplete::HypothesisClass::Insufficient) {
    std::cerr << "instance has no zero-cost (k-1)-assignment; nothing to report\n";
    return kExitInstance;
  }
  if (hyp == kcomplete::HypothesisClass::ZeroCostK) {
    emit(json{{"zero_cost", true}});
    return 0;
  }
  emit(kcomplete::lattice_to_json(kcomplete::build_lattice(spec)));
  return 0;
}

int run_expect(const std::string& path, const std::string& method) {
  auto spec = load_instance(path);
  const auto hyp = kcomplete::hypothesis_class(spec);
  if (hyp == kcomplete::HypothesisClass::Insufficient) {
    std::cerr << "instance has no zero-cost (k-1)-assignment; expectation undefined under this model\n";
    return kExitInstance;
  }
  if (hyp == kcomplete::HypothesisClass::ZeroCostK) {
    emit(json{{"expectation", "0"}, {"method", method}, {"zero_cost", true}});
    return 0;
  }
  if (method == "recursion") {
    emit(json{{"expectation", kcomplete::rat_str(kcomplete::expectation_recursive(spec))},
              {"method", method}});
    return 0;
  }
  const auto lat = kcomplete::build_lattice(spec);
  if (method == "interval") {
    emit(json{{"expectation", kcomplete::rat_str(kcomplete::expectation_interval_form(lat))},
              {"method", method}});
    return 0;
  }
  if (method == "chains") {
    emit(json{{"expectation", kcomplete::rat_str(kcomplete::expectation_chain_form(lat))},
              {"method", method}});
    return 0;
  }
  kcomplete::MethodValues v{kcomplete::expectation_interval_form(lat),
                            kcomplete::expectation_chain_form(lat),
                            kcomplete::expectation_recursive(spec)};
  auto [code, body] = kcomplete::expect_report(v);
  if (code != 0) std::cerr << "cross-method disagreement; this is a bug in the engine\n";
  emit(body);
  return code;
}

int run_laplace(const std::string& path, const std::string& method,
                const std::vector<std::string>& eval_points,
                const std::string& density_path, double density_max, double density_step) {
  auto spec = load_instance(path);
  const auto hyp = kcomplete::hypothesis_class(spec);
  if (hyp == kcomplete::HypothesisClass::Insufficient) {
    std::cerr << "instance has no zero-cost (k-1)-assignment; transform undefined under this model\n";
    return kExitInstance;
  }

  json out;
  out["method"] = method;
  std::optional<kcomplete::ExpMixture> mix;
  std::optional<kcomplete::RationalFunction> rf;

  if (hyp == kcomplete::HypothesisClass::ZeroCostK) {
    out["zero_cost"] = true;
    rf = kcomplete::RationalFunction(1);
    out["transform"] = kcomplete::rf_to_json(*rf);
    if (!density_path.empty()) {
      std::cerr << "distribution is a point mass at 0; no density to export\n";
      return kExitInstance;
    }
  } else if (method == "closed") {
    const auto lat = kcomplete::build_lattice(spec);
    mix = kcomplete::laplace_chain_form(lat);
    out["mixture"] = kcomplete::mixture_to_json(*mix);
    rf = kcomplete::mixture_transform(*mix);
    out["transform"] = kcomplete::rf_to_json(*rf);
  } else {
    rf = kcomplete::laplace_recursive(spec);
    out["transform"] = kcomplete::rf_to_json(*rf);
    if (!density_path.empty()) mix = kcomplete::partial_fractions(*rf);
  }

  if (!eval_points.empty()) {
    json evals = json::array();
    for (const auto& text : eval_points) {
      const Rat t = kcomplete::parse_rational(text);
      evals.push_back(json{{"t", kcomplete::rat_str(t)}, {"value", kcomplete::rat_str(rf->eval(t))}});
    }
    out["evals"] = evals;
  }

  if (!density_path.empty() && mix) {
    std::ofstream csv(density_path);
    if (!csv) {
      std::cerr << "cannot open density output file: " << density_path << "\n";
      return 1;
    }
    csv << kcomplete::density_csv(*mix, density_max, density_step);
    out["density_file"] = density_path;
  }

  emit(out);
  return 0;
}

int run_simulate(const std::string& path, std::uint64_t samples,
                 std::optional<std::uint64_t> seed, const std::vector<std::string>& t_points) {
  auto spec = load_instance(path);
  const std::uint64_t s = seed ? *seed : fresh_seed();
  const auto hyp = kcomplete::hypothesis_class(spec);

  json out;
  out["seed"] = s;
  out["samples"] = samples;
  out["rng"] = kcomplete::kRngName;

  std::optional<Rat> exact_e;
  std::optional<kcomplete::RationalFunction> rf;
  if (hyp != kcomplete::HypothesisClass::Insufficient) {
    exact_e = kcomplete::expectation_recursive(spec);
    rf = kcomplete::laplace_recursive(spec);
  }

  const auto est = kcomplete::estimate_expectation(spec, static_cast<long long>(samples), s);
  json e = kcomplete::estimate_to_json(est);
  if (exact_e) {
    e["exact"] = kcomplete::rat_str(*exact_e);
    e["z"] = kcomplete::z_score(est.mean, est.std_error, kcomplete::rat_double(*exact_e));
  }
  out["expectation"] = e;

  if (!t_points.empty()) {
    json arr = json::array();
    for (const auto& text : t_points) {
      const Rat t = kcomplete::parse_rational(text);
      const auto lest =
          kcomplete::estimate_laplace(spec, kcomplete::rat_double(t), static_cast<long long>(samples), s);
      json item = kcomplete::estimate_to_json(lest);
      item["t"] = kcomplete::rat_str(t);
      if (rf) {
        const Rat exact = rf->eval(t);
        item["exact"] = kcomplete::rat_str(exact);
        item["z"] = kcomplete::z_score(lest.mean, lest.std_error, kcomplete::rat_double(exact));
      }
      arr.push_back(item);
    }
    out["laplace"] = arr;
  }

  emit(out);
  return 0;
}

int run_verify(const std::string& path, unsigned random_count, unsigned max_dim, unsigned max_k,
               std::optional<std::uint64_t> seed) {
  if (!path.empty()) {
    auto spec = load_instance(path);
    if (kcomplete::hypothesis_class(spec) == kcomplete::HypothesisClass::Insufficient) {
      std::cerr << "instance has no zero-cost (k-1)-assignment; identities do not apply\n";
      return kExitInstance;
    }
    const auto failures = kcomplete::check_instance(spec);
    if (failures.empty()) {
      emit(json{{"checked", 1}, {"failures", 0}});
      return 0;
    }
    json fs = json::array();
    for (const auto& f : failures) fs.push_back(json{{"check", f.check}, {"detail", f.detail}});
    emit(json{{"instance", kcomplete::instance_to_json(spec)}, {"failures", fs}});
    return 1;
  }

  const std::uint64_t s = seed ? *seed : fresh_seed();
  for (unsigned i = 0; i < random_count; ++i) {
    auto rng = kcomplete::sample_stream(s, i);
    auto spec = kcomplete::random_instance(rng, max_dim, max_k);
    auto failures = kcomplete::check_instance(spec);
    if (failures.empty()) continue;
    auto small = kcomplete::minimize_failing(spec);
    auto small_failures = kcomplete::check_instance(small);
    json fs = json::array();
    for (const auto& f : small_failures) fs.push_back(json{{"check", f.check}, {"detail", f.detail}});
    emit(json{{"seed", s},
              {"index", i},
              {"instance", kcomplete::instance_to_json(spec)},
              {"reproducer", kcomplete::instance_to_json(small)},
              {"failures", fs}});
    return 1;
  }
  emit(json{{"checked", random_count}, {"failures", 0}, {"seed", s}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact expectation and Laplace transform of the optimal k-assignment completion"};
  app.require_subcommand(1);

  std::string lattice_file;
  auto* lattice = app.add_subcommand("lattice", "report the critical rectangle lattice");
  lattice->add_option("instance", lattice_file, "instance JSON file")->required();

  std::string expect_file;
  std::string expect_method = "all";
  auto* expect = app.add_subcommand("expect", "exact expected value");
  expect->add_option("instance", expect_file, "instance JSON file")->required();
  expect->add_option("--method", expect_method, "interval, chains, recursion, or all")
      ->check(CLI::IsMember({"interval", "chains", "recursion", "all"}));

  std::string laplace_file;
  std::string laplace_method = "closed";
  std::vector<std::string> laplace_eval;
  std::string laplace_density;
  double laplace_density_max = 5.0;
  double laplace_density_step = 0.05;
  auto* laplace = app.add_subcommand("laplace", "exact Laplace transform");
  laplace->add_option("instance", laplace_file, "instance JSON file")->required();
  laplace->add_option("--method", laplace_method, "closed or recursion")
      ->check(CLI::IsMember({"closed", "recursion"}));
  laplace->add_option("--eval", laplace_eval, "rational t values to evaluate exactly");
  laplace->add_option("--density", laplace_density, "write x,pdf,cdf CSV to this file");
  laplace->add_option("--density-max", laplace_density_max, "last grid point (default 5)");
  laplace->add_option("--density-step", laplace_density_step, "grid spacing (default 0.05)");

  std::string simulate_file;
  std::uint64_t simulate_samples = 100000;
  std::optional<std::uint64_t> simulate_seed;
  std::vector<std::string> simulate_t;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates with exact comparison");
  simulate->add_option("instance", simulate_file, "instance JSON file")->required();
  simulate->add_option("--samples", simulate_samples, "sample count (default 100000)")
      ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));
  simulate->add_option("--seed", simulate_seed, "RNG seed; generated and printed if omitted");
  simulate->add_option("--t", simulate_t, "rational t values for Laplace estimates");

  std::string verify_file;
  unsigned verify_random = 0;
  unsigned verify_max_dim = 5;
  unsigned verify_max_k = 4;
  std::optional<std::uint64_t> verify_seed;
  auto* verify = app.add_subcommand("verify", "cross-check every identity on an instance");
  verify->add_option("instance", verify_file, "instance JSON file");
  verify->add_option("--random", verify_random, "check this many random instances instead");
  verify->add_option("--max-dim", verify_max_dim, "random mode: max rows and columns (default 5)");
  verify->add_option("--max-k", verify_max_k, "random mode: max k (default 4)");
  verify->add_option("--seed", verify_seed, "RNG seed; generated and printed if omitted");

  CLI11_PARSE(app, argc, argv);

  try {
    if (lattice->parsed()) return run_lattice(lattice_file);
    if (expect->parsed()) return run_expect(expect_file, expect_method);
    if (laplace->parsed())
      return run_laplace(laplace_file, laplace_method, laplace_eval, laplace_density,
                         laplace_density_max, laplace_density_step);
    if (simulate->parsed()) return run_simulate(simulate_file, simulate_samples, simulate_seed, simulate_t);
    if (verify->parsed()) {
      if (verify_file.empty() && verify_random == 0) {
        std::cerr << "verify needs an instance file or --random COUNT\n";
        return kExitInstance;
      }
      return run_verify(verify_file, verify_random, verify_max_dim, verify_max_k, verify_seed);
    }
  } catch (const kcomplete::InstanceError& e) {
    std::cerr << e.what() << "\n";
    return kExitInstance;
  } catch (const kcomplete::HypothesisError& e) {
    std::cerr << e.what() << "\n";
    return kExitInstance;
  } catch (const kcomplete::NonGenericError& e) {
    std::cerr << e.what() << "\n"
              << "closed form needs distinct comparable rectangle rates; use --method recursion\n";
    return kExitNonGeneric;
  } catch (const kcomplete::RepeatedPoleError& e) {
    std::cerr << e.what() << "\n"
              << "the transform has a repeated pole, so no simple exponential mixture exists\n";
    return kExitNonGeneric;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
