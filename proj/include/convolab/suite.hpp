#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "convolab/fourier.hpp"
#include "convolab/measures.hpp"

namespace convolab::suite {

using Rng = std::mt19937_64;

/// Random measure with small integer weights on a random nonempty support.
/// full_support forces every weight positive.
ProbMeasure random_measure(const GroupPtr& group, Rng& rng, bool full_support = false);

/// Mixture of random measures with structured ones (Diracs, Haar measures on
/// subgroups and their translates) so that both regular and non-regular
/// instances occur.
ProbMeasure random_test_measure(const GroupPtr& group, Rng& rng);

/// Random blocks of the right sizes; some blocks rank-deficient or zero.
CompatibleFunction random_compatible_function(const DualPtr& dual, Rng& rng);

struct SuiteOptions {
  std::uint64_t seed = 20240601;
  /// Element budget for the closure experiment on groups whose closure is infinite.
  std::size_t omega_budget = 1000;
  std::size_t omega_max_order = 24;
};

struct ScenarioResult {
  std::string id;  // "1".."9" for acceptance criteria, "S*" for extra scenarios
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

/// Runs every named scenario. Results are deterministic for a fixed seed.
std::vector<ScenarioResult> run_scenario_suite(const SuiteOptions& opts = {});

}  // namespace convolab::suite
