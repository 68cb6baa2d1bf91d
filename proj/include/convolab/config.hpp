#pragma once

#include <cstddef>

namespace convolab {

/// Size caps. The group-order cap can be overridden by CONVOLAB_MAX_ORDER.
struct Limits {
  std::size_t max_group_order = 64;
  std::size_t max_subgroup_order = 48;
  std::size_t max_closure_elements = 10000;
};

/// Floating-point tolerances for the Fourier side.
struct Tolerances {
  double representation = 1e-10;
  double transform = 1e-10;
  double pseudo_inverse = 1e-9;
  double positivity = 1e-9;
  double character_norm = 1e-8;
  double invertibility = 1e-6;
  long rationalize_max_den = 1000000;
};

struct Config {
  Limits limits;
  Tolerances tolerances;
};

/// Process-wide configuration, initialized from defaults plus the environment.
const Config& config();

/// Replaces the process-wide configuration; meant for CLI startup only.
void set_config(const Config& cfg);

}  // namespace convolab
