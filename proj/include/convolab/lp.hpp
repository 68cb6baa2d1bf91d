#pragma once

#include <optional>

#include "convolab/linalg.hpp"

namespace convolab {

/// Feasibility problem {x : constraints * x = rhs, x >= 0}.
struct LPProblem {
  RationalMatrix constraints;
  RationalVector rhs;
};

struct LPStats {
  std::size_t pivots = 0;
  Rational phase1_optimum;
};

/// Exact phase-1 simplex with Bland's rule. Returns a feasible vertex, or
/// nullopt when the phase-1 optimum is positive (the system is infeasible).
/// Throws Error(DimensionMismatch) if rhs does not match the row count.
std::optional<RationalVector> lp_feasible(const LPProblem& problem, LPStats* stats = nullptr);

}  // namespace convolab
