#pragma once

#include <optional>
#include <vector>

#include "convolab/linalg.hpp"
#include "convolab/measures.hpp"

namespace convolab {

/// Left-multiplication permutations of a subgroup support h_0 = e, h_1, ..., h_n:
/// perm[j][k] is the position of h_j h_k in the support.
struct PermutationFamily {
  GroupPtr group;
  std::vector<Element> support;  // identity first, then ascending element index
  std::vector<std::vector<std::size_t>> perm;
};

/// Throws Error(SupportNotClosed) unless the support is a subgroup.
PermutationFamily action_permutations(const ElementSet& support);

/// A[j][k] = alpha_{S_j(k)} for the weights alpha of the source measure on its support.
struct ActionMatrix {
  PermutationFamily family;
  RationalVector alpha;  // weights in support order
  RationalMatrix matrix;
};

/// Requires an involutive group and subgroup support.
/// Throws Error(GroupNotInvolutive) or Error(SupportNotClosed).
ActionMatrix build_action_matrix(const ProbMeasure& mu);

struct ObstructionResult {
  bool obstructed = false;
  Rational threshold;             // n / (n + 1) for a group of order n + 1
  std::optional<Rational> det;    // exact det(A), computed when obstructed
};

/// Strict diagonal dominance test alpha_0 > n/(n+1) for a full-support
/// measure on an involutive group. When it fires, also certifies det(A) != 0
/// and that the measure is not regular. Throws Error(PreconditionViolated).
ObstructionResult obstruction_check(const ProbMeasure& mu);

/// Solution set of A^2 beta = alpha over the support, intersected with the simplex.
struct ComposedSystemSolution {
  ActionMatrix action;
  RationalMatrix squared;
  std::optional<AffineSolution> affine;  // nullopt if A^2 beta = alpha is inconsistent
  std::optional<RationalVector> feasible_beta;  // a simplex point, if any
  std::optional<RationalVector> sigma;          // A * feasible_beta
  bool feasible() const { return feasible_beta.has_value(); }
};

ComposedSystemSolution solve_composed_system(const ProbMeasure& mu);

/// Embeds a vector indexed by support positions back into a measure on the group.
ProbMeasure measure_from_support_vector(const PermutationFamily& family, const RationalVector& beta);

}  // namespace convolab
