#pragma once

#include <optional>
#include <string>
#include <vector>

#include "convolab/linalg.hpp"
#include "convolab/lp.hpp"
#include "convolab/measures.hpp"

namespace convolab {

enum class VerdictMethod { LP, OBSTRUCTION, FOURIER_UNIQUE };

std::string_view to_string(VerdictMethod m);

/// Outcome of deciding whether mu has a generalized inverse in P(G).
///
/// The factories check the defining identities exactly, so a verdict that
/// claims regularity always carries a verified witness x with mu*x*mu = mu,
/// and a reflexive witness that additionally satisfies x*mu*x = x.
class RegularityVerdict {
 public:
  static RegularityVerdict regular(const ProbMeasure& mu, ProbMeasure witness, VerdictMethod method,
                                   std::string detail);
  static RegularityVerdict not_regular(VerdictMethod method, std::string detail);

  bool is_regular() const { return regular_; }
  const std::optional<ProbMeasure>& witness() const { return witness_; }
  const std::optional<ProbMeasure>& reflexive_witness() const { return reflexive_witness_; }
  VerdictMethod method() const { return method_; }
  const std::string& detail() const { return detail_; }

 private:
  RegularityVerdict() = default;

  bool regular_ = false;
  std::optional<ProbMeasure> witness_;
  std::optional<ProbMeasure> reflexive_witness_;
  VerdictMethod method_ = VerdictMethod::LP;
  std::string detail_;
};

/// Matrix of x -> mu*x*mu: M[g][h] = sum of mu(u) mu(v) over u h v = g.
RationalMatrix conv_operator_matrix(const ProbMeasure& mu);

/// True iff mu*x*mu == mu exactly.
bool is_generalized_inverse(const ProbMeasure& mu, const ProbMeasure& x);

/// Elements x with A x A contained in A, for A = supp(mu). Any generalized
/// inverse is supported inside this set.
ElementSet candidate_inverse_support(const ProbMeasure& mu);

struct RegularityOptions {
  /// Restrict LP variables to candidate_inverse_support and report an empty
  /// candidate set as an obstruction. Disabling it runs the full n-variable LP.
  bool support_prefilter = true;
};

/// The LP {x >= 0, sum x = 1, M x = mu} that decides regularity, over all n variables.
LPProblem regularity_lp(const ProbMeasure& mu);

RegularityVerdict decide_regular(const ProbMeasure& mu, const RegularityOptions& opts = {});

/// Symmetrizes a generalized inverse g into x = g*mu*g, which satisfies both
/// mu*x*mu = mu and x*mu*x = x. Throws Error(NotAGeneralizedInverse).
ProbMeasure reflexive_inverse(const ProbMeasure& mu, const ProbMeasure& g);

struct TwoPointRow {
  Rational alpha;  // mass at the identity
  RegularityVerdict verdict;
};

/// Verdicts for alpha*delta_e + (1-alpha)*delta_g, alpha = k/denominator.
/// Throws Error(PreconditionViolated) when g is the identity or denominator is 0.
std::vector<TwoPointRow> classify_two_point_family(const GroupPtr& group, Element g,
                                                   std::size_t denominator);

struct OmegaOptions {
  std::size_t max_elements = 0;  // 0 means the configured closure cap
  /// Stop at the budget and return a partial closure instead of throwing.
  bool allow_truncation = false;
  bool compute_verdicts = true;
};

/// Closure of the Haar idempotents under convolution. Results are
/// experimental evidence about the idempotent-generated semigroup, not proofs.
struct OmegaReport {
  std::vector<ProbMeasure> elements;  // Haar idempotents first, then by word length
  std::vector<RegularityVerdict> verdicts;
  std::size_t haar_count = 0;
  std::size_t word_length = 0;  // longest product length explored
  bool complete = false;
  bool all_regular = false;
};

/// Throws Error(ClosureBudgetExceeded) when the closure outgrows the budget and
/// truncation is not allowed, or Error(SpecOutOfRange) from subgroup enumeration.
OmegaReport omega_closure(const GroupPtr& group, const OmegaOptions& opts = {});

}  // namespace convolab
