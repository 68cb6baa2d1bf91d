#pragma once

#include <span>
#include <vector>

#include "convolab/groups.hpp"
#include "convolab/rational.hpp"

namespace convolab {

/// A probability measure on a finite group with exact rational weights.
/// Weights are nonnegative and sum to exactly one.
class ProbMeasure {
 public:
  /// Throws Error(CoefficientsInvalid) on wrong length, a negative weight or
  /// total mass other than one.
  ProbMeasure(GroupPtr group, std::vector<Rational> weights);

  const GroupPtr& group() const { return group_; }
  const FiniteGroup& g() const { return *group_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& operator[](Element a) const { return weights_[a]; }
  std::size_t size() const { return weights_.size(); }

  friend bool operator==(const ProbMeasure& a, const ProbMeasure& b) {
    return a.weights_ == b.weights_ && same_group(*a.group_, *b.group_);
  }

 private:
  struct Trusted {};
  ProbMeasure(GroupPtr group, std::vector<Rational> weights, Trusted)
      : group_(std::move(group)), weights_(std::move(weights)) {}

  friend ProbMeasure convolve(const ProbMeasure&, const ProbMeasure&);

  GroupPtr group_;
  std::vector<Rational> weights_;
};

ProbMeasure dirac(const GroupPtr& group, Element g);

/// Haar measure of a subgroup, or more generally the uniform measure on a set.
ProbMeasure uniform(const ElementSet& set);

/// Convex combination. Throws Error(CoefficientsInvalid) for negative or
/// non-normalized coefficients, mismatched lengths or empty input, and
/// Error(GroupMismatch) when the measures live on different groups.
ProbMeasure mix(std::span<const Rational> coeffs, std::span<const ProbMeasure> measures);

/// (mu * nu)(g) = sum_x mu(g x^-1) nu(x).
ProbMeasure convolve(const ProbMeasure& mu, const ProbMeasure& nu);

ProbMeasure convolution_power(const ProbMeasure& mu, std::size_t k);

ElementSet support(const ProbMeasure& mu);

bool is_idempotent(const ProbMeasure& mu);

/// Uniform measure on each subgroup, in enumerate_subgroups order.
std::vector<ProbMeasure> haar_idempotents(const GroupPtr& group);

/// Stable text key for hashing and deduplication.
std::string weights_key(const ProbMeasure& mu);

}  // namespace convolab
