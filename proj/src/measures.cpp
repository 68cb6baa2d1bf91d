#include "convolab/measures.hpp"

#include "convolab/error.hpp"

namespace convolab {

ProbMeasure::ProbMeasure(GroupPtr group, std::vector<Rational> weights)
    : group_(std::move(group)), weights_(std::move(weights)) {
  if (weights_.size() != group_->order()) {
    throw Error(ErrorCode::CoefficientsInvalid,
                "expected " + std::to_string(group_->order()) + " weights, got " +
                    std::to_string(weights_.size()));
  }
  Rational total = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    weights_[i].canonicalize();
    if (sgn(weights_[i]) < 0) {
      throw Error(ErrorCode::CoefficientsInvalid, "negative weight at " + std::to_string(i));
    }
    total += weights_[i];
  }
  if (total != 1) {
    throw Error(ErrorCode::CoefficientsInvalid, "total mass " + format_rational(total) + " != 1");
  }
}

ProbMeasure dirac(const GroupPtr& group, Element g) {
  group->check_element(g);
  std::vector<Rational> w(group->order(), Rational(0));
  w[g] = 1;
  return ProbMeasure(group, std::move(w));
}

ProbMeasure uniform(const ElementSet& set) {
  if (set.size() == 0) throw Error(ErrorCode::CoefficientsInvalid, "uniform measure on empty set");
  std::vector<Rational> w(set.group()->order(), Rational(0));
  const Rational mass = make_rational(1, static_cast<long>(set.size()));
  for (Element a : set.elements()) w[a] = mass;
  return ProbMeasure(set.group(), std::move(w));
}

ProbMeasure mix(std::span<const Rational> coeffs, std::span<const ProbMeasure> measures) {
  if (coeffs.empty() || coeffs.size() != measures.size()) {
    throw Error(ErrorCode::CoefficientsInvalid, "need one coefficient per measure, at least one");
  }
  Rational total = 0;
  for (const auto& c : coeffs) {
    if (sgn(c) < 0) throw Error(ErrorCode::CoefficientsInvalid, "negative coefficient");
    total += c;
  }
  if (total != 1) {
    throw Error(ErrorCode::CoefficientsInvalid, "coefficients sum to " + format_rational(total));
  }
  const GroupPtr& group = measures.front().group();
  std::vector<Rational> w(group->order(), Rational(0));
  for (std::size_t m = 0; m < measures.size(); ++m) {
    if (!same_group(*group, measures[m].g())) {
      throw Error(ErrorCode::GroupMismatch, "mixing measures on different groups");
    }
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += coeffs[m] * measures[m][i];
  }
  return ProbMeasure(group, std::move(w));
}

ProbMeasure convolve(const ProbMeasure& mu, const ProbMeasure& nu) {
  if (!same_group(mu.g(), nu.g())) {
    throw Error(ErrorCode::GroupMismatch, "convolving measures on different groups");
  }
  const FiniteGroup& g = mu.g();
  std::vector<Rational> w(g.order(), Rational(0));
  // Summing over pairs (u, x) with u x = g is the same sum as mu(g x^-1) nu(x).
  for (Element u = 0; u < g.order(); ++u) {
    if (sgn(mu[u]) == 0) continue;
    for (Element x = 0; x < g.order(); ++x) {
      if (sgn(nu[x]) == 0) continue;
      w[g.mul(u, x)] += mu[u] * nu[x];
    }
  }
  return ProbMeasure(mu.group(), std::move(w), ProbMeasure::Trusted{});
}

ProbMeasure convolution_power(const ProbMeasure& mu, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::PreconditionViolated, "convolution power needs k >= 1");
  ProbMeasure result = mu;
  ProbMeasure base = mu;
  --k;
  while (k > 0) {
    if (k & 1) result = convolve(result, base);
    k >>= 1;
    if (k > 0) base = convolve(base, base);
  }
  return result;
}

ElementSet support(const ProbMeasure& mu) {
  std::vector<Element> s;
  for (Element i = 0; i < mu.size(); ++i) {
    if (sgn(mu[i]) > 0) s.push_back(i);
  }
  return ElementSet(mu.group(), std::move(s));
}

bool is_idempotent(const ProbMeasure& mu) { return convolve(mu, mu) == mu; }

std::vector<ProbMeasure> haar_idempotents(const GroupPtr& group) {
  std::vector<ProbMeasure> out;
  for (const auto& h : enumerate_subgroups(group)) out.push_back(uniform(h.set()));
  return out;
}

std::string weights_key(const ProbMeasure& mu) {
  std::string key;
  for (const auto& w : mu.weights()) {
    key += w.get_str();
    key += ',';
  }
  return key;
}

}  // namespace convolab
