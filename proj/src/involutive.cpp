#include "convolab/involutive.hpp"

#include <algorithm>

#include "convolab/error.hpp"
#include "convolab/lp.hpp"
#include "convolab/regularity.hpp"

namespace convolab {

PermutationFamily action_permutations(const ElementSet& support) {
  if (!is_subgroup(support)) {
    throw Error(ErrorCode::SupportNotClosed, "support is not closed under the group product");
  }
  const FiniteGroup& g = *support.group();
  PermutationFamily fam;
  fam.group = support.group();
  fam.support.push_back(g.identity());
  for (Element a : support.elements()) {
    if (a != g.identity()) fam.support.push_back(a);
  }
  const std::size_t m = fam.support.size();
  std::vector<std::size_t> position(g.order(), m);
  for (std::size_t i = 0; i < m; ++i) position[fam.support[i]] = i;
  fam.perm.assign(m, std::vector<std::size_t>(m));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) fam.perm[j][k] = position[g.mul(fam.support[j], fam.support[k])];
  }
  return fam;
}

ActionMatrix build_action_matrix(const ProbMeasure& mu) {
  if (!mu.g().is_involutive()) {
    throw Error(ErrorCode::GroupNotInvolutive, mu.g().label() + " has an element with g^2 != e");
  }
  ActionMatrix a{action_permutations(support(mu)), {}, {}};
  const std::size_t m = a.family.support.size();
  for (Element h : a.family.support) a.alpha.push_back(mu[h]);
  a.matrix = RationalMatrix(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) a.matrix(j, k) = a.alpha[a.family.perm[j][k]];
  }
  return a;
}

ObstructionResult obstruction_check(const ProbMeasure& mu) {
  if (!mu.g().is_involutive()) {
    throw Error(ErrorCode::PreconditionViolated, "obstruction test needs an involutive group");
  }
  for (Element i = 0; i < mu.size(); ++i) {
    if (sgn(mu[i]) == 0) {
      throw Error(ErrorCode::PreconditionViolated, "obstruction test needs full support");
    }
  }
  const long n = static_cast<long>(mu.size()) - 1;
  ObstructionResult r;
  r.threshold = make_rational(n, n + 1);
  r.obstructed = mu[mu.g().identity()] > r.threshold;
  if (r.obstructed) {
    const ActionMatrix a = build_action_matrix(mu);
    r.det = determinant(a.matrix);
    if (sgn(*r.det) == 0) {
      throw std::logic_error("diagonally dominant action matrix with zero determinant");
    }
    if (decide_regular(mu).is_regular()) {
      throw std::logic_error("obstructed measure was decided regular");
    }
  }
  return r;
}

ProbMeasure measure_from_support_vector(const PermutationFamily& family, const RationalVector& beta) {
  std::vector<Rational> w(family.group->order(), Rational(0));
  for (std::size_t i = 0; i < family.support.size(); ++i) w[family.support[i]] = beta.at(i);
  return ProbMeasure(family.group, std::move(w));
}

ComposedSystemSolution solve_composed_system(const ProbMeasure& mu) {
  ComposedSystemSolution s{build_action_matrix(mu), {}, {}, {}, {}};
  s.squared = s.action.matrix * s.action.matrix;
  s.affine = solve_affine(s.squared, s.action.alpha);
  if (!s.affine) return s;

  const std::size_t m = s.action.alpha.size();
  LPProblem lp{RationalMatrix(m + 1, m), s.action.alpha};
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) lp.constraints(r, c) = s.squared(r, c);
  }
  for (std::size_t c = 0; c < m; ++c) lp.constraints(m, c) = 1;
  lp.rhs.emplace_back(1);
  s.feasible_beta = lp_feasible(lp);
  if (s.feasible_beta) s.sigma = s.action.matrix * *s.feasible_beta;
  return s;
}

}  // namespace convolab
