#include "convolab/regularity.hpp"

#include <unordered_set>

#include "convolab/config.hpp"
#include "convolab/error.hpp"

namespace convolab {

std::string_view to_string(VerdictMethod m) {
  switch (m) {
    case VerdictMethod::LP: return "LP";
    case VerdictMethod::OBSTRUCTION: return "OBSTRUCTION";
    case VerdictMethod::FOURIER_UNIQUE: return "FOURIER_UNIQUE";
  }
  return "?";
}

bool is_generalized_inverse(const ProbMeasure& mu, const ProbMeasure& x) {
  return convolve(mu, convolve(x, mu)) == mu;
}

RegularityVerdict RegularityVerdict::regular(const ProbMeasure& mu, ProbMeasure witness,
                                             VerdictMethod method, std::string detail) {
  RegularityVerdict v;
  v.reflexive_witness_ = reflexive_inverse(mu, witness);
  v.regular_ = true;
  v.witness_ = std::move(witness);
  v.method_ = method;
  v.detail_ = std::move(detail);
  return v;
}

RegularityVerdict RegularityVerdict::not_regular(VerdictMethod method, std::string detail) {
  RegularityVerdict v;
  v.method_ = method;
  v.detail_ = std::move(detail);
  return v;
}

RationalMatrix conv_operator_matrix(const ProbMeasure& mu) {
  const FiniteGroup& g = mu.g();
  const std::size_t n = g.order();
  RationalMatrix m(n, n);
  const auto supp = support(mu).elements();
  for (Element u : supp) {
    for (Element v : supp) {
      const Rational w = mu[u] * mu[v];
      for (Element h = 0; h < n; ++h) m(g.mul(g.mul(u, h), v), h) += w;
    }
  }
  return m;
}

ElementSet candidate_inverse_support(const ProbMeasure& mu) {
  const FiniteGroup& g = mu.g();
  const ElementSet a = support(mu);
  std::vector<Element> out;
  for (Element x = 0; x < g.order(); ++x) {
    bool inside = true;
    for (Element u : a.elements()) {
      const Element ux = g.mul(u, x);
      for (Element v : a.elements()) {
        if (!a.contains(g.mul(ux, v))) {
          inside = false;
          break;
        }
      }
      if (!inside) break;
    }
    if (inside) out.push_back(x);
  }
  return ElementSet(mu.group(), std::move(out));
}

namespace {

// LP over the variables listed in `vars`; rows that are identically 0 = 0 are dropped.
LPProblem restricted_lp(const ProbMeasure& mu, const RationalMatrix& op,
                        const std::vector<Element>& vars) {
  const std::size_t n = mu.size();
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < n; ++r) {
    bool nonzero = sgn(mu[r]) != 0;
    for (std::size_t c = 0; c < vars.size() && !nonzero; ++c) nonzero = sgn(op(r, vars[c])) != 0;
    if (nonzero) rows.push_back(r);
  }
  LPProblem p{RationalMatrix(rows.size() + 1, vars.size()), {}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < vars.size(); ++c) p.constraints(i, c) = op(rows[i], vars[c]);
    p.rhs.push_back(mu[rows[i]]);
  }
  // Redundant given column-stochasticity, kept explicit.
  for (std::size_t c = 0; c < vars.size(); ++c) p.constraints(rows.size(), c) = 1;
  p.rhs.emplace_back(1);
  return p;
}

std::vector<Element> all_elements(std::size_t n) {
  std::vector<Element> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

LPProblem regularity_lp(const ProbMeasure& mu) {
  const std::size_t n = mu.size();
  const RationalMatrix op = conv_operator_matrix(mu);
  LPProblem p{RationalMatrix(n + 1, n), RationalVector(mu.weights())};
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) p.constraints(r, c) = op(r, c);
  }
  for (std::size_t c = 0; c < n; ++c) p.constraints(n, c) = 1;
  p.rhs.emplace_back(1);
  return p;
}

RegularityVerdict decide_regular(const ProbMeasure& mu, const RegularityOptions& opts) {
  const std::size_t n = mu.size();
  std::vector<Element> vars = all_elements(n);
  if (opts.support_prefilter) {
    vars = candidate_inverse_support(mu).elements();
    if (vars.empty()) {
      return RegularityVerdict::not_regular(
          VerdictMethod::OBSTRUCTION,
          "no x with supp(mu) x supp(mu) inside supp(mu); supports cannot close up");
    }
  }
  const RationalMatrix op = conv_operator_matrix(mu);
  LPStats stats;
  const auto solution = lp_feasible(restricted_lp(mu, op, vars), &stats);
  if (!solution) {
    return RegularityVerdict::not_regular(
        VerdictMethod::LP, "phase-1 optimum " + format_rational(stats.phase1_optimum) + " > 0 over " +
                               std::to_string(vars.size()) + " variables");
  }
  std::vector<Rational> w(n, Rational(0));
  for (std::size_t c = 0; c < vars.size(); ++c) w[vars[c]] = (*solution)[c];
  return RegularityVerdict::regular(mu, ProbMeasure(mu.group(), std::move(w)), VerdictMethod::LP,
                                    "feasible vertex after " + std::to_string(stats.pivots) +
                                        " pivots");
}

ProbMeasure reflexive_inverse(const ProbMeasure& mu, const ProbMeasure& g) {
  if (!is_generalized_inverse(mu, g)) {
    throw Error(ErrorCode::NotAGeneralizedInverse, "mu*g*mu != mu");
  }
  ProbMeasure x = convolve(g, convolve(mu, g));
  if (!is_generalized_inverse(mu, x) || !is_generalized_inverse(x, mu)) {
    throw Error(ErrorCode::NotAGeneralizedInverse, "symmetrized inverse failed verification");
  }
  return x;
}

std::vector<TwoPointRow> classify_two_point_family(const GroupPtr& group, Element g,
                                                   std::size_t denominator) {
  group->check_element(g);
  if (g == group->identity()) {
    throw Error(ErrorCode::PreconditionViolated, "two-point family needs g != e");
  }
  if (denominator == 0) throw Error(ErrorCode::PreconditionViolated, "denominator must be positive");
  const ProbMeasure de = dirac(group, group->identity());
  const ProbMeasure dg = dirac(group, g);
  const std::vector<ProbMeasure> pair{de, dg};
  std::vector<TwoPointRow> rows;
  for (std::size_t k = 0; k <= denominator; ++k) {
    const Rational alpha = make_rational(static_cast<long>(k), static_cast<long>(denominator));
    const std::vector<Rational> coeffs{alpha, 1 - alpha};
    rows.push_back({alpha, decide_regular(mix(coeffs, pair))});
  }
  return rows;
}

OmegaReport omega_closure(const GroupPtr& group, const OmegaOptions& opts) {
  const std::size_t budget =
      opts.max_elements ? opts.max_elements : config().limits.max_closure_elements;
  OmegaReport report;
  const std::vector<ProbMeasure> generators = haar_idempotents(group);
  std::unordered_set<std::string> seen;
  std::vector<std::size_t> length;  // word length of each element
  for (const auto& h : generators) {
    if (seen.insert(weights_key(h)).second) {
      report.elements.push_back(h);
      length.push_back(1);
    }
  }
  report.haar_count = report.elements.size();
  report.complete = true;
  // Breadth-first right extension by generators enumerates every finite product.
  for (std::size_t head = 0; head < report.elements.size() && report.complete; ++head) {
    for (const auto& h : generators) {
      ProbMeasure next = convolve(report.elements[head], h);
      if (!seen.insert(weights_key(next)).second) continue;
      if (report.elements.size() >= budget) {
        if (!opts.allow_truncation) {
          throw Error(ErrorCode::ClosureBudgetExceeded,
                      group->label() + ": closure exceeds " + std::to_string(budget) + " elements");
        }
        report.complete = false;
        break;
      }
      report.elements.push_back(std::move(next));
      length.push_back(length[head] + 1);
    }
  }
  for (std::size_t l : length) report.word_length = std::max(report.word_length, l);
  if (opts.compute_verdicts) {
    report.all_regular = true;
    for (const auto& mu : report.elements) {
      report.verdicts.push_back(decide_regular(mu));
      report.all_regular = report.all_regular && report.verdicts.back().is_regular();
    }
  }
  return report;
}

}  // namespace convolab
