#include "convolab/suite.hpp"

#include <chrono>
#include <functional>
#include <set>
#include <sstream>

#include "convolab/config.hpp"
#include "convolab/error.hpp"
#include "convolab/involutive.hpp"
#include "convolab/regularity.hpp"

namespace convolab::suite {

ProbMeasure random_measure(const GroupPtr& group, Rng& rng, bool full_support) {
  const std::size_t n = group->order();
  std::uniform_int_distribution<long> weight(1, 9);
  std::bernoulli_distribution keep(0.5);
  std::vector<long> raw(n, 0);
  long total = 0;
  while (total == 0) {
    for (std::size_t i = 0; i < n; ++i) {
      raw[i] = (full_support || keep(rng)) ? weight(rng) : 0;
      total += raw[i];
    }
  }
  std::vector<Rational> w;
  for (long r : raw) w.push_back(make_rational(r, total));
  return ProbMeasure(group, std::move(w));
}

ProbMeasure random_test_measure(const GroupPtr& group, Rng& rng) {
  std::uniform_int_distribution<int> kind(0, 9);
  std::uniform_int_distribution<Element> elem(0, group->order() - 1);
  switch (kind(rng)) {
    case 0: return dirac(group, elem(rng));
    case 1:
    case 2: {
      const auto subgroups = enumerate_subgroups(group);
      std::uniform_int_distribution<std::size_t> pick(0, subgroups.size() - 1);
      const ProbMeasure haar = uniform(subgroups[pick(rng)].set());
      // translate by a Dirac on either side; still regular
      return kind(rng) % 2 ? convolve(dirac(group, elem(rng)), haar)
                           : convolve(haar, dirac(group, elem(rng)));
    }
    default: return random_measure(group, rng);
  }
}

CompatibleFunction random_compatible_function(const DualPtr& dual, Rng& rng) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_int_distribution<int> shape(0, 5);
  std::vector<ComplexMatrix> blocks;
  for (const auto& r : dual->irreps) {
    const auto d = static_cast<Eigen::Index>(r.dim);
    auto random_matrix = [&](Eigen::Index rows, Eigen::Index cols) {
      ComplexMatrix m(rows, cols);
      for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(entry(rng), entry(rng));
      }
      return m;
    };
    const int s = shape(rng);
    if (s == 0) {
      blocks.push_back(ComplexMatrix::Zero(d, d));
    } else if (s == 1 && d > 1) {
      blocks.push_back(random_matrix(d, 1) * random_matrix(1, d));  // rank one
    } else {
      blocks.push_back(random_matrix(d, d));
    }
  }
  return CompatibleFunction(dual, std::move(blocks));
}

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (passed) detail.str("");
    if (!passed) detail << "; ";
    passed = false;
    detail << why;
  }
};

std::vector<Rational> two_point(const Rational& alpha) { return {alpha, 1 - alpha}; }

ProbMeasure two_point_measure(const GroupPtr& g, Element a, const Rational& alpha) {
  const std::vector<ProbMeasure> pair{dirac(g, g->identity()), dirac(g, a)};
  return mix(two_point(alpha), pair);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Midpoint measures (delta_e + delta_a)/2 with a^2 != e are not regular.
void non_regular_midpoints(const SuiteOptions&, Outcome& out) {
  const std::vector<GroupSpec> groups = {GroupSpec::cyclic(3), GroupSpec::cyclic(4),
                                         GroupSpec::cyclic(5), GroupSpec::cyclic(6),
                                         GroupSpec::symmetric(3), GroupSpec::dihedral(4)};
  std::size_t instances = 0;
  double slowest = 0;
  for (const auto& spec : groups) {
    const GroupPtr g = make_group(spec);
    for (Element a = 0; a < g->order(); ++a) {
      if (g->mul(a, a) == g->identity()) continue;
      const auto t0 = std::chrono::steady_clock::now();
      const auto v = decide_regular(two_point_measure(g, a, make_rational(1, 2)));
      const double dt = seconds_since(t0);
      slowest = std::max(slowest, dt);
      ++instances;
      if (v.is_regular()) out.fail(spec.name() + " a=" + g->element_label(a) + " decided regular");
      if (dt >= 1.0) out.fail(spec.name() + " instance took " + std::to_string(dt) + " s");
    }
  }
  if (out.passed) {
    out.detail << instances << " instances not regular; slowest " << slowest * 1e3 << " ms";
  }
}

// 2. (delta_e + delta_g)/2 is regular exactly when g^2 = e.
void midpoint_iff_involution(const SuiteOptions&, Outcome& out) {
  std::size_t instances = 0, regular = 0, groups = 0;
  for (const auto& spec : builtin_catalog(16)) {
    const GroupPtr g = make_group(spec);
    ++groups;
    for (Element a = 0; a < g->order(); ++a) {
      if (a == g->identity()) continue;
      const bool expect = g->mul(a, a) == g->identity();
      const bool got = decide_regular(two_point_measure(g, a, make_rational(1, 2))).is_regular();
      ++instances;
      regular += got;
      if (got != expect) out.fail(spec.name() + " g=" + g->element_label(a));
    }
  }
  if (out.passed) {
    out.detail << groups << " groups, " << instances << " elements, " << regular
               << " regular, all matching g^2 = e";
  }
}

// 3. On Z2 the regular two-point measures are exactly alpha in {0, 1/2, 1}.
void two_element_classification(const SuiteOptions&, Outcome& out) {
  const GroupPtr z2 = make_group(GroupSpec::cyclic(2));
  std::set<Rational> scan;
  for (long k = 0; k <= 101; ++k) scan.insert(make_rational(k, 101));
  scan.insert(make_rational(1, 2));  // not on the k/101 grid
  std::set<Rational> regular;
  for (const auto& alpha : scan) {
    if (decide_regular(two_point_measure(z2, 1, alpha)).is_regular()) regular.insert(alpha);
  }
  const std::set<Rational> expected = {make_rational(0), make_rational(1, 2), make_rational(1)};
  std::string found;
  for (const auto& r : regular) found += (found.empty() ? "" : ", ") + format_rational(r);
  if (regular != expected) out.fail("regular set {" + found + "}");
  if (out.passed) out.detail << scan.size() << " values scanned, regular set {" << found << "}";
}

// 4. Haar measures on subgroups of Z2^k are idempotent and self-inverse.
void midpoint_of_polytope(const SuiteOptions&, Outcome& out) {
  std::size_t count = 0;
  for (std::size_t k = 1; k <= 3; ++k) {
    const GroupPtr g = make_group(GroupSpec::elementary_abelian_2(k));
    for (const auto& h : enumerate_subgroups(g)) {
      const ProbMeasure mu = uniform(h.set());
      ++count;
      if (!is_idempotent(mu)) out.fail("Z2^" + std::to_string(k) + " subgroup not idempotent");
      if (!is_generalized_inverse(mu, mu)) out.fail("Haar measure is not its own inverse");
      if (reflexive_inverse(mu, mu) != mu) out.fail("reflexive inverse differs from mu");
    }
  }
  if (out.passed) out.detail << count << " subgroup Haar measures verified exactly";
}

// 5. Diagonal dominance alpha_0 > 3/4 on the Klein four-group.
void klein_obstruction(const SuiteOptions& opts, Outcome& out) {
  Rng rng(opts.seed + 5);
  const GroupPtr v4 = make_group(GroupSpec::elementary_abelian_2(2));
  std::uniform_int_distribution<long> part(1, 20);
  auto build = [&](const Rational& alpha0) {
    const long a = part(rng), b = part(rng), c = part(rng);
    const Rational rest = 1 - alpha0;
    const Rational s = make_rational(a + b + c);
    return ProbMeasure(v4, {alpha0, rest * a / s, rest * b / s, rest * c / s});
  };
  std::size_t flagged = 0, clean = 0;
  for (long i = 0; i < 20; ++i) {
    // alpha0 strictly between 3/4 and 1
    const Rational alpha0 = make_rational(3, 4) + make_rational(1, 4) * make_rational(i + 1, 22);
    const ProbMeasure mu = build(alpha0);
    const auto r = obstruction_check(mu);
    if (!r.obstructed || !r.det || sgn(*r.det) == 0) out.fail("missed obstruction");
    if (decide_regular(mu).is_regular()) out.fail("obstructed measure decided regular");
    flagged += r.obstructed;
  }
  for (long i = 0; i < 20; ++i) {
    // alpha0 in (0, 3/4], including the boundary
    const Rational alpha0 = make_rational(3, 4) * make_rational(20 - i, 20);
    const auto r = obstruction_check(build(alpha0));
    if (r.obstructed) out.fail("false obstruction at alpha0 = " + format_rational(alpha0));
    clean += !r.obstructed;
  }
  if (out.passed) out.detail << flagged << "/20 obstructed with det != 0, " << clean << "/20 clean";
}

// 6. supp(mu * nu) = supp(mu) supp(nu).
void wendel_supports(const SuiteOptions& opts, Outcome& out) {
  Rng rng(opts.seed + 6);
  std::size_t pairs = 0;
  for (const auto& spec : {GroupSpec::cyclic(6), GroupSpec::symmetric(3), GroupSpec::dihedral(4)}) {
    const GroupPtr g = make_group(spec);
    for (int i = 0; i < 200; ++i) {
      const ProbMeasure mu = random_measure(g, rng), nu = random_measure(g, rng);
      if (support(convolve(mu, nu)) != set_product(support(mu), support(nu))) {
        out.fail(spec.name() + " pair " + std::to_string(i));
      }
      ++pairs;
    }
  }
  if (out.passed) out.detail << pairs << " pairs, supports multiply exactly";
}

std::vector<GroupPtr> supported_duals(std::size_t max_order) {
  std::vector<GroupPtr> out;
  for (const auto& spec : builtin_catalog(max_order)) out.push_back(make_group(spec));
  return out;
}

// 7. Blockwise pseudoinverses make compatible functions regular; transform identities.
void fourier_side(const SuiteOptions& opts, Outcome& out) {
  Rng rng(opts.seed + 7);
  const Tolerances& tol = config().tolerances;
  double worst_regular = 0, worst_roundtrip = 0, worst_anti = 0;
  std::size_t duals = 0;
  for (const GroupPtr& g : supported_duals(24)) {
    const DualPtr dual = unitary_dual(g);
    ++duals;
    for (int i = 0; i < 100; ++i) {
      const CompatibleFunction gamma = random_compatible_function(dual, rng);
      const CompatibleFunction dagger = pseudo_inverse_blockwise(gamma);
      for (std::size_t b = 0; b < gamma.size(); ++b) {
        const double res = (gamma[b] * dagger[b] * gamma[b] - gamma[b]).norm();
        const double scale = gamma[b].norm();
        worst_regular = std::max(worst_regular, scale > 0 ? res / scale : res);
      }

      const ProbMeasure mu = random_measure(g, rng), nu = random_measure(g, rng);
      const auto f = inverse_fourier(fourier_transform(dual, mu));
      for (Element a = 0; a < g->order(); ++a) {
        worst_roundtrip = std::max(worst_roundtrip, std::abs(f[a] - Complex(mu[a].get_d(), 0)));
      }
      const CompatibleFunction lhs = fourier_transform(dual, convolve(mu, nu));
      const CompatibleFunction rhs = fourier_transform(dual, nu) * fourier_transform(dual, mu);
      for (std::size_t b = 0; b < lhs.size(); ++b) {
        worst_anti = std::max(worst_anti, (lhs[b] - rhs[b]).cwiseAbs().maxCoeff());
      }
    }
  }
  if (worst_regular > tol.pseudo_inverse) out.fail("gamma gamma^+ gamma residual " + std::to_string(worst_regular));
  if (worst_roundtrip > tol.transform) out.fail("round-trip error " + std::to_string(worst_roundtrip));
  if (worst_anti > tol.transform) out.fail("anti-multiplicativity error " + std::to_string(worst_anti));
  out.detail.precision(2);
  out.detail << std::scientific;
  if (out.passed) {
    out.detail << duals << " duals; max residuals: regularity " << worst_regular
               << ", round-trip " << worst_roundtrip << ", anti-multiplicativity " << worst_anti;
  }
}

// 8. Fourier-side verdicts agree with the exact LP.
void cross_method(const SuiteOptions& opts, Outcome& out) {
  Rng rng(opts.seed + 8);
  std::size_t reg = 0, cert = 0, inconclusive = 0, rational_fail = 0;
  for (const auto& spec : {GroupSpec::cyclic(6), GroupSpec::dihedral(4)}) {
    const GroupPtr g = make_group(spec);
    for (int i = 0; i < 100; ++i) {
      const ProbMeasure mu = random_test_measure(g, rng);
      const bool lp = decide_regular(mu).is_regular();
      try {
        const FourierCandidate c = fourier_ginverse_candidate(mu);
        switch (c.verdict) {
          case FourierVerdict::REGULAR_WITH_WITNESS:
            ++reg;
            if (!lp) out.fail(spec.name() + " #" + std::to_string(i) + ": Fourier regular, LP not");
            break;
          case FourierVerdict::NOT_REGULAR_CERTIFIED:
            ++cert;
            if (lp) out.fail(spec.name() + " #" + std::to_string(i) + ": Fourier certified non-regular, LP regular");
            break;
          case FourierVerdict::INCONCLUSIVE: ++inconclusive; break;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::RationalizationFailed) throw;
        ++rational_fail;
      }
    }
  }
  if (out.passed) {
    out.detail << "regular " << reg << ", certified non-regular " << cert << ", inconclusive "
               << inconclusive << ", rationalization failures " << rational_fail
               << ", disagreements 0";
  }
}

// 9. Closure of the Haar idempotents; on abelian groups it is the Haar set itself.
void omega_experiment(const SuiteOptions& opts, Outcome& out) {
  std::size_t groups = 0, complete = 0, elements = 0, all_regular = 0;
  for (const auto& spec : builtin_catalog(opts.omega_max_order)) {
    const GroupPtr g = make_group(spec);
    OmegaOptions o;
    o.max_elements = opts.omega_budget;
    o.allow_truncation = true;
    const OmegaReport r = omega_closure(g, o);
    ++groups;
    complete += r.complete;
    elements += r.elements.size();
    all_regular += r.all_regular;
    if (r.verdicts.size() != r.elements.size()) out.fail(spec.name() + ": missing verdicts");
    if (g->is_abelian() && (!r.complete || r.elements.size() != r.haar_count)) {
      out.fail(spec.name() + ": abelian closure differs from the Haar set");
    }
  }
  if (out.passed) {
    out.detail << groups << " groups, " << complete << " closed within budget " << opts.omega_budget
               << ", " << elements << " elements tabulated, " << all_regular
               << " groups all-regular (evidence only)";
  }
}

// Displayed 4x4 action matrix of the Klein four-group.
void klein_action_matrix(const SuiteOptions&, Outcome& out) {
  const GroupPtr v4 = make_group(GroupSpec::elementary_abelian_2(2));
  const ProbMeasure mu(v4, {make_rational(1, 10), make_rational(2, 10), make_rational(3, 10),
                            make_rational(4, 10)});
  const ActionMatrix a = build_action_matrix(mu);
  static const int pattern[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      if (a.matrix(j, k) != mu[pattern[j][k]]) out.fail("entry mismatch");
    }
  }
  if (!a.matrix.is_symmetric()) out.fail("not symmetric");
  if (out.passed) out.detail << "A[j][k] = alpha_{S_j(k)}, symmetric and doubly stochastic";
}

// Z2 Fourier embedding hand computations.
void z2_fourier(const SuiteOptions&, Outcome& out) {
  const GroupPtr z2 = make_group(GroupSpec::cyclic(2));
  const auto mid = fourier_ginverse_candidate(ProbMeasure(z2, two_point(make_rational(1, 2))));
  if (mid.verdict != FourierVerdict::REGULAR_WITH_WITNESS) out.fail("midpoint not regular");
  const auto third = fourier_ginverse_candidate(ProbMeasure(z2, two_point(make_rational(1, 3))));
  if (third.verdict != FourierVerdict::NOT_REGULAR_CERTIFIED) out.fail("(1/3,2/3) not certified");
  // the unique solution is -delta_e + 2 delta_a
  if (std::abs(third.inverse_transform[0].real() + 1.0) > 1e-9 ||
      std::abs(third.inverse_transform[1].real() - 2.0) > 1e-9) {
    out.fail("inverse transform of the pseudoinverse is not (-1, 2)");
  }
  if (out.passed) out.detail << "midpoint -> witness itself; (1/3,2/3) -> f = (-1, 2), certified";
}

}  // namespace

std::vector<ScenarioResult> run_scenario_suite(const SuiteOptions& opts) {
  using Fn = std::function<void(const SuiteOptions&, Outcome&)>;
  const std::vector<std::tuple<std::string, std::string, Fn>> scenarios = {
      {"1", "non-regular midpoints (a^2 != e)", non_regular_midpoints},
      {"2", "midpoint regular iff g^2 = e", midpoint_iff_involution},
      {"3", "two-element group classification", two_element_classification},
      {"4", "Haar midpoints of Z2^k are self-inverse", midpoint_of_polytope},
      {"5", "Klein four diagonal-dominance obstruction", klein_obstruction},
      {"6", "support of a convolution is the set product", wendel_supports},
      {"7", "compatible functions regular under pseudoinverse", fourier_side},
      {"8", "Fourier and LP verdicts agree", cross_method},
      {"9", "idempotent-generated closure experiment", omega_experiment},
      {"S1", "Klein four action matrix pattern", klein_action_matrix},
      {"S2", "Z2 Fourier embedding", z2_fourier},
  };
  std::vector<ScenarioResult> results;
  for (const auto& [id, name, fn] : scenarios) {
    ScenarioResult r{id, name, false, "", 0};
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      fn(opts, out);
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    r.seconds = seconds_since(t0);
    r.passed = out.passed;
    r.detail = out.detail.str();
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace convolab::suite
