#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "convolab/error.hpp"
#include "convolab/involutive.hpp"
#include "convolab/regularity.hpp"
#include "convolab/suite.hpp"
#include "oracles.hpp"

using namespace convolab;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

std::vector<Rational> regular_alphas(const std::vector<TwoPointRow>& rows) {
  std::vector<Rational> out;
  for (const auto& r : rows) {
    if (r.verdict.is_regular()) out.push_back(r.alpha);
  }
  return out;
}

// Z2: mu = (a0, a1), x = (b0, b1). The identity coordinate of mu*x*mu = mu reads
// (a0^2 + a1^2) b0 + 2 a0 a1 (1 - b0) = a0, i.e. (2 a0 - 1)^2 b0 = a0 (2 a0 - 1).
bool z2_scalar_regular(const Rational& a0) {
  const Rational lead = (2 * a0 - 1) * (2 * a0 - 1);
  const Rational rhs = a0 * (2 * a0 - 1);
  if (lead == 0) return rhs == 0;
  const Rational b0 = rhs / lead;
  return b0 >= 0 && b0 <= 1;
}

}  // namespace

TEST_CASE("operator matrix") {
  suite::Rng rng(3);
  for (const auto& spec : {GroupSpec::cyclic(4), GroupSpec::symmetric(3), GroupSpec::quaternion8()}) {
    const GroupPtr g = make_group(spec);
    for (int i = 0; i < 10; ++i) {
      const auto mu = suite::random_measure(g, rng);
      const auto m = conv_operator_matrix(mu);
      for (std::size_t c = 0; c < m.cols(); ++c) {
        Rational s = 0;
        for (std::size_t r = 0; r < m.rows(); ++r) s += m(r, c);
        CHECK(s == 1);
      }
      const auto x = suite::random_measure(g, rng);
      CHECK((m * x.weights()) == convolve(mu, convolve(x, mu)).weights());
    }
  }
}

TEST_CASE("Z2 operator matrix is the square of the action matrix") {
  const GroupPtr z2 = make_group(GroupSpec::cyclic(2));
  const ProbMeasure mu(z2, {q(1, 3), q(2, 3)});
  const auto a = build_action_matrix(mu).matrix;
  CHECK(conv_operator_matrix(mu) == a * a);
}

TEST_CASE("Z3 counterexample (1/2, 1/2, 0)") {
  const GroupPtr z3 = make_group(GroupSpec::cyclic(3));
  const ProbMeasure mu(z3, {q(1, 2), q(1, 2), q(0)});
  const auto v = decide_regular(mu);
  CHECK_FALSE(v.is_regular());
  CHECK(v.method() == VerdictMethod::OBSTRUCTION);
  CHECK(candidate_inverse_support(mu).size() == 0);
  const auto full = decide_regular(mu, {.support_prefilter = false});
  CHECK_FALSE(full.is_regular());
  CHECK(full.method() == VerdictMethod::LP);
  CHECK_FALSE(lp_feasible(regularity_lp(mu)));
  CHECK_FALSE(oracle::grid_has_generalized_inverse(mu, 30));
}

TEST_CASE("Z2 two-point family matches the scalar equation") {
  const GroupPtr z2 = make_group(GroupSpec::cyclic(2));
  for (long k = 0; k <= 101; ++k) {
    const Rational a0 = q(k, 101);
    const ProbMeasure mu(z2, {a0, 1 - a0});
    CAPTURE(k);
    CHECK(decide_regular(mu).is_regular() == z2_scalar_regular(a0));
  }
  CHECK(decide_regular(ProbMeasure(z2, {q(1, 2), q(1, 2)})).is_regular());
  CHECK(regular_alphas(classify_two_point_family(z2, 1, 4)) == std::vector<Rational>{q(0), q(1, 2), q(1)});
}

TEST_CASE("two-point families on Z4") {
  const GroupPtr z4 = make_group(GroupSpec::cyclic(4));
  CHECK(regular_alphas(classify_two_point_family(z4, 1, 20)) == std::vector<Rational>{q(0), q(1)});
  CHECK(regular_alphas(classify_two_point_family(z4, 2, 20)) ==
        std::vector<Rational>{q(0), q(1, 2), q(1)});
  CHECK(classify_two_point_family(z4, 2, 20).size() == 21);
  for (auto [g, d] : {std::pair<Element, std::size_t>{0, 4}, {1, 0}}) {
    try {
      classify_two_point_family(z4, g, d);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::PreconditionViolated);
    }
  }
}

TEST_CASE("Dirac measures are regular with the inverse point mass") {
  for (const auto& spec : {GroupSpec::cyclic(5), GroupSpec::symmetric(3), GroupSpec::quaternion8()}) {
    const GroupPtr g = make_group(spec);
    for (Element a = 0; a < g->order(); ++a) {
      const auto v = decide_regular(dirac(g, a));
      REQUIRE(v.is_regular());
      CHECK(*v.witness() == dirac(g, g->inverse(a)));
      CHECK(*v.reflexive_witness() == dirac(g, g->inverse(a)));
    }
  }
}

TEST_CASE("Haar idempotents are their own generalized inverses") {
  for (const auto& spec : builtin_catalog(12)) {
    CAPTURE(spec.name());
    for (const auto& h : haar_idempotents(make_group(spec))) {
      CHECK(is_generalized_inverse(h, h));
      CHECK(decide_regular(h).is_regular());
    }
  }
}

TEST_CASE("verdict invariants on random measures") {
  suite::Rng rng(5);
  for (const auto& spec : {GroupSpec::cyclic(3), GroupSpec::cyclic(4), GroupSpec::elementary_abelian_2(2),
                           GroupSpec::symmetric(3), GroupSpec::dihedral(4), GroupSpec::quaternion8()}) {
    CAPTURE(spec.name());
    const GroupPtr g = make_group(spec);
    for (int i = 0; i < 30; ++i) {
      const auto mu = suite::random_test_measure(g, rng);
      const auto v = decide_regular(mu);
      CHECK(v.is_regular() == decide_regular(mu, {.support_prefilter = false}).is_regular());
      if (v.is_regular()) {
        const auto& x = *v.witness();
        const auto& r = *v.reflexive_witness();
        CHECK(convolve(mu, convolve(x, mu)) == mu);
        CHECK(convolve(mu, convolve(r, mu)) == mu);
        CHECK(convolve(r, convolve(mu, r)) == r);
        // mu*x is idempotent, hence Haar on a subgroup
        const auto e = convolve(mu, x);
        CHECK(is_idempotent(e));
        CHECK(is_subgroup(support(e)));
        const auto sx = support(x);
        const auto allowed = candidate_inverse_support(mu);
        for (Element a : sx.elements()) CHECK(allowed.contains(a));
      } else if (g->order() <= 4) {
        CHECK_FALSE(oracle::grid_has_generalized_inverse(mu, 6));
      }
    }
  }
}

TEST_CASE("regularity is invariant under Klein automorphisms") {
  const GroupPtr v4 = make_group(GroupSpec::elementary_abelian_2(2));
  REQUIRE(v4->mul(1, 2) == 3);
  suite::Rng rng(9);
  std::vector<Element> perm = {1, 2, 3};
  for (int i = 0; i < 20; ++i) {
    const auto mu = suite::random_test_measure(v4, rng);
    const bool base = decide_regular(mu).is_regular();
    std::vector<Element> p = perm;
    do {
      std::vector<Rational> w(4);
      w[0] = mu[0];
      for (Element a = 1; a < 4; ++a) w[p[a - 1]] = mu[a];
      CHECK(decide_regular(ProbMeasure(v4, w)).is_regular() == base);
    } while (std::next_permutation(p.begin(), p.end()));
  }
}

TEST_CASE("reflexive inverse") {
  const GroupPtr z3 = make_group(GroupSpec::cyclic(3));
  const auto u = uniform(ElementSet(z3, {0, 1, 2}));
  const auto r = reflexive_inverse(u, dirac(z3, 1));
  CHECK(r == u);
  try {
    reflexive_inverse(dirac(z3, 1), dirac(z3, 1));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAGeneralizedInverse);
  }
  CHECK(reflexive_inverse(dirac(z3, 1), dirac(z3, 2)) == dirac(z3, 2));
}

TEST_CASE("verdict factory refuses a bad witness") {
  const GroupPtr z3 = make_group(GroupSpec::cyclic(3));
  CHECK_THROWS(RegularityVerdict::regular(dirac(z3, 1), dirac(z3, 1), VerdictMethod::LP, ""));
}

TEST_CASE("closure of Haar idempotents") {
  SUBCASE("Z2") {
    const auto r = omega_closure(make_group(GroupSpec::cyclic(2)));
    CHECK(r.complete);
    CHECK(r.elements.size() == 2);
    CHECK(r.haar_count == 2);
    CHECK(r.all_regular);
  }
  SUBCASE("Klein") {
    const auto r = omega_closure(make_group(GroupSpec::elementary_abelian_2(2)));
    CHECK(r.complete);
    CHECK(r.elements.size() == 5);
  }
  SUBCASE("Q8 (every subgroup normal)") {
    const auto r = omega_closure(make_group(GroupSpec::quaternion8()));
    CHECK(r.complete);
    CHECK(r.elements.size() == 6);
    CHECK(r.all_regular);
  }
  SUBCASE("S3 grows past any budget") {
    const GroupPtr s3 = make_group(GroupSpec::symmetric(3));
    try {
      omega_closure(s3, {.max_elements = 200});
      FAIL("closed");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ClosureBudgetExceeded);
    }
    const auto r = omega_closure(s3, {.max_elements = 200, .allow_truncation = true});
    CHECK_FALSE(r.complete);
    CHECK(r.elements.size() > 6);
    CHECK(r.verdicts.size() == r.elements.size());
    const auto subs = enumerate_subgroups(s3);
    const auto hk = convolve(uniform(subs[1].set()), uniform(subs[2].set()));
    CHECK(support(hk).size() == 4);
    CHECK(std::find(r.elements.begin(), r.elements.end(), hk) != r.elements.end());
    CHECK_FALSE(decide_regular(hk).is_regular());
  }
}
