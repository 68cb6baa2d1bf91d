#include <doctest.h>

#include "convolab/error.hpp"
#include "convolab/involutive.hpp"
#include "convolab/regularity.hpp"
#include "convolab/suite.hpp"

using namespace convolab;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::ParseError;
}

std::vector<Element> all(const GroupPtr& g) {
  std::vector<Element> v(g->order());
  for (Element a = 0; a < g->order(); ++a) v[a] = a;
  return v;
}

}  // namespace

TEST_CASE("permutations on Z2^3 are involutions") {
  const GroupPtr g = make_group(GroupSpec::elementary_abelian_2(3));
  const auto fam = action_permutations(ElementSet(g, all(g)));
  REQUIRE(fam.perm.size() == 8);
  CHECK(fam.support.front() == g->identity());
  for (std::size_t j = 0; j < 8; ++j) {
    for (std::size_t k = 0; k < 8; ++k) {
      CHECK(fam.perm[j][fam.perm[j][k]] == k);
      CHECK(fam.support[fam.perm[j][k]] == g->mul(fam.support[j], fam.support[k]));
    }
  }
}

TEST_CASE("Klein action matrix") {
  const GroupPtr v4 = make_group(GroupSpec::elementary_abelian_2(2));
  const ProbMeasure mu(v4, {q(1, 2), q(1, 4), q(1, 8), q(1, 8)});
  const auto a = build_action_matrix(mu);
  CHECK(a.matrix.is_symmetric());
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(a.matrix(j, j) == q(1, 2));
    for (std::size_t k = 0; k < 4; ++k) CHECK(a.matrix(j, k) == a.matrix(0, a.family.perm[j][k]));
  }
  // each row and column is a permutation of the weights
  for (std::size_t j = 0; j < 4; ++j) {
    Rational s = 0;
    for (std::size_t k = 0; k < 4; ++k) s += a.matrix(j, k);
    CHECK(s == 1);
  }
}

TEST_CASE("uniform measure gives the constant matrix") {
  for (std::size_t k = 1; k <= 3; ++k) {
    const GroupPtr g = make_group(GroupSpec::elementary_abelian_2(k));
    const auto a = build_action_matrix(uniform(ElementSet(g, all(g)))).matrix;
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c) CHECK(a(r, c) == q(1, 1L << k));
  }
}

TEST_CASE("composed system agrees with the LP") {
  suite::Rng rng(17);
  for (std::size_t k = 1; k <= 3; ++k) {
    const GroupPtr g = make_group(GroupSpec::elementary_abelian_2(k));
    const auto subs = enumerate_subgroups(g);
    for (int i = 0; i < 20; ++i) {
      const auto& h = subs[rng() % subs.size()];
      // random weights on the subgroup, sometimes a mixture with its Haar measure
      std::vector<Rational> w(g->order(), 0);
      long total = 0;
      std::vector<long> raw;
      for (std::size_t t = 0; t < h.size(); ++t) {
        raw.push_back(1 + static_cast<long>(rng() % 5));
        total += raw.back();
      }
      for (std::size_t t = 0; t < h.size(); ++t) w[h.set().elements()[t]] = q(raw[t], total);
      ProbMeasure mu(g, w);
      if (i % 3 == 0) {
        const std::vector<Rational> c = {q(1, 2), q(1, 2)};
        const std::vector<ProbMeasure> ms = {mu, uniform(h.set())};
        mu = mix(c, ms);
      }
      const auto sol = solve_composed_system(mu);
      const auto v = decide_regular(mu);
      CHECK(sol.feasible() == v.is_regular());
      if (sol.feasible()) {
        const auto beta = measure_from_support_vector(sol.action.family, *sol.feasible_beta);
        CHECK(is_generalized_inverse(mu, beta));
        CHECK((sol.squared * *sol.feasible_beta) == sol.action.alpha);
        CHECK(measure_from_support_vector(sol.action.family, *sol.sigma) == convolve(mu, beta));
      }
    }
  }
}

TEST_CASE("obstruction") {
  SUBCASE("Z2 (3/5, 2/5)") {
    const GroupPtr z2 = make_group(GroupSpec::cyclic(2));
    const auto r = obstruction_check(ProbMeasure(z2, {q(3, 5), q(2, 5)}));
    CHECK(r.obstructed);
    CHECK(r.threshold == q(1, 2));
    REQUIRE(r.det);
    CHECK(*r.det == q(1, 5));
    CHECK_FALSE(obstruction_check(ProbMeasure(z2, {q(1, 2), q(1, 2)})).obstructed);
  }
  SUBCASE("Klein (9/10, 1/20, 1/40, 1/40)") {
    const GroupPtr v4 = make_group(GroupSpec::elementary_abelian_2(2));
    const ProbMeasure mu(v4, {q(9, 10), q(1, 20), q(1, 40), q(1, 40)});
    const auto r = obstruction_check(mu);
    CHECK(r.obstructed);
    CHECK(r.threshold == q(3, 4));
    CHECK(*r.det != 0);
    CHECK_FALSE(decide_regular(mu).is_regular());
    CHECK_FALSE(obstruction_check(ProbMeasure(v4, {q(3, 4), q(1, 12), q(1, 12), q(1, 12)})).obstructed);
  }
  SUBCASE("threshold sweep on Z2^3") {
    const GroupPtr g = make_group(GroupSpec::elementary_abelian_2(3));
    for (long num = 1; num < 64; ++num) {
      const Rational a0 = q(num, 64);
      std::vector<Rational> w(8, (1 - a0) / 7);
      w[0] = a0;
      const ProbMeasure mu(g, w);
      CHECK(obstruction_check(mu).obstructed == (a0 > q(7, 8)));
      if (a0 > q(7, 8)) CHECK_FALSE(decide_regular(mu).is_regular());
    }
  }
}

TEST_CASE("error paths") {
  const GroupPtr z3 = make_group(GroupSpec::cyclic(3));
  const auto u3 = uniform(ElementSet(z3, {0, 1, 2}));
  CHECK(code_of([&] { build_action_matrix(u3); }) == ErrorCode::GroupNotInvolutive);
  CHECK(code_of([&] { obstruction_check(u3); }) == ErrorCode::PreconditionViolated);
  const GroupPtr v4 = make_group(GroupSpec::elementary_abelian_2(2));
  const ProbMeasure skew(v4, {q(1, 3), q(1, 3), q(1, 3), q(0)});
  CHECK(code_of([&] { build_action_matrix(skew); }) == ErrorCode::SupportNotClosed);
  CHECK(code_of([&] { action_permutations(ElementSet(v4, {1, 2})); }) == ErrorCode::SupportNotClosed);
  CHECK(code_of([&] { obstruction_check(ProbMeasure(v4, {q(1, 2), q(1, 2), q(0), q(0)})); }) ==
        ErrorCode::PreconditionViolated);
}
