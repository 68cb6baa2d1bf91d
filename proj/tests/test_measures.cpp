#include <doctest.h>

#include <random>

#include "convolab/error.hpp"
#include "convolab/measures.hpp"
#include "convolab/suite.hpp"
#include "oracles.hpp"

using namespace convolab;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

std::vector<double> to_double(const ProbMeasure& mu) {
  std::vector<double> v;
  for (const auto& w : mu.weights()) v.push_back(w.get_d());
  return v;
}

}  // namespace

TEST_CASE("construction validates coefficients") {
  const GroupPtr z2 = make_group(GroupSpec::cyclic(2));
  CHECK_NOTHROW(ProbMeasure(z2, {q(1, 3), q(2, 3)}));
  auto code = [&](std::vector<Rational> w) {
    try {
      ProbMeasure(z2, std::move(w));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  CHECK(code({q(1)}) == ErrorCode::CoefficientsInvalid);
  CHECK(code({q(-1, 3), q(4, 3)}) == ErrorCode::CoefficientsInvalid);
  CHECK(code({q(1, 3), q(1, 3)}) == ErrorCode::CoefficientsInvalid);
}

TEST_CASE("Z2 example: (1/3, 2/3) squared") {
  const GroupPtr z2 = make_group(GroupSpec::cyclic(2));
  const ProbMeasure mu(z2, {q(1, 3), q(2, 3)});
  const ProbMeasure sq = convolve(mu, mu);
  CHECK(sq[0] == q(5, 9));
  CHECK(sq[1] == q(4, 9));
  CHECK(convolution_power(mu, 2) == sq);
  CHECK(convolution_power(mu, 1) == mu);
  CHECK(convolution_power(mu, 3) == convolve(sq, mu));
  try {
    convolution_power(mu, 0);
    FAIL("k = 0 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionViolated);
  }
}

TEST_CASE("mix") {
  const GroupPtr z3 = make_group(GroupSpec::cyclic(3));
  const std::vector<ProbMeasure> ms = {dirac(z3, 0), dirac(z3, 1)};
  const std::vector<Rational> c = {q(1, 4), q(3, 4)};
  const ProbMeasure m = mix(c, ms);
  CHECK(m.weights() == std::vector<Rational>{q(1, 4), q(3, 4), q(0)});

  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  CHECK(code([] { mix(std::span<const Rational>{}, std::span<const ProbMeasure>{}); }) ==
        ErrorCode::CoefficientsInvalid);
  const std::vector<Rational> one = {q(1)};
  CHECK(code([&] { mix(one, ms); }) == ErrorCode::CoefficientsInvalid);
  const std::vector<Rational> bad = {q(1, 2), q(1, 4)};
  CHECK(code([&] { mix(bad, ms); }) == ErrorCode::CoefficientsInvalid);
  const std::vector<ProbMeasure> mixed = {dirac(z3, 0), dirac(make_group(GroupSpec::cyclic(4)), 0)};
  const std::vector<Rational> half = {q(1, 2), q(1, 2)};
  CHECK(code([&] { mix(half, mixed); }) == ErrorCode::GroupMismatch);
  CHECK(code([&] { convolve(mixed[0], mixed[1]); }) == ErrorCode::GroupMismatch);
}

TEST_CASE("S3 convolution is not commutative") {
  const GroupPtr s3 = make_group(GroupSpec::symmetric(3));
  Element a = 1, b = 0;
  for (Element y = 1; y < s3->order(); ++y) {
    if (s3->mul(a, y) != s3->mul(y, a)) b = y;
  }
  REQUIRE(b != 0);
  CHECK(convolve(dirac(s3, a), dirac(s3, b)) != convolve(dirac(s3, b), dirac(s3, a)));
  CHECK(convolve(dirac(s3, a), dirac(s3, b)) == dirac(s3, s3->mul(a, b)));
}

TEST_CASE("convolution properties on random measures") {
  suite::Rng rng(11);
  for (const auto& spec : {GroupSpec::cyclic(5), GroupSpec::symmetric(3), GroupSpec::dihedral(4),
                           GroupSpec::quaternion8(), GroupSpec::elementary_abelian_2(3)}) {
    CAPTURE(spec.name());
    const GroupPtr g = make_group(spec);
    for (int i = 0; i < 25; ++i) {
      const auto mu = suite::random_measure(g, rng);
      const auto nu = suite::random_measure(g, rng);
      const auto la = suite::random_measure(g, rng);
      const auto mn = convolve(mu, nu);

      // associativity
      CHECK(convolve(mn, la) == convolve(mu, convolve(nu, la)));
      // mass conservation and nonnegativity (validated by construction, checked here exactly)
      Rational total = 0;
      for (const auto& w : mn.weights()) {
        CHECK(w >= 0);
        total += w;
      }
      CHECK(total == 1);
      // Wendel: supp(mu*nu) = supp(mu) supp(nu)
      CHECK(support(mn) == set_product(support(mu), support(nu)));
      // literal sum
      const auto lit = oracle::literal_convolution(*g, to_double(mu), to_double(nu));
      for (Element a = 0; a < g->order(); ++a) CHECK(lit[a] == doctest::Approx(mn[a].get_d()).epsilon(1e-12));
      // abelian groups commute
      if (g->is_abelian()) CHECK(mn == convolve(nu, mu));
      // identity
      CHECK(convolve(dirac(g, 0), mu) == mu);
    }
  }
}

TEST_CASE("Haar idempotents") {
  SUBCASE("trivial group") {
    const auto hs = haar_idempotents(make_group(GroupSpec::cyclic(1)));
    REQUIRE(hs.size() == 1);
    CHECK(hs[0][0] == 1);
  }
  SUBCASE("Z2") {
    const auto hs = haar_idempotents(make_group(GroupSpec::cyclic(2)));
    REQUIRE(hs.size() == 2);
    CHECK(hs[1].weights() == std::vector<Rational>{q(1, 2), q(1, 2)});
  }
  SUBCASE("Klein") { CHECK(haar_idempotents(make_group(GroupSpec::elementary_abelian_2(2))).size() == 5); }
  for (const auto& spec : builtin_catalog(12)) {
    CAPTURE(spec.name());
    const GroupPtr g = make_group(spec);
    for (const auto& h : haar_idempotents(g)) {
      CHECK(is_idempotent(h));
      CHECK(is_subgroup(support(h)));
    }
  }
}

TEST_CASE("idempotents are exactly the Haar measures (Z4 grid)") {
  const GroupPtr z4 = make_group(GroupSpec::cyclic(4));
  const auto hs = haar_idempotents(z4);
  const long d = 8;
  int idempotents = 0;
  for (long a = 0; a <= d; ++a)
    for (long b = 0; a + b <= d; ++b)
      for (long c = 0; a + b + c <= d; ++c) {
        const ProbMeasure mu(z4, {q(a, d), q(b, d), q(c, d), q(d - a - b - c, d)});
        if (is_idempotent(mu)) {
          ++idempotents;
          CHECK(std::find(hs.begin(), hs.end(), mu) != hs.end());
        }
      }
  CHECK(idempotents == 3);
}

TEST_CASE("non-idempotents") {
  const GroupPtr z3 = make_group(GroupSpec::cyclic(3));
  CHECK_FALSE(is_idempotent(ProbMeasure(z3, {q(1, 2), q(1, 2), q(0)})));
  CHECK_FALSE(is_idempotent(dirac(z3, 1)));
  CHECK(weights_key(dirac(z3, 1)) != weights_key(dirac(z3, 2)));
}
