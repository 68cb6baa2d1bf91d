#include <doctest.h>

#include <cmath>

#include "convolab/config.hpp"
#include "convolab/error.hpp"
#include "convolab/fourier.hpp"
#include "convolab/suite.hpp"

using namespace convolab;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

std::vector<double> random_real(std::size_t n, suite::Rng& rng) {
  std::uniform_real_distribution<double> d(-1, 1);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("duals of built-in groups validate") {
  for (const auto& spec : builtin_catalog(24)) {
    CAPTURE(spec.name());
    const GroupPtr g = make_group(spec);
    const auto dual = unitary_dual(g);
    const auto diag = diagnose_dual(*dual);
    CHECK(diag.dimension_sum == g->order());
    CHECK(diag.homomorphism < 1e-10);
    CHECK(diag.unitarity < 1e-10);
    CHECK(diag.character_norm < 1e-8);
    CHECK(diag.orthogonality < 1e-8);
  }
}

TEST_CASE("D4 dimensions") {
  const auto dual = unitary_dual(make_group(GroupSpec::dihedral(4)));
  std::size_t sum = 0, twos = 0;
  for (const auto& r : dual->irreps) {
    sum += r.dim * r.dim;
    twos += r.dim == 2;
  }
  CHECK(sum == 8);
  CHECK(dual->irreps.size() == 5);
  CHECK(twos == 1);
}

TEST_CASE("unsupported groups") {
  auto code = [](const GroupPtr& g) {
    try {
      unitary_dual(g);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  CHECK(code(make_group(GroupSpec::raw({{0, 1}, {1, 0}}))) == ErrorCode::UnsupportedGroup);
}

TEST_CASE("Z2 sign block") {
  const GroupPtr z2 = make_group(GroupSpec::cyclic(2));
  const auto dual = unitary_dual(z2);
  const ProbMeasure mu(z2, {q(1, 3), q(2, 3)});
  const auto gamma = fourier_transform(dual, mu);
  bool found = false;
  for (std::size_t i = 0; i < dual->irreps.size(); ++i) {
    if (std::abs(dual->irreps[i].character(1) + 1.0) < 1e-12) {
      found = true;
      CHECK(std::abs(gamma[i](0, 0) - Complex(-1.0 / 3, 0)) < 1e-12);
    } else {
      CHECK(std::abs(gamma[i](0, 0) - Complex(1, 0)) < 1e-12);
    }
  }
  CHECK(found);
}

TEST_CASE("transform identities") {
  suite::Rng rng(23);
  for (const auto& spec : {GroupSpec::cyclic(6), GroupSpec::dihedral(5), GroupSpec::quaternion8(),
                           GroupSpec::symmetric(4), GroupSpec::product({GroupSpec::cyclic(2), GroupSpec::symmetric(3)})}) {
    CAPTURE(spec.name());
    const GroupPtr g = make_group(spec);
    const auto dual = unitary_dual(g);
    for (int i = 0; i < 5; ++i) {
      const auto f = random_real(g->order(), rng);
      const auto h = random_real(g->order(), rng);
      const auto ff = fourier_transform(dual, f);

      // round trip
      const auto back = inverse_fourier(ff);
      for (Element a = 0; a < g->order(); ++a) CHECK(std::abs(back[a] - Complex(f[a], 0)) < 1e-10);

      // Plancherel
      double lhs = 0, rhs = 0;
      for (double x : f) lhs += x * x;
      for (std::size_t r = 0; r < dual->irreps.size(); ++r) rhs += dual->irreps[r].dim * ff[r].squaredNorm();
      CHECK(lhs == doctest::Approx(rhs / g->order()).epsilon(1e-10));

      // (f*h)^ = h^ f^
      std::vector<double> conv(g->order(), 0.0);
      for (Element a = 0; a < g->order(); ++a)
        for (Element x = 0; x < g->order(); ++x) conv[a] += f[g->mul(a, g->inverse(x))] * h[x];
      const auto lhs_t = fourier_transform(dual, conv);
      const auto rhs_t = fourier_transform(dual, h) * ff;
      for (std::size_t r = 0; r < dual->irreps.size(); ++r) CHECK((lhs_t[r] - rhs_t[r]).norm() < 1e-10);
    }
    const auto mu = suite::random_measure(g, rng);
    const auto gm = fourier_transform(dual, mu);
    for (std::size_t r = 0; r < gm.size(); ++r) {
      CHECK(gm[r].operatorNorm() <= 1 + 1e-12);
    }
  }
}

TEST_CASE("pseudoinverse") {
  ComplexMatrix a(2, 2);
  a << Complex(3, 0), Complex(1, 0), Complex(0, 6), Complex(0, 2);  // (1, 2i)^T (3, 1), rank one
  const auto x = pseudo_inverse(a, 1e-9);
  CHECK(penrose_residual(a, x) < 1e-12);
  CHECK(penrose_residual(a, x.transpose()) > 1e-3);
  CHECK((a * x * a - a).norm() < 1e-12);
  CHECK((x * a * x - x).norm() < 1e-12);

  ComplexMatrix inv(2, 2);
  inv << Complex(2, 0), Complex(1, 0), Complex(1, 0), Complex(1, 0);
  CHECK((pseudo_inverse(inv, 1e-9) - inv.inverse()).norm() < 1e-12);
  CHECK(pseudo_inverse(ComplexMatrix::Zero(3, 3), 1e-9).norm() == 0);

  suite::Rng rng(29);
  const auto dual = unitary_dual(make_group(GroupSpec::symmetric(3)));
  for (int i = 0; i < 20; ++i) {
    const auto gamma = suite::random_compatible_function(dual, rng);
    const auto dag = pseudo_inverse_blockwise(gamma);
    for (std::size_t r = 0; r < gamma.size(); ++r) CHECK(penrose_residual(gamma[r], dag[r]) < 1e-8);
    CHECK(check_delta_regularity(gamma));
    CHECK(check_delta_regularity(gamma, dag));
  }
}

TEST_CASE("compatible function shape checks") {
  const auto dual = unitary_dual(make_group(GroupSpec::symmetric(3)));
  std::vector<ComplexMatrix> blocks;
  for (const auto& r : dual->irreps) blocks.push_back(ComplexMatrix::Identity(r.dim, r.dim));
  CHECK_NOTHROW(CompatibleFunction(dual, blocks));
  blocks.back() = ComplexMatrix::Identity(3, 3);
  try {
    CompatibleFunction(dual, blocks);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
  blocks.pop_back();
  CHECK_THROWS_AS(CompatibleFunction(dual, blocks), Error);
}

TEST_CASE("Fourier candidates on Z2") {
  const GroupPtr z2 = make_group(GroupSpec::cyclic(2));
  SUBCASE("midpoint") {
    const auto c = fourier_ginverse_candidate(ProbMeasure(z2, {q(1, 2), q(1, 2)}));
    CHECK(c.verdict == FourierVerdict::REGULAR_WITH_WITNESS);
    REQUIRE(c.candidate);
    CHECK(is_generalized_inverse(ProbMeasure(z2, {q(1, 2), q(1, 2)}), *c.candidate));
  }
  SUBCASE("(1/3, 2/3) has the signed inverse -delta_e + 2 delta_a") {
    const ProbMeasure mu(z2, {q(1, 3), q(2, 3)});
    const auto c = fourier_ginverse_candidate(mu);
    CHECK(c.verdict == FourierVerdict::NOT_REGULAR_CERTIFIED);
    CHECK(c.inverse_transform[0].real() == doctest::Approx(-1.0));
    CHECK(c.inverse_transform[1].real() == doctest::Approx(2.0));
    const auto v = verdict_from_fourier(mu, c);
    REQUIRE(v);
    CHECK_FALSE(v->is_regular());
    CHECK(v->method() == VerdictMethod::FOURIER_UNIQUE);
  }
}

TEST_CASE("conclusive Fourier verdicts agree with the LP") {
  suite::Rng rng(31);
  for (const auto& spec : {GroupSpec::cyclic(4), GroupSpec::symmetric(3), GroupSpec::elementary_abelian_2(3),
                           GroupSpec::quaternion8()}) {
    CAPTURE(spec.name());
    const GroupPtr g = make_group(spec);
    for (int i = 0; i < 25; ++i) {
      const auto mu = suite::random_test_measure(g, rng);
      const auto c = fourier_ginverse_candidate(mu);
      const auto v = verdict_from_fourier(mu, c);
      if (v) CHECK(v->is_regular() == decide_regular(mu).is_regular());
    }
  }
}

TEST_CASE("rationalization failure") {
  const Config saved = config();
  Config tight = saved;
  tight.tolerances.rationalize_max_den = 1;
  set_config(tight);
  const GroupPtr z3 = make_group(GroupSpec::cyclic(3));
  ErrorCode code = ErrorCode::ParseError;
  try {
    fourier_ginverse_candidate(uniform(ElementSet(z3, {0, 1, 2})));
  } catch (const Error& e) {
    code = e.code();
  }
  set_config(saved);
  CHECK(code == ErrorCode::RationalizationFailed);
}
