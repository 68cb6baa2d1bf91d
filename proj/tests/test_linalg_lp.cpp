#include <doctest.h>

#include "convolab/error.hpp"
#include "convolab/linalg.hpp"
#include "convolab/lp.hpp"
#include "convolab/rational.hpp"

using namespace convolab;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

RationalMatrix from(std::vector<std::vector<Rational>> rows) {
  RationalMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/6") == q(1, 2));
  CHECK(parse_rational("-4") == q(-4));
  CHECK(format_rational(q(2, 4)) == "1/2");
  CHECK(format_rational(q(5)) == "5");
  for (const char* bad : {"1/0", "abc", "", "1/2/3", "0.5"}) {
    CAPTURE(bad);
    try {
      parse_rational(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
    }
  }
  CHECK(rationalize(0.333333333333, 1000) == q(1, 3));
  CHECK(rationalize(-2.5, 10) == q(-5, 2));
}

TEST_CASE("determinant and rank") {
  CHECK(determinant(RationalMatrix::identity(4)) == 1);
  CHECK(determinant(from({{q(1, 2), q(1, 3)}, {q(1, 4), q(1, 5)}})) == q(1, 10) - q(1, 12));
  CHECK(determinant(from({{q(1), q(2)}, {q(2), q(4)}})) == 0);
  CHECK(determinant(from({{q(0), q(1)}, {q(1), q(0)}})) == -1);
  CHECK(rank(from({{q(1), q(2)}, {q(2), q(4)}})) == 1);
  CHECK(rank(RationalMatrix(3, 2)) == 0);
  try {
    determinant(RationalMatrix(2, 3));
    FAIL("non-square accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
  // 3x3 with known value
  CHECK(determinant(from({{q(2), q(0), q(1)}, {q(1), q(3), q(2)}, {q(1), q(1), q(2)}})) == 6);
}

TEST_CASE("matrix products") {
  const auto a = from({{q(1), q(2)}, {q(3), q(4)}});
  CHECK(a * RationalMatrix::identity(2) == a);
  CHECK((a * RationalVector{q(1), q(-1)}) == RationalVector{q(-1), q(-1)});
  CHECK(a.transpose()(0, 1) == 3);
  CHECK_FALSE(a.is_symmetric());
  CHECK((a * a.transpose()).is_symmetric());
}

TEST_CASE("affine solve") {
  const auto m = from({{q(1), q(1), q(0)}, {q(0), q(0), q(1)}});
  const auto sol = solve_affine(m, {q(1), q(1, 2)});
  REQUIRE(sol);
  CHECK((m * sol->particular) == RationalVector{q(1), q(1, 2)});
  REQUIRE(sol->nullspace.size() == 1);
  CHECK((m * sol->nullspace[0]) == RationalVector{q(0), q(0)});
  CHECK_FALSE(solve_affine(from({{q(1)}, {q(1)}}), {q(0), q(1)}));
}

TEST_CASE("LP feasibility") {
  SUBCASE("simplex point with an equality") {
    LPProblem p{from({{q(1), q(1)}, {q(1), q(-1)}}), {q(1), q(1, 3)}};
    LPStats stats;
    const auto x = lp_feasible(p, &stats);
    REQUIRE(x);
    CHECK((*x)[0] == q(2, 3));
    CHECK((*x)[1] == q(1, 3));
    CHECK(stats.phase1_optimum == 0);
  }
  SUBCASE("infeasible because of sign") {
    LPProblem p{from({{q(1), q(1)}}), {q(-1)}};
    LPStats stats;
    CHECK_FALSE(lp_feasible(p, &stats));
    CHECK(stats.phase1_optimum > 0);
  }
  SUBCASE("negative rhs rows are handled") {
    LPProblem p{from({{q(-1), q(0)}, {q(1), q(1)}}), {q(-1, 2), q(1)}};
    const auto x = lp_feasible(p);
    REQUIRE(x);
    CHECK((*x)[0] == q(1, 2));
  }
  SUBCASE("redundant and degenerate rows") {
    LPProblem p{from({{q(1), q(1), q(1)}, {q(2), q(2), q(2)}, {q(1), q(0), q(0)}}), {q(1), q(2), q(0)}};
    const auto x = lp_feasible(p);
    REQUIRE(x);
    CHECK((*x)[0] == 0);
    CHECK((*x)[1] + (*x)[2] == 1);
  }
  SUBCASE("dimension mismatch") {
    LPProblem p{from({{q(1), q(1)}}), {q(1), q(2)}};
    try {
      lp_feasible(p);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
  }
}
