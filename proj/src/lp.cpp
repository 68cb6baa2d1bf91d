#include "convolab/lp.hpp"

#include "convolab/error.hpp"

namespace convolab {

std::optional<RationalVector> lp_feasible(const LPProblem& problem, LPStats* stats) {
  const RationalMatrix& a = problem.constraints;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (problem.rhs.size() != m) {
    throw Error(ErrorCode::DimensionMismatch, "rhs has " + std::to_string(problem.rhs.size()) +
                                                  " entries for " + std::to_string(m) + " rows");
  }
  if (n == 0) {
    for (const auto& b : problem.rhs) {
      if (sgn(b) != 0) return std::nullopt;
    }
    return RationalVector{};
  }

  // Columns 0..n-1 original, n..n+m-1 artificial, n+m is the right-hand side.
  const std::size_t width = n + m + 1;
  const std::size_t rhs_col = n + m;
  std::vector<RationalVector> t(m, RationalVector(width, Rational(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const int s = sgn(problem.rhs[i]) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = s * a(i, j);
    t[i][n + i] = 1;
    t[i][rhs_col] = s * problem.rhs[i];
    basis[i] = n + i;
  }
  // Reduced costs of "minimize sum of artificials"; cost[rhs_col] = -objective.
  RationalVector cost(width, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[j] -= t[i][j];
    cost[rhs_col] -= t[i][rhs_col];
  }

  std::size_t pivots = 0;
  for (;;) {
    // Bland: entering column is the lowest index with negative reduced cost.
    std::size_t enter = width;
    for (std::size_t j = 0; j < rhs_col; ++j) {
      if (sgn(cost[j]) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;

    // Ratio test; ties go to the lowest-index basic variable.
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(t[i][enter]) <= 0) continue;
      Rational ratio = t[i][rhs_col] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = std::move(ratio);
      }
    }
    // Phase-1 objective is bounded below by zero, so an entering column always has a
    // positive entry.
    if (leave == m) throw Error(ErrorCode::DimensionMismatch, "unbounded phase-1 direction");

    const Rational inv = 1 / t[leave][enter];
    for (auto& v : t[leave]) v *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || sgn(t[i][enter]) == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) {
        if (sgn(t[leave][j]) != 0) t[i][j] -= f * t[leave][j];
      }
    }
    if (sgn(cost[enter]) != 0) {
      const Rational f = cost[enter];
      for (std::size_t j = 0; j < width; ++j) {
        if (sgn(t[leave][j]) != 0) cost[j] -= f * t[leave][j];
      }
    }
    basis[leave] = enter;
    ++pivots;
  }

  if (stats) {
    stats->pivots = pivots;
    stats->phase1_optimum = -cost[rhs_col];
  }
  if (sgn(cost[rhs_col]) != 0) return std::nullopt;

  RationalVector x(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) x[basis[i]] = t[i][rhs_col];
  }
  return x;
}

}  // namespace convolab
