#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "convolab/rational.hpp"

namespace convolab {

using RationalVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalMatrix transpose() const;
  bool is_symmetric() const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalVector operator*(const RationalMatrix& a, const RationalVector& x);
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination on the cleared
/// integer matrix. Throws Error(DimensionMismatch) for non-square input.
Rational determinant(const RationalMatrix& m);

std::size_t rank(const RationalMatrix& m);

/// Affine solution set {particular + span(nullspace)} of m x = rhs, or nullopt
/// when the system is inconsistent.
struct AffineSolution {
  RationalVector particular;
  std::vector<RationalVector> nullspace;
};
std::optional<AffineSolution> solve_affine(const RationalMatrix& m, const RationalVector& rhs);

}  // namespace convolab
