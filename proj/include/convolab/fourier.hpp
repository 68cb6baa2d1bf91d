#pragma once

#include <Eigen/Dense>

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "convolab/measures.hpp"
#include "convolab/regularity.hpp"

namespace convolab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Unitary irreducible representation given by its image of every element.
struct Irrep {
  std::string label;
  std::size_t dim = 1;
  std::vector<ComplexMatrix> images;  // images[g] = pi(g)

  Complex character(Element g) const { return images[g].trace(); }
};

struct UnitaryDual {
  GroupPtr group;
  std::vector<Irrep> irreps;
};

using DualPtr = std::shared_ptr<const UnitaryDual>;

/// Measured deviations from the representation-theoretic identities.
struct DualDiagnostics {
  double homomorphism = 0;    // max |pi(g)pi(h) - pi(gh)| entry
  double unitarity = 0;       // max |pi(g)pi(g)* - I| entry
  double character_norm = 0;  // max | sum_g |chi(g)|^2 - |G| |
  double orthogonality = 0;   // max |<chi_a, chi_b>| / |G| over a != b
  std::size_t dimension_sum = 0;  // sum of dim^2
};

DualDiagnostics diagnose_dual(const UnitaryDual& dual);

/// Constructs the dual of a built-in group (cyclic, elementary abelian,
/// dihedral, Q8, S3, S4, and direct products of these).
/// Throws Error(UnsupportedGroup) for raw tables and larger symmetric groups.
DualPtr unitary_dual(const GroupPtr& group);

/// One d_pi x d_pi block per irrep of a dual.
class CompatibleFunction {
 public:
  /// Throws Error(DimensionMismatch) unless each block matches its irrep's dimension.
  CompatibleFunction(DualPtr dual, std::vector<ComplexMatrix> blocks);

  const DualPtr& dual() const { return dual_; }
  const std::vector<ComplexMatrix>& blocks() const { return blocks_; }
  const ComplexMatrix& operator[](std::size_t i) const { return blocks_[i]; }
  std::size_t size() const { return blocks_.size(); }

  /// Blockwise product, the semigroup operation on compatible functions.
  friend CompatibleFunction operator*(const CompatibleFunction& a, const CompatibleFunction& b);

 private:
  DualPtr dual_;
  std::vector<ComplexMatrix> blocks_;
};

/// mu^(pi) = sum_g mu(g) pi(g^-1).
CompatibleFunction fourier_transform(const DualPtr& dual, const ProbMeasure& mu);

/// Same transform applied to an arbitrary real weight vector.
CompatibleFunction fourier_transform(const DualPtr& dual, const std::vector<double>& weights);

/// f(g) = (1/|G|) sum_pi d_pi tr(pi(g) gamma(pi)).
std::vector<Complex> inverse_fourier(const CompatibleFunction& gamma);

/// Moore-Penrose pseudoinverse via SVD. Singular values below
/// max(rel_tol * sigma_max, abs_cutoff) are treated as zero.
ComplexMatrix pseudo_inverse(const ComplexMatrix& a, double rel_tol, double abs_cutoff = 0.0);

/// Largest relative Frobenius residual of the four Penrose identities.
double penrose_residual(const ComplexMatrix& a, const ComplexMatrix& x);

CompatibleFunction pseudo_inverse_blockwise(const CompatibleFunction& gamma);

/// gamma * candidate * gamma == gamma within the pseudoinverse tolerance, per block.
bool check_delta_regularity(const CompatibleFunction& gamma, const CompatibleFunction& candidate);
bool check_delta_regularity(const CompatibleFunction& gamma);

enum class FourierVerdict { REGULAR_WITH_WITNESS, NOT_REGULAR_CERTIFIED, INCONCLUSIVE };

std::string_view to_string(FourierVerdict v);

struct FourierCandidate {
  FourierVerdict verdict = FourierVerdict::INCONCLUSIVE;
  std::optional<ProbMeasure> candidate;  // exactly re-verified generalized inverse
  std::vector<Complex> inverse_transform;  // inverse transform of the pseudoinverse
  double min_singular_value = 0;
  std::string detail;
};

/// Proposes a generalized inverse from the blockwise pseudoinverse. A positive
/// proposal is rationalized and re-verified exactly; a non-positive proposal
/// with every block well-conditioned certifies non-regularity.
/// Throws Error(UnsupportedGroup) or Error(RationalizationFailed).
FourierCandidate fourier_ginverse_candidate(const ProbMeasure& mu);

/// Translates a conclusive Fourier result into a verdict; nullopt if inconclusive.
std::optional<RegularityVerdict> verdict_from_fourier(const ProbMeasure& mu,
                                                      const FourierCandidate& c);

}  // namespace convolab
