#include "convolab/fourier.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <cmath>
#include <numbers>
#include <numeric>

#include "convolab/config.hpp"
#include "convolab/error.hpp"

namespace convolab {

std::string_view to_string(FourierVerdict v) {
  switch (v) {
    case FourierVerdict::REGULAR_WITH_WITNESS: return "REGULAR_WITH_WITNESS";
    case FourierVerdict::NOT_REGULAR_CERTIFIED: return "NOT_REGULAR_CERTIFIED";
    case FourierVerdict::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "?";
}

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// exp(2 pi i num/den), exact at quarter turns.
Complex root_of_unity(std::size_t num, std::size_t den) {
  num %= den;
  if ((4 * num) % den == 0) {
    static const Complex quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return quarter[4 * num / den];
  }
  return std::polar(1.0, kTwoPi * static_cast<double>(num) / static_cast<double>(den));
}

ComplexMatrix scalar(Complex c) {
  ComplexMatrix m(1, 1);
  m(0, 0) = c;
  return m;
}

std::vector<Irrep> cyclic_irreps(std::size_t n) {
  std::vector<Irrep> out;
  for (std::size_t k = 0; k < n; ++k) {
    Irrep r{"chi" + std::to_string(k), 1, {}};
    for (std::size_t j = 0; j < n; ++j) {
      r.images.push_back(scalar(root_of_unity(k * j, n)));
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Irrep> elementary_abelian_irreps(std::size_t k) {
  const std::size_t n = std::size_t{1} << k;
  std::vector<Irrep> out;
  for (std::size_t s = 0; s < n; ++s) {
    Irrep r{"chi" + std::to_string(s), 1, {}};
    for (std::size_t x = 0; x < n; ++x) {
      r.images.push_back(scalar(std::popcount(s & x) % 2 ? -1.0 : 1.0));
    }
    out.push_back(std::move(r));
  }
  return out;
}

// Element r^i s^j has index i + n*j.
std::vector<Irrep> dihedral_irreps(std::size_t n) {
  auto one_dim = [n](std::string label, double r_val, double s_val) {
    Irrep r{std::move(label), 1, {}};
    for (std::size_t x = 0; x < 2 * n; ++x) {
      const double v = std::pow(r_val, static_cast<double>(x % n)) * (x / n ? s_val : 1.0);
      r.images.push_back(scalar(v));
    }
    return r;
  };
  std::vector<Irrep> out;
  out.push_back(one_dim("trivial", 1, 1));
  out.push_back(one_dim("sign_s", 1, -1));
  if (n % 2 == 0) {
    out.push_back(one_dim("sign_r", -1, 1));
    out.push_back(one_dim("sign_rs", -1, -1));
  }
  for (std::size_t k = 1; 2 * k < n; ++k) {
    Irrep r{"rho" + std::to_string(k), 2, {}};
    ComplexMatrix refl(2, 2);
    refl << 1, 0, 0, -1;
    for (std::size_t x = 0; x < 2 * n; ++x) {
      const Complex z = root_of_unity(k * (x % n), n);
      ComplexMatrix rot(2, 2);
      rot << z.real(), -z.imag(), z.imag(), z.real();
      r.images.push_back(x / n ? ComplexMatrix(rot * refl) : rot);
    }
    out.push_back(std::move(r));
  }
  return out;
}

// Order: 1, -1, i, -i, j, -j, k, -k.
std::vector<Irrep> quaternion_irreps() {
  std::vector<Irrep> out;
  for (int a : {1, -1}) {
    for (int b : {1, -1}) {
      Irrep r{std::string("chi") + (a > 0 ? "+" : "-") + (b > 0 ? "+" : "-"), 1, {}};
      const double vals[4] = {1.0, double(a), double(b), double(a * b)};
      for (std::size_t x = 0; x < 8; ++x) r.images.push_back(scalar(vals[x / 2]));
      out.push_back(std::move(r));
    }
  }
  const Complex I(0, 1);
  ComplexMatrix basis[4] = {ComplexMatrix::Identity(2, 2), ComplexMatrix(2, 2), ComplexMatrix(2, 2),
                            ComplexMatrix(2, 2)};
  basis[1] << I, 0, 0, -I;
  basis[2] << 0, 1, -1, 0;
  basis[3] = basis[1] * basis[2];
  Irrep r{"quaternion", 2, {}};
  for (std::size_t x = 0; x < 8; ++x) {
    r.images.push_back(x % 2 ? ComplexMatrix(-basis[x / 2]) : basis[x / 2]);
  }
  out.push_back(std::move(r));
  return out;
}

std::vector<std::vector<std::size_t>> permutations_lex(std::size_t n) {
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return perms;
}

int permutation_sign(const std::vector<std::size_t>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] > p[j]) s = -s;
    }
  }
  return s;
}

// Restriction of the permutation representation to the sum-zero subspace, in the
// orthonormal Helmert basis.
ComplexMatrix standard_image(const std::vector<std::size_t>& p) {
  const std::size_t n = p.size();
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n, n - 1);
  for (std::size_t k = 1; k < n; ++k) {
    const double norm = std::sqrt(static_cast<double>(k * (k + 1)));
    for (std::size_t i = 0; i < k; ++i) basis(i, k - 1) = 1.0 / norm;
    basis(k, k - 1) = -static_cast<double>(k) / norm;
  }
  Eigen::MatrixXd perm = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t x = 0; x < n; ++x) perm(p[x], x) = 1.0;
  return (basis.transpose() * perm * basis).cast<Complex>();
}

// S4 acts on its three pair partitions {01|23}, {02|13}, {03|12}.
std::vector<std::size_t> s4_to_s3(const std::vector<std::size_t>& p) {
  static const std::size_t pairs[3][2] = {{0, 1}, {0, 2}, {0, 3}};
  auto partition_of = [](std::size_t a, std::size_t b) -> std::size_t {
    // the partition is determined by whichever point is paired with 0
    if (a == 0 || b == 0) return (a == 0 ? b : a) - 1;
    const std::size_t other = 6 - a - b;  // the remaining pair contains 0
    return other - 1;
  };
  std::vector<std::size_t> tau(3);
  for (std::size_t q = 0; q < 3; ++q) tau[q] = partition_of(p[pairs[q][0]], p[pairs[q][1]]);
  return tau;
}

std::vector<Irrep> symmetric_irreps(std::size_t n) {
  if (n > 4) {
    throw Error(ErrorCode::UnsupportedGroup, "no stored dual for S" + std::to_string(n));
  }
  const auto perms = permutations_lex(n);
  std::vector<Irrep> out;
  Irrep triv{"trivial", 1, {}};
  Irrep sign{"sign", 1, {}};
  for (const auto& p : perms) {
    triv.images.push_back(scalar(1.0));
    sign.images.push_back(scalar(static_cast<double>(permutation_sign(p))));
  }
  out.push_back(std::move(triv));
  if (n >= 2) out.push_back(std::move(sign));
  if (n >= 3) {
    Irrep stdrep{"standard", n - 1, {}};
    for (const auto& p : perms) stdrep.images.push_back(standard_image(p));
    if (n == 4) {
      Irrep twisted{"standard_x_sign", 3, {}};
      Irrep quotient{"via_S3", 2, {}};
      for (const auto& p : perms) {
        twisted.images.push_back(standard_image(p) * static_cast<double>(permutation_sign(p)));
        quotient.images.push_back(standard_image(s4_to_s3(p)));
      }
      out.push_back(std::move(quotient));
      out.push_back(std::move(stdrep));
      out.push_back(std::move(twisted));
    } else {
      out.push_back(std::move(stdrep));
    }
  }
  return out;
}

std::vector<Irrep> irreps_for(const GroupSpec& spec);

ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Irreps of a direct product are the tensor products of factor irreps; element
// (i, j) has index i*|H| + j, matching the group construction.
std::vector<Irrep> product_irreps(const std::vector<GroupSpec>& factors) {
  std::vector<Irrep> acc{Irrep{"", 1, {scalar(1.0)}}};
  for (const auto& f : factors) {
    const auto next_factor = irreps_for(f);
    std::vector<Irrep> next;
    for (const auto& a : acc) {
      for (const auto& b : next_factor) {
        Irrep r{a.label.empty() ? b.label : a.label + "(x)" + b.label, a.dim * b.dim, {}};
        for (const auto& ia : a.images) {
          for (const auto& ib : b.images) r.images.push_back(kronecker(ia, ib));
        }
        next.push_back(std::move(r));
      }
    }
    acc = std::move(next);
  }
  if (factors.empty()) acc.front().label = "trivial";
  return acc;
}

std::vector<Irrep> irreps_for(const GroupSpec& spec) {
  switch (spec.kind) {
    case GroupKind::Cyclic: return cyclic_irreps(spec.n);
    case GroupKind::ElementaryAbelian2: return elementary_abelian_irreps(spec.k);
    case GroupKind::Dihedral: return dihedral_irreps(spec.n);
    case GroupKind::Quaternion8: return quaternion_irreps();
    case GroupKind::Symmetric: return symmetric_irreps(spec.n);
    case GroupKind::Product: return product_irreps(spec.factors);
    case GroupKind::Table: break;
  }
  throw Error(ErrorCode::UnsupportedGroup, "no stored dual for raw Cayley tables");
}

double max_abs(const ComplexMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double relative(double residual, double scale) { return scale > 0 ? residual / scale : residual; }

}  // namespace

DualDiagnostics diagnose_dual(const UnitaryDual& dual) {
  const FiniteGroup& g = *dual.group;
  const std::size_t n = g.order();
  DualDiagnostics d;
  for (const auto& r : dual.irreps) {
    d.dimension_sum += r.dim * r.dim;
    double norm = 0;
    for (Element a = 0; a < n; ++a) {
      const ComplexMatrix& pa = r.images[a];
      d.unitarity = std::max(
          d.unitarity,
          max_abs(pa * pa.adjoint() - ComplexMatrix::Identity(pa.rows(), pa.cols())));
      for (Element b = 0; b < n; ++b) {
        d.homomorphism = std::max(d.homomorphism, max_abs(pa * r.images[b] - r.images[g.mul(a, b)]));
      }
      norm += std::norm(r.character(a));
    }
    d.character_norm = std::max(d.character_norm, std::abs(norm - static_cast<double>(n)));
  }
  for (std::size_t i = 0; i < dual.irreps.size(); ++i) {
    for (std::size_t j = i + 1; j < dual.irreps.size(); ++j) {
      Complex inner = 0;
      for (Element a = 0; a < n; ++a) {
        inner += dual.irreps[i].character(a) * std::conj(dual.irreps[j].character(a));
      }
      d.orthogonality = std::max(d.orthogonality, std::abs(inner) / static_cast<double>(n));
    }
  }
  return d;
}

DualPtr unitary_dual(const GroupPtr& group) {
  auto dual = std::make_shared<UnitaryDual>();
  dual->group = group;
  dual->irreps = irreps_for(group->spec());
  const Tolerances& tol = config().tolerances;
  const DualDiagnostics d = diagnose_dual(*dual);
  if (d.dimension_sum != group->order() || d.homomorphism > tol.representation ||
      d.unitarity > tol.representation || d.character_norm > tol.character_norm ||
      d.orthogonality > tol.character_norm) {
    throw std::logic_error("constructed dual of " + group->label() + " fails validation");
  }
  return dual;
}

CompatibleFunction::CompatibleFunction(DualPtr dual, std::vector<ComplexMatrix> blocks)
    : dual_(std::move(dual)), blocks_(std::move(blocks)) {
  if (blocks_.size() != dual_->irreps.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one block per irrep required");
  }
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const auto d = static_cast<Eigen::Index>(dual_->irreps[i].dim);
    if (blocks_[i].rows() != d || blocks_[i].cols() != d) {
      throw Error(ErrorCode::DimensionMismatch,
                  "block " + std::to_string(i) + " must be " + std::to_string(d) + "x" +
                      std::to_string(d));
    }
  }
}

CompatibleFunction operator*(const CompatibleFunction& a, const CompatibleFunction& b) {
  if (a.dual_ != b.dual_ && a.dual_->irreps.size() != b.dual_->irreps.size()) {
    throw Error(ErrorCode::GroupMismatch, "compatible functions on different duals");
  }
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] * b[i]);
  return CompatibleFunction(a.dual_, std::move(out));
}

CompatibleFunction fourier_transform(const DualPtr& dual, const std::vector<double>& weights) {
  const FiniteGroup& g = *dual->group;
  if (weights.size() != g.order()) throw Error(ErrorCode::DimensionMismatch, "weight vector length");
  std::vector<ComplexMatrix> blocks;
  for (const auto& r : dual->irreps) {
    ComplexMatrix acc = ComplexMatrix::Zero(r.dim, r.dim);
    for (Element a = 0; a < g.order(); ++a) {
      if (weights[a] != 0.0) acc += weights[a] * r.images[g.inverse(a)];
    }
    blocks.push_back(std::move(acc));
  }
  return CompatibleFunction(dual, std::move(blocks));
}

CompatibleFunction fourier_transform(const DualPtr& dual, const ProbMeasure& mu) {
  if (!same_group(*dual->group, mu.g())) {
    throw Error(ErrorCode::GroupMismatch, "measure and dual on different groups");
  }
  std::vector<double> w;
  for (const auto& q : mu.weights()) w.push_back(q.get_d());
  return fourier_transform(dual, w);
}

std::vector<Complex> inverse_fourier(const CompatibleFunction& gamma) {
  const UnitaryDual& dual = *gamma.dual();
  const FiniteGroup& g = *dual.group;
  std::vector<Complex> f(g.order(), Complex(0));
  for (Element a = 0; a < g.order(); ++a) {
    for (std::size_t i = 0; i < dual.irreps.size(); ++i) {
      const auto& r = dual.irreps[i];
      f[a] += static_cast<double>(r.dim) * (r.images[a] * gamma[i]).trace();
    }
    f[a] /= static_cast<double>(g.order());
  }
  return f;
}

ComplexMatrix pseudo_inverse(const ComplexMatrix& a, double rel_tol, double abs_cutoff) {
  if (a.size() == 0) return ComplexMatrix(a.cols(), a.rows());
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cutoff = std::max(rel_tol * (s.size() ? s(0) : 0.0), abs_cutoff);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff && s(i) > 0) inv(i) = 1.0 / s(i);
  }
  const Eigen::Index k = s.size();
  return svd.matrixV().leftCols(k) * inv.asDiagonal() * svd.matrixU().leftCols(k).adjoint();
}

double penrose_residual(const ComplexMatrix& a, const ComplexMatrix& x) {
  const ComplexMatrix ax = a * x;
  const ComplexMatrix xa = x * a;
  double r = relative((ax * a - a).norm(), a.norm());
  r = std::max(r, relative((xa * x - x).norm(), x.norm()));
  r = std::max(r, relative((ax.adjoint() - ax).norm(), ax.norm()));
  r = std::max(r, relative((xa.adjoint() - xa).norm(), xa.norm()));
  return r;
}

CompatibleFunction pseudo_inverse_blockwise(const CompatibleFunction& gamma) {
  const double tol = config().tolerances.pseudo_inverse;
  std::vector<ComplexMatrix> out;
  for (const auto& b : gamma.blocks()) out.push_back(pseudo_inverse(b, tol));
  return CompatibleFunction(gamma.dual(), std::move(out));
}

bool check_delta_regularity(const CompatibleFunction& gamma, const CompatibleFunction& candidate) {
  const double tol = config().tolerances.pseudo_inverse;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    const double residual = (gamma[i] * candidate[i] * gamma[i] - gamma[i]).norm();
    if (relative(residual, gamma[i].norm()) > tol) return false;
  }
  return true;
}

bool check_delta_regularity(const CompatibleFunction& gamma) {
  return check_delta_regularity(gamma, pseudo_inverse_blockwise(gamma));
}

FourierCandidate fourier_ginverse_candidate(const ProbMeasure& mu) {
  const Tolerances& tol = config().tolerances;
  const DualPtr dual = unitary_dual(mu.group());
  const CompatibleFunction gamma = fourier_transform(dual, mu);
  // Transforms of probability measures have operator norm <= 1 in every block, so
  // singular values are also cut against that global scale.
  std::vector<ComplexMatrix> dagger_blocks;
  for (const auto& b : gamma.blocks()) {
    dagger_blocks.push_back(pseudo_inverse(b, tol.pseudo_inverse, tol.pseudo_inverse));
  }
  const CompatibleFunction dagger(dual, std::move(dagger_blocks));

  FourierCandidate out;
  out.inverse_transform = inverse_fourier(dagger);
  out.min_singular_value = std::numeric_limits<double>::infinity();
  for (const auto& b : gamma.blocks()) {
    Eigen::JacobiSVD<ComplexMatrix> svd(b);
    out.min_singular_value = std::min(out.min_singular_value, svd.singularValues().minCoeff());
  }

  double max_imag = 0, min_real = std::numeric_limits<double>::infinity(), total = 0;
  for (const auto& v : out.inverse_transform) {
    max_imag = std::max(max_imag, std::abs(v.imag()));
    min_real = std::min(min_real, v.real());
    total += v.real();
  }
  const bool positive = max_imag <= tol.positivity && min_real >= -tol.positivity &&
                        std::abs(total - 1.0) <= tol.positivity;

  if (positive) {
    std::vector<Rational> w;
    for (const auto& v : out.inverse_transform) {
      w.push_back(v.real() <= 0 ? Rational(0) : rationalize(v.real(), tol.rationalize_max_den));
    }
    Rational sum = 0;
    for (const auto& q : w) sum += q;
    if (sum != 1) {
      throw Error(ErrorCode::RationalizationFailed,
                  "rounded candidate has mass " + format_rational(sum));
    }
    ProbMeasure x(mu.group(), std::move(w));
    if (!is_generalized_inverse(mu, x)) {
      throw Error(ErrorCode::RationalizationFailed, "rounded candidate fails mu*x*mu = mu");
    }
    out.verdict = FourierVerdict::REGULAR_WITH_WITNESS;
    out.candidate = std::move(x);
    out.detail = "inverse transform of the pseudoinverse is a probability measure";
  } else if (out.min_singular_value > tol.invertibility) {
    out.verdict = FourierVerdict::NOT_REGULAR_CERTIFIED;
    out.detail = "all blocks invertible; the unique solution has min weight " +
                 std::to_string(min_real);
  } else {
    out.verdict = FourierVerdict::INCONCLUSIVE;
    out.detail = "singular block and non-positive pseudoinverse transform";
  }
  return out;
}

std::optional<RegularityVerdict> verdict_from_fourier(const ProbMeasure& mu,
                                                      const FourierCandidate& c) {
  switch (c.verdict) {
    case FourierVerdict::REGULAR_WITH_WITNESS:
      return RegularityVerdict::regular(mu, *c.candidate, VerdictMethod::FOURIER_UNIQUE, c.detail);
    case FourierVerdict::NOT_REGULAR_CERTIFIED:
      return RegularityVerdict::not_regular(VerdictMethod::FOURIER_UNIQUE, c.detail);
    case FourierVerdict::INCONCLUSIVE: break;
  }
  return std::nullopt;
}

}  // namespace convolab
