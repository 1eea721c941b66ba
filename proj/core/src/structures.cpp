#include "forge/structures.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "forge/sampling.hpp"

namespace forge {

namespace {

// Real part of i (2 Pi+ - I) for the oblique projector Pi+ onto
// span(basis_plus) along span(basis_minus); the imaginary part is pure
// roundoff and is bounded before being dropped.
Matrix realize_structure(const ConjugateSplit& split) {
  const int d = split.ambient_dim;
  const ComplexMatrix pi_plus = oblique_projector_plus(split);
  const ComplexMatrix jc =
      Complex(0.0, 1.0) * (2.0 * pi_plus - ComplexMatrix::Identity(d, d));
  const double imag_norm = jc.imag().norm();
  if (imag_norm >= 1e-8 * std::max(1.0, jc.norm())) {
    throw IllConditionedError(
        "make_complex_structure: imaginary part of the realified structure "
        "did not vanish");
  }
  return jc.real();
}

ConjugateSplit split_from_plus_basis(const ComplexMatrix& basis_plus) {
  ConjugateSplit split;
  split.ambient_dim = static_cast<int>(basis_plus.rows());
  split.basis_plus = basis_plus;
  split.basis_minus = basis_plus.conjugate();
  return split;
}

}  // namespace

ComplexStructure::ComplexStructure(RealLinearMap map, double tol)
    : map_(std::move(map)), orthogonal_(false) {
  const int d = map_.dim();
  const Matrix& j = map_.matrix();
  const double square_residual = (j * j + Matrix::Identity(d, d)).norm();
  if (square_residual >= 1e-8 * std::max(1.0, j.squaredNorm())) {
    throw InvariantViolationError("ComplexStructure: J^2 != -I");
  }
  orthogonal_ = (j.transpose() * j - Matrix::Identity(d, d)).norm() < tol;
}

ComplexStructure ComplexStructure::standard(int dim) {
  Matrix j = Matrix::Zero(dim, dim);
  for (int b = 0; b + 1 < dim; b += 2) {
    j(b, b + 1) = -1.0;
    j(b + 1, b) = 1.0;
  }
  return ComplexStructure(RealLinearMap(j));
}

ComplexStructure make_complex_structure(const RealLinearMap& T, double tol) {
  const ConjugateSplit split = eigen_split(T, tol);
  return ComplexStructure(RealLinearMap(realize_structure(split)));
}

RealLinearMap mckay_path(const RealLinearMap& T, double t, double tol) {
  if (t < 0.0 || t > 1.0) {
    throw std::invalid_argument("mckay_path: t must lie in [0,1]");
  }
  const ComplexStructure j = make_complex_structure(T, tol);
  return RealLinearMap((1.0 - t) * T.matrix() + t * j.matrix());
}

bool is_orthogonal_structure(const ComplexStructure& J, double tol) {
  const int d = J.dim();
  const Matrix& j = J.matrix();
  const double gram_residual =
      (j.transpose() * j - Matrix::Identity(d, d)).norm();
  // Cross-check with the lemma's characterization: v and Jv orthogonal for
  // all v, probed on a fixed deterministic sample.
  Rng rng(0x5ca1ab1e);
  double worst = 0.0;
  for (int s = 0; s < 64; ++s) {
    const Vector v = rng.unit_vector(d);
    worst = std::max(worst, std::abs(v.dot(j * v)));
  }
  return gram_residual < tol && worst < tol;
}

double split_orthogonality_defect(const ComplexStructure& J) {
  const ConjugateSplit split = eigen_split(J.map());
  Eigen::JacobiSVD<ComplexMatrix> svd(split.basis_plus.adjoint() *
                                      split.basis_minus);
  return svd.singularValues()(0);
}

ScissorsPath::ScissorsPath(const ComplexStructure& J)
    : ScissorsPath(J, principal_angles_conjugate(
                          ComplexSubspace(eigen_split(J.map()).basis_plus))) {}

ScissorsPath::ScissorsPath(const ComplexStructure& J, const AngleProfile& profile)
    : dim_(J.dim()), profile_(profile), frames_(conjugate_pair_frames(profile)) {
  if (2 * profile_.k() != dim_) {
    throw DimensionMismatchError("ScissorsPath: profile size does not match J");
  }
  // The scissor 2-planes must be mutually orthogonal before any rotation.
  const int k = profile_.k();
  for (int i = 0; i < k; ++i) {
    for (int l = 0; l < i; ++l) {
      const double worst = std::max(
          {std::abs(frames_.real_lines[i].dot(frames_.real_lines[l])),
           std::abs(frames_.real_lines[i].dot(frames_.imag_lines[l])),
           std::abs(frames_.imag_lines[i].dot(frames_.real_lines[l])),
           std::abs(frames_.imag_lines[i].dot(frames_.imag_lines[l]))});
      if (worst > 1e-7) {
        throw DegenerateSplitError(
            "ScissorsPath: scissor planes are not mutually orthogonal");
      }
    }
  }
}

ComplexStructure ScissorsPath::eval(double t) const {
  if (t < 0.0 || t > 1.0) {
    throw std::invalid_argument("open_scissors: t must lie in [0,1]");
  }
  const int k = profile_.k();
  ComplexMatrix basis(dim_, k);
  for (int i = 0; i < k; ++i) {
    const double beta = (1.0 - t) * frames_.betas[static_cast<size_t>(i)] +
                        t * (M_PI / 4.0);
    ComplexVector v(dim_);
    v.real() = std::cos(beta) * frames_.real_lines[static_cast<size_t>(i)];
    v.imag() = std::sin(beta) * frames_.imag_lines[static_cast<size_t>(i)];
    basis.col(i) = v;
  }
  return ComplexStructure(
      RealLinearMap(realize_structure(split_from_plus_basis(basis))));
}

ComplexStructure open_scissors(const ComplexStructure& J, double t) {
  return ScissorsPath(J).eval(t);
}

RetractionPath::RetractionPath(const RealLinearMap& T, double tol)
    : t_(T), j_(make_complex_structure(T, tol)), scissors_(j_) {}

RealLinearMap RetractionPath::eval(double t) const {
  if (t < 0.0 || t > 1.0) {
    throw std::invalid_argument("full_retraction: t must lie in [0,1]");
  }
  if (t <= kStructureReachedAt) {
    const double s = t / kStructureReachedAt;
    return RealLinearMap((1.0 - s) * t_.matrix() + s * j_.matrix());
  }
  const double s = (t - kStructureReachedAt) / (1.0 - kStructureReachedAt);
  return scissors_.eval(s).map();
}

double RetractionPath::junction_residual() const {
  return (scissors_.eval(0.0).matrix() - j_.matrix()).norm();
}

RealLinearMap full_retraction(const RealLinearMap& T, double t, double tol) {
  return RetractionPath(T, tol).eval(t);
}

}  // namespace forge
