#include "forge/angles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "forge/numeric.hpp"

namespace forge {

namespace {

constexpr double kZeroAngleCutover = 1e-7;

double clamp_cos(double c) { return std::clamp(c, 0.0, 1.0); }

// Completes orthonormal columns to a full orthonormal basis; the leading
// columns are kept verbatim.
Matrix complete_orthonormal(const Matrix& s) {
  const Eigen::Index n = s.rows();
  const Eigen::Index p = s.cols();
  if (p == n) return s;
  Eigen::HouseholderQR<Matrix> qr(s);
  const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  Matrix full(n, n);
  full.leftCols(p) = s;
  full.rightCols(n - p) = q.rightCols(n - p);
  return full;
}

AngleProfile profile_from_svd(const ComplexMatrix& basis_p,
                              const ComplexMatrix& basis_q) {
  const ComplexMatrix cross = basis_p.adjoint() * basis_q;
  Eigen::JacobiSVD<ComplexMatrix> svd(
      cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const int k = static_cast<int>(cross.rows());
  AngleProfile profile;
  profile.angles = Vector(k);
  for (int i = 0; i < k; ++i) {
    profile.angles(i) = std::acos(clamp_cos(svd.singularValues()(i)));
  }
  profile.basis_first = basis_p * svd.matrixU();
  profile.basis_second = basis_q * svd.matrixV();
  return profile;
}

}  // namespace

RealSubspace::RealSubspace(Matrix orthonormal_basis)
    : basis_(std::move(orthonormal_basis)) {
  if (basis_.cols() < 1 || basis_.cols() > basis_.rows()) {
    throw InvariantViolationError("RealSubspace: need 1 <= k <= n");
  }
  const double residual =
      (basis_.transpose() * basis_ - Matrix::Identity(basis_.cols(), basis_.cols()))
          .norm();
  if (!all_finite(basis_) || residual >= 1e-10) {
    throw InvariantViolationError("RealSubspace: basis is not orthonormal");
  }
}

RealSubspace RealSubspace::from_span(const Matrix& columns) {
  return RealSubspace(orthonormalize(columns));
}

ComplexSubspace::ComplexSubspace(ComplexMatrix orthonormal_basis)
    : basis_(std::move(orthonormal_basis)) {
  if (basis_.cols() < 1 || basis_.cols() > basis_.rows()) {
    throw InvariantViolationError("ComplexSubspace: need 1 <= k <= n");
  }
  const double residual =
      (basis_.adjoint() * basis_ -
       ComplexMatrix::Identity(basis_.cols(), basis_.cols()))
          .norm();
  if (!all_finite(basis_) || residual >= 1e-10) {
    throw InvariantViolationError("ComplexSubspace: basis is not orthonormal");
  }
}

ComplexSubspace ComplexSubspace::from_span(const ComplexMatrix& columns) {
  return ComplexSubspace(orthonormalize(columns));
}

ComplexSubspace ComplexSubspace::conjugate() const {
  return ComplexSubspace(basis_.conjugate());
}

void AngleProfile::validate(double tol) const {
  const int kk = k();
  for (int i = 0; i < kk; ++i) {
    if (angles(i) < -tol || angles(i) > M_PI_2 + tol) {
      throw InvariantViolationError("AngleProfile: angle out of [0, pi/2]");
    }
    if (i > 0 && angles(i) < angles(i - 1) - tol) {
      throw InvariantViolationError("AngleProfile: angles are not sorted");
    }
  }
  const ComplexMatrix cross = basis_first.adjoint() * basis_second;
  for (int r = 0; r < kk; ++r) {
    for (int s = 0; s < kk; ++s) {
      if (r != s && std::abs(cross(r, s)) >= tol) {
        throw InvariantViolationError(
            "AngleProfile: paired bases are not cross-orthogonal");
      }
    }
    const Complex d = cross(r, r);
    if (std::abs(d.imag()) >= tol ||
        std::abs(d.real() - std::cos(angles(r))) >= 10 * tol) {
      throw InvariantViolationError(
          "AngleProfile: diagonal pairing does not realize the angles");
    }
  }
}

AngleProfile principal_angles_real(const RealSubspace& P, const RealSubspace& Q) {
  if (P.ambient_dim() != Q.ambient_dim() || P.k() != Q.k()) {
    throw DimensionMismatchError(
        "principal_angles_real: ambient dimensions and k must agree");
  }
  return profile_from_svd(P.basis().cast<Complex>(), Q.basis().cast<Complex>());
}

AngleProfile principal_angles_complex(const ComplexSubspace& P,
                                      const ComplexSubspace& Q) {
  if (P.ambient_dim() != Q.ambient_dim() || P.k() != Q.k()) {
    throw DimensionMismatchError(
        "principal_angles_complex: ambient dimensions and k must agree");
  }
  return profile_from_svd(P.basis(), Q.basis());
}

AngleProfile principal_angles_conjugate(const ComplexSubspace& P, double tol) {
  const int k = P.k();
  const int n = P.ambient_dim();
  if (2 * k > n) {
    throw NotTransverseError(
        "principal_angles_conjugate: 2k exceeds the ambient dimension");
  }
  ComplexMatrix stacked(n, 2 * k);
  stacked << P.basis(), P.basis().conjugate();
  if (min_singular_value(stacked) <= tol) {
    throw NotTransverseError(
        "principal_angles_conjugate: P meets its conjugate");
  }

  // C = B^H conj(B) is complex symmetric; its Takagi factorization
  // C = U diag(sigma) U^T delivers bases with partner exactly conj(v_i)
  // and a real nonnegative coincidence pairing. We compute it through the
  // real symmetric embedding of the antilinear map v -> C conj(v).
  const ComplexMatrix c = P.basis().adjoint() * P.basis().conjugate();
  Matrix embedded(2 * k, 2 * k);
  embedded.topLeftCorner(k, k) = c.real();
  embedded.topRightCorner(k, k) = c.imag();
  embedded.bottomLeftCorner(k, k) = c.imag();
  embedded.bottomRightCorner(k, k) = -c.real();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(embedded);

  // Eigenvalues come in +/- sigma pairs (v and iv); walk them from the
  // largest down and keep a Hermitian-orthonormal selection of k vectors.
  ComplexMatrix takagi(k, k);
  Vector sigma(k);
  int taken = 0;
  for (int j = 2 * k - 1; j >= 0 && taken < k; --j) {
    ComplexVector v(k);
    v.real() = eig.eigenvectors().col(j).head(k);
    v.imag() = eig.eigenvectors().col(j).tail(k);
    for (int t = 0; t < taken; ++t) {
      v -= takagi.col(t) * (takagi.col(t).adjoint() * v)(0);
    }
    const double nv = v.norm();
    if (nv < 0.5) continue;  // complex-span duplicate inside a zero block
    takagi.col(taken) = v / nv;
    sigma(taken) = std::max(eig.eigenvalues()(j), 0.0);
    ++taken;
  }
  if (taken != k) {
    throw IllConditionedError(
        "principal_angles_conjugate: Takagi selection failed");
  }

  AngleProfile profile;
  profile.angles = Vector(k);
  for (int i = 0; i < k; ++i) profile.angles(i) = std::acos(clamp_cos(sigma(i)));
  profile.basis_first = P.basis() * takagi;
  profile.basis_second = profile.basis_first.conjugate();
  return profile;
}

Matrix aligning_isometry_real(const RealSubspace& P, const RealSubspace& Q,
                              const RealSubspace& P2, const RealSubspace& Q2,
                              double tol) {
  if (P.ambient_dim() != P2.ambient_dim() || P.k() != P2.k()) {
    throw DimensionMismatchError(
        "aligning_isometry_real: the two pairs live in different settings");
  }
  const AngleProfile a = principal_angles_real(P, Q);
  const AngleProfile b = principal_angles_real(P2, Q2);
  if ((a.angles - b.angles).cwiseAbs().maxCoeff() > tol) {
    throw MismatchError("aligning_isometry_real: principal angles differ");
  }

  const int n = P.ambient_dim();
  const int k = P.k();
  const Matrix v1 = a.basis_first.real();
  const Matrix w1 = a.basis_second.real();
  const Matrix v2 = b.basis_first.real();
  const Matrix w2 = b.basis_second.real();

  std::vector<int> opened;  // indices whose w-direction is independent of v
  for (int i = 0; i < k; ++i) {
    if (0.5 * (a.angles(i) + b.angles(i)) > kZeroAngleCutover) opened.push_back(i);
  }
  Matrix s1(n, k + static_cast<int>(opened.size()));
  Matrix s2(n, k + static_cast<int>(opened.size()));
  s1.leftCols(k) = v1;
  s2.leftCols(k) = v2;
  int col = k;
  for (int i : opened) {
    const Vector r1 = w1.col(i) - v1.col(i) * v1.col(i).dot(w1.col(i));
    const Vector r2 = w2.col(i) - v2.col(i) * v2.col(i).dot(w2.col(i));
    s1.col(col) = r1 / r1.norm();
    s2.col(col) = r2 / r2.norm();
    ++col;
  }
  const Matrix f1 = complete_orthonormal(s1);
  const Matrix f2 = complete_orthonormal(s2);
  return f2 * f1.transpose();
}

RealLinearMap aligning_isometry_conjugate(const ComplexSubspace& P,
                                          const ComplexSubspace& Q, double tol) {
  if (P.ambient_dim() != Q.ambient_dim() || P.k() != Q.k()) {
    throw DimensionMismatchError(
        "aligning_isometry_conjugate: subspaces live in different settings");
  }
  const AngleProfile a = principal_angles_conjugate(P);
  const AngleProfile b = principal_angles_conjugate(Q);
  if ((a.angles - b.angles).cwiseAbs().maxCoeff() > tol) {
    throw MismatchError("aligning_isometry_conjugate: principal angles differ");
  }
  const ConjugatePairFrames fp = conjugate_pair_frames(a);
  const ConjugatePairFrames fq = conjugate_pair_frames(b);

  const int n = P.ambient_dim();
  const int k = P.k();
  Matrix s1(n, 2 * k);
  Matrix s2(n, 2 * k);
  for (int i = 0; i < k; ++i) {
    s1.col(2 * i) = fp.real_lines[static_cast<size_t>(i)];
    s1.col(2 * i + 1) = fp.imag_lines[static_cast<size_t>(i)];
    s2.col(2 * i) = fq.real_lines[static_cast<size_t>(i)];
    s2.col(2 * i + 1) = fq.imag_lines[static_cast<size_t>(i)];
  }
  const Matrix f1 = complete_orthonormal(s1);
  const Matrix f2 = complete_orthonormal(s2);
  return RealLinearMap(f2 * f1.transpose());
}

ConjugatePairFrames conjugate_pair_frames(const AngleProfile& profile,
                                          double degenerate_tol) {
  ConjugatePairFrames frames;
  const int k = profile.k();
  frames.real_lines.reserve(static_cast<size_t>(k));
  frames.imag_lines.reserve(static_cast<size_t>(k));
  frames.betas.reserve(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    const Vector re = profile.basis_first.col(i).real();
    const Vector im = profile.basis_first.col(i).imag();
    const double nr = re.norm();
    const double ni = im.norm();
    if (nr < degenerate_tol || ni < degenerate_tol) {
      throw DegenerateSplitError(
          "conjugate_pair_frames: a real or imaginary part collapsed");
    }
    frames.real_lines.push_back(re / nr);
    frames.imag_lines.push_back(im / ni);
    frames.betas.push_back(std::atan2(ni, nr));
  }
  return frames;
}

}  // namespace forge
