#pragma once

#include <vector>

#include "forge/types.hpp"

namespace forge {

/// A k-plane through the origin of R^n, stored as an orthonormal basis.
class RealSubspace {
 public:
  explicit RealSubspace(Matrix orthonormal_basis);
  /// Orthonormalizes an arbitrary spanning set first.
  static RealSubspace from_span(const Matrix& columns);

  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int k() const { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }

 private:
  Matrix basis_;
};

/// A complex k-plane through the origin of C^n with a Hermitian-orthonormal
/// basis.
class ComplexSubspace {
 public:
  explicit ComplexSubspace(ComplexMatrix orthonormal_basis);
  static ComplexSubspace from_span(const ComplexMatrix& columns);

  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int k() const { return static_cast<int>(basis_.cols()); }
  const ComplexMatrix& basis() const { return basis_; }
  ComplexSubspace conjugate() const;

 private:
  ComplexMatrix basis_;
};

/// Sorted principal angles with a pair of orthonormal bases realizing them:
/// the angle between basis_first.col(i) and basis_second.col(i) is
/// angles[i], and columns with different indices are orthogonal across the
/// two bases. Real-setting profiles store real vectors with zero imaginary
/// part.
struct AngleProfile {
  Vector angles;              // ascending, in [0, pi/2]
  ComplexMatrix basis_first;  // n x k
  ComplexMatrix basis_second; // n x k

  int k() const { return static_cast<int>(angles.size()); }
  void validate(double tol = 1e-8) const;
};

AngleProfile principal_angles_real(const RealSubspace& P, const RealSubspace& Q);

AngleProfile principal_angles_complex(const ComplexSubspace& P,
                                      const ComplexSubspace& Q);

/// Principal angles between P and its entrywise conjugate, with the
/// coincidence normalization: basis_second is exactly the entrywise
/// conjugate of basis_first. Requires P transverse to conj(P); the first
/// angle is then strictly positive.
AngleProfile principal_angles_conjugate(const ComplexSubspace& P,
                                        double tol = 1e-9);

/// An element of O(n) taking P to P2 and Q to Q2; exists iff the two
/// profiles match within tol. Returned as a plain orthogonal matrix since
/// the ambient dimension here may be odd.
Matrix aligning_isometry_real(const RealSubspace& P, const RealSubspace& Q,
                              const RealSubspace& P2, const RealSubspace& Q2,
                              double tol = 1e-8);

/// An element of O(2n) (a unitary commuting with conjugation) taking P to
/// Q, for P, Q transverse to their conjugates with matching conjugate
/// profiles. When k < n the map is extended conjugation-equivariantly on
/// the orthogonal complement.
RealLinearMap aligning_isometry_conjugate(const ComplexSubspace& P,
                                          const ComplexSubspace& Q,
                                          double tol = 1e-8);

/// The scissors decomposition of a coincidence-normalized conjugate
/// profile: unit vectors v_i = cos(beta_i) r_i + i sin(beta_i) m_i with
/// r_i = Re v_i / |Re v_i| and m_i = Im v_i / |Im v_i|. The 2n real
/// vectors {r_i, m_i} are orthonormal and beta_i = theta_i / 2.
struct ConjugatePairFrames {
  std::vector<Vector> real_lines;  // r_i
  std::vector<Vector> imag_lines;  // m_i
  std::vector<double> betas;       // in (0, pi/4]
};

ConjugatePairFrames conjugate_pair_frames(const AngleProfile& profile,
                                          double degenerate_tol = 1e-10);

}  // namespace forge
