#pragma once

#include <utility>

#include "forge/types.hpp"

namespace forge {

/// The conjugate pair of invariant subspaces V_C^+ / V_C^- of a real map
/// with no real eigenvalues: basis_plus spans the sum of generalized
/// eigenspaces over eigenvalues with positive imaginary part, basis_minus
/// is its entrywise conjugate.
struct ConjugateSplit {
  int ambient_dim = 0;            // 2n
  ComplexMatrix basis_plus;       // 2n x n, orthonormal columns
  ComplexMatrix basis_minus;      // entrywise conjugate of basis_plus

  /// Throws InvariantViolationError if orthonormality, conjugacy or joint
  /// independence fail at the documented tolerances.
  void validate() const;
};

/// True iff some eigenvalue of T lies within tol of the real axis.
bool has_real_eigenvalue(const RealLinearMap& T, double tol = defaults::kRealEigTol);

/// Splits C^{2n} into the sums of generalized eigenspaces over the upper
/// and lower half planes, via a reordered complex Schur form. Handles
/// repeated eigenvalues and Jordan blocks without diagonalizability
/// assumptions.
ConjugateSplit eigen_split(const RealLinearMap& T, double tol = defaults::kRealEigTol);

/// The spectral projectors (Pi+, Pi-) onto V_C^+/V_C^- computed through
/// the Bezout identity a+(T)p+(T) + a-(T)p-(T) = I for the two
/// characteristic-polynomial factors. Independent of eigen_split's
/// Schur-vector route, so the two serve as cross-checks.
std::pair<ComplexMatrix, ComplexMatrix> bezout_projectors(
    const RealLinearMap& T, double tol = defaults::kRealEigTol);

double min_singular_value(const Matrix& m);
double min_singular_value(const ComplexMatrix& m);

/// Same column span with orthonormal columns; the change of basis has
/// positive (real) diagonal so the orientation of the span is preserved.
Matrix orthonormalize(const Matrix& columns, double tol = 1e-12);
ComplexMatrix orthonormalize(const ComplexMatrix& columns, double tol = 1e-12);

/// Orthogonal (Hermitian) projector onto the column span of an orthonormal
/// basis.
ComplexMatrix orthogonal_projector(const ComplexMatrix& orthonormal_basis);

/// Largest residual between two column spans given orthonormal bases:
/// max(||(I-P_a)b||, ||(I-P_b)a||) over unit columns.
double mutual_span_residual(const ComplexMatrix& a, const ComplexMatrix& b);

/// Oblique projector onto span(basis_plus) along span(basis_minus).
ComplexMatrix oblique_projector_plus(const ConjugateSplit& split);

}  // namespace forge
