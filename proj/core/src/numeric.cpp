#include "forge/numeric.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

namespace forge {

namespace {

// Swaps the eigenvalues at positions k and k+1 of the upper triangular
// Schur factor S, updating the unitary Q accordingly (ztrexc-style).
void swap_adjacent(ComplexMatrix& S, ComplexMatrix& Q, Eigen::Index k) {
  const Complex a = S(k, k);
  const Complex b = S(k, k + 1);
  const Complex c = S(k + 1, k + 1);
  // Eigenvector of [[a,b],[0,c]] for the eigenvalue c is (b, c-a).
  const double r = std::hypot(std::abs(b), std::abs(c - a));
  Eigen::Matrix2cd G;
  if (r < 1e-300) {
    // a == c and b == 0: any permutation swaps the (equal) eigenvalues.
    G << Complex(0.0), Complex(1.0), Complex(1.0), Complex(0.0);
  } else {
    const Complex v0 = b / r;
    const Complex v1 = (c - a) / r;
    G << v0, -std::conj(v1), v1, std::conj(v0);
  }
  const Eigen::Index n = S.rows();
  S.block(k, k, 2, n - k) = G.adjoint() * S.block(k, k, 2, n - k);
  S.block(0, k, k + 2, 2) = S.block(0, k, k + 2, 2) * G;
  S(k + 1, k) = Complex(0.0);
  Q.middleCols(k, 2) = Q.middleCols(k, 2) * G;
}

// Reorders the Schur pair (S, Q) so that eigenvalues with positive
// imaginary part occupy the leading diagonal positions.
void reorder_upper_halfplane_first(ComplexMatrix& S, ComplexMatrix& Q) {
  const Eigen::Index n = S.rows();
  for (Eigen::Index want = 0; want < n; ++want) {
    Eigen::Index j = want;
    while (j < n && S(j, j).imag() <= 0.0) ++j;
    if (j == n) break;
    for (Eigen::Index k = j; k > want; --k) swap_adjacent(S, Q, k - 1);
  }
}

std::vector<Complex> eigenvalues_of(const Matrix& m) {
  Eigen::ComplexSchur<ComplexMatrix> schur(m.cast<Complex>(), false);
  std::vector<Complex> out(static_cast<size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out[static_cast<size_t>(i)] = schur.matrixT()(i, i);
  }
  return out;
}

// Coefficients (ascending) of prod (z - roots[i]).
std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> coeff{Complex(1.0)};
  for (const Complex& r : roots) {
    std::vector<Complex> next(coeff.size() + 1, Complex(0.0));
    for (size_t i = 0; i < coeff.size(); ++i) {
      next[i + 1] += coeff[i];
      next[i] -= r * coeff[i];
    }
    coeff = std::move(next);
  }
  return coeff;
}

ComplexMatrix eval_poly_at(const std::vector<Complex>& coeff,
                           const ComplexMatrix& m) {
  const Eigen::Index n = m.rows();
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) {
    acc = acc * m;
    acc.diagonal().array() += *it;
  }
  return acc;
}

}  // namespace

void ConjugateSplit::validate() const {
  const int n = ambient_dim / 2;
  if (basis_plus.rows() != ambient_dim || basis_plus.cols() != n ||
      basis_minus.rows() != ambient_dim || basis_minus.cols() != n) {
    throw InvariantViolationError("ConjugateSplit: inconsistent shapes");
  }
  const double orth =
      (basis_plus.adjoint() * basis_plus - ComplexMatrix::Identity(n, n))
          .norm();
  if (orth >= 1e-9) {
    throw InvariantViolationError(
        "ConjugateSplit: basis_plus is not orthonormal");
  }
  if ((basis_minus - basis_plus.conjugate()).norm() >= 1e-12) {
    throw InvariantViolationError(
        "ConjugateSplit: basis_minus must be the conjugate of basis_plus");
  }
  ComplexMatrix joint(ambient_dim, ambient_dim);
  joint << basis_plus, basis_minus;
  if (min_singular_value(joint) <= 1e-9) {
    throw InvariantViolationError(
        "ConjugateSplit: joint basis is numerically dependent");
  }
}

bool has_real_eigenvalue(const RealLinearMap& T, double tol) {
  for (const Complex& lambda : eigenvalues_of(T.matrix())) {
    if (std::abs(lambda.imag()) <= tol) return true;
  }
  return false;
}

ConjugateSplit eigen_split(const RealLinearMap& T, double tol) {
  if (has_real_eigenvalue(T, tol)) {
    throw RealEigenvalueError("eigen_split: T has a real eigenvalue at tol");
  }
  Eigen::ComplexSchur<ComplexMatrix> schur(T.matrix().cast<Complex>(), true);
  ComplexMatrix S = schur.matrixT();
  ComplexMatrix Q = schur.matrixU();
  reorder_upper_halfplane_first(S, Q);

  const int n = T.half_dim();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (S(i, i).imag() <= 0.0) {
      throw RealEigenvalueError(
          "eigen_split: eigenvalues do not pair across the real axis");
    }
  }
  ConjugateSplit split;
  split.ambient_dim = T.dim();
  split.basis_plus = Q.leftCols(n);
  split.basis_minus = split.basis_plus.conjugate();
  split.validate();
  return split;
}

std::pair<ComplexMatrix, ComplexMatrix> bezout_projectors(
    const RealLinearMap& T, double tol) {
  if (has_real_eigenvalue(T, tol)) {
    throw RealEigenvalueError(
        "bezout_projectors: T has a real eigenvalue at tol");
  }
  // Work on T/s so the polynomial evaluations stay well scaled; the
  // projectors are invariant under positive rescaling of T.
  const double s = std::max(1.0, T.matrix().norm());
  const Matrix scaled = T.matrix() / s;
  const int n = T.half_dim();

  std::vector<Complex> upper;
  upper.reserve(static_cast<size_t>(n));
  for (const Complex& lambda : eigenvalues_of(scaled)) {
    if (lambda.imag() > 0.0) upper.push_back(lambda);
  }
  if (static_cast<int>(upper.size()) != n) {
    throw RealEigenvalueError(
        "bezout_projectors: eigenvalues do not pair across the real axis");
  }
  const std::vector<Complex> p_plus = poly_from_roots(upper);
  std::vector<Complex> p_minus(p_plus.size());
  for (size_t i = 0; i < p_plus.size(); ++i) p_minus[i] = std::conj(p_plus[i]);

  // Solve a+ p+ + a- p- = 1 for cofactors of degree <= n-1: a square
  // Sylvester-style convolution system in the 2n unknown coefficients.
  const int m = 2 * n;
  ComplexMatrix sylvester = ComplexMatrix::Zero(m, m);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i <= n; ++i) {
      sylvester(i + j, j) += p_plus[static_cast<size_t>(i)];
      sylvester(i + j, n + j) += p_minus[static_cast<size_t>(i)];
    }
  }
  ComplexVector rhs = ComplexVector::Zero(m);
  rhs(0) = Complex(1.0);
  const ComplexVector x = sylvester.partialPivLu().solve(rhs);
  const double solve_residual = (sylvester * x - rhs).norm();
  if (!x.allFinite() || solve_residual > 1e-6) {
    throw IllConditionedError(
        "bezout_projectors: cofactor solve residual above 1e-6 (clustered "
        "eigenvalues near the real axis)");
  }
  std::vector<Complex> a_plus(x.data(), x.data() + n);
  std::vector<Complex> a_minus(x.data() + n, x.data() + m);

  const ComplexMatrix tc = scaled.cast<Complex>();
  // ker p+(T) = V_C^+, so a-(T) p-(T) restricts to the identity on V_C^+
  // and to zero on V_C^-: it is the projector onto V_C^+ along V_C^-.
  ComplexMatrix pi_plus = eval_poly_at(a_minus, tc) * eval_poly_at(p_minus, tc);
  ComplexMatrix pi_minus = eval_poly_at(a_plus, tc) * eval_poly_at(p_plus, tc);

  const int d = T.dim();
  const double identity_residual =
      (pi_plus + pi_minus - ComplexMatrix::Identity(d, d)).norm();
  const double idem_residual = std::max(
      (pi_plus * pi_plus - pi_plus).norm(), (pi_minus * pi_minus - pi_minus).norm());
  if (identity_residual > 1e-7 || idem_residual > 1e-7) {
    throw IllConditionedError(
        "bezout_projectors: projector residuals above 1e-7");
  }
  return {std::move(pi_plus), std::move(pi_minus)};
}

double min_singular_value(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().tail(1)(0);
}

double min_singular_value(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().tail(1)(0);
}

namespace {

template <typename Mat>
Mat orthonormalize_impl(const Mat& columns, double tol) {
  if (min_singular_value(columns) <= tol) {
    throw RankDeficientError("orthonormalize: columns are dependent");
  }
  Eigen::HouseholderQR<Mat> qr(columns);
  Mat q = qr.householderQ() * Mat::Identity(columns.rows(), columns.cols());
  const Mat r =
      qr.matrixQR().topRows(columns.cols()).template triangularView<Eigen::Upper>();
  // Make the change of basis positive on the diagonal so the span keeps
  // its orientation (and, for complex input, a fixed phase).
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const auto d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

}  // namespace

Matrix orthonormalize(const Matrix& columns, double tol) {
  return orthonormalize_impl(columns, tol);
}

ComplexMatrix orthonormalize(const ComplexMatrix& columns, double tol) {
  return orthonormalize_impl(columns, tol);
}

ComplexMatrix orthogonal_projector(const ComplexMatrix& orthonormal_basis) {
  return orthonormal_basis * orthonormal_basis.adjoint();
}

double mutual_span_residual(const ComplexMatrix& a, const ComplexMatrix& b) {
  const ComplexMatrix pa = orthogonal_projector(a);
  const ComplexMatrix pb = orthogonal_projector(b);
  const double ra = ((ComplexMatrix::Identity(pa.rows(), pa.cols()) - pa) * b).norm();
  const double rb = ((ComplexMatrix::Identity(pb.rows(), pb.cols()) - pb) * a).norm();
  return std::max(ra, rb);
}

ComplexMatrix oblique_projector_plus(const ConjugateSplit& split) {
  const int d = split.ambient_dim;
  const int n = d / 2;
  ComplexMatrix joint(d, d);
  joint << split.basis_plus, split.basis_minus;
  const ComplexMatrix inv = joint.partialPivLu().solve(ComplexMatrix::Identity(d, d));
  return split.basis_plus * inv.topRows(n);
}

}  // namespace forge
