#include "forge/grassmann.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "forge/parallel.hpp"
#include "forge/structures.hpp"

namespace forge {

namespace {

Matrix orthonormal_complement(const Matrix& frame) {
  const Eigen::Index dim = frame.rows();
  Eigen::HouseholderQR<Matrix> qr(frame);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  // Match the span orientation of the frame itself (positive diagonal of R)
  // so the complement columns are a deterministic function of the frame.
  const Matrix r = qr.matrixQR().topRows(2).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < 2; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  Matrix complement = q.rightCols(dim - 2);
  // Orient P^perp so that (P, P^perp) carries the ambient orientation.
  Matrix full(dim, dim);
  full << frame, complement;
  if (full.determinant() < 0.0) complement.col(complement.cols() - 1) *= -1.0;
  return complement;
}

}  // namespace

OrientedTwoPlane::OrientedTwoPlane(const Vector& e1, const Vector& e2) {
  if (e1.size() != e2.size() || e1.size() < 4 || e1.size() % 2 != 0) {
    throw InvariantViolationError(
        "OrientedTwoPlane: frame vectors must share an even dimension >= 4");
  }
  if (!e1.allFinite() || !e2.allFinite()) {
    throw InvariantViolationError("OrientedTwoPlane: frame must be finite");
  }
  const double r1 = std::abs(e1.norm() - 1.0);
  const double r2 = std::abs(e2.norm() - 1.0);
  const double r12 = std::abs(e1.dot(e2));
  if (r1 > 1e-8 || r2 > 1e-8 || r12 > 1e-8) {
    throw InvariantViolationError(
        "OrientedTwoPlane: frame is not orthonormal");
  }
  // Tighten the frame to working precision before storing.
  Matrix raw(e1.size(), 2);
  raw << e1, e2;
  frame_ = orthonormalize(raw);
  complement_ = orthonormal_complement(frame_);
}

OrientedTwoPlane OrientedTwoPlane::standard(int ambient_dim) {
  Vector e1 = Vector::Zero(ambient_dim);
  Vector e2 = Vector::Zero(ambient_dim);
  e1(0) = 1.0;
  e2(1) = 1.0;
  return OrientedTwoPlane(e1, e2);
}

ChartPoint::ChartPoint(Matrix a) : A(std::move(a)) {
  if (A.cols() != 2 || A.rows() < 2 || A.rows() % 2 != 0) {
    throw InvariantViolationError("ChartPoint: A must be 2n x 2");
  }
  if (!all_finite(A)) {
    throw InvariantViolationError("ChartPoint: entries must be finite");
  }
}

ChartPoint ChartPoint::zero(int n) { return ChartPoint(Matrix::Zero(2 * n, 2)); }

Vector GreatCircle::point(double t) const {
  return std::cos(t) * plane_.e1() + std::sin(t) * plane_.e2();
}

OrientedTwoPlane chart_to_plane(const OrientedTwoPlane& P, const ChartPoint& C) {
  if (2 * C.n() + 2 != P.ambient_dim()) {
    throw DimensionMismatchError("chart_to_plane: dimensions disagree");
  }
  const Matrix graph_frame = P.frame() + P.complement_basis() * C.A;
  const Matrix q = orthonormalize(graph_frame);
  return OrientedTwoPlane(q.col(0), q.col(1));
}

ChartPoint plane_to_chart(const OrientedTwoPlane& P, const OrientedTwoPlane& Q,
                          double tol) {
  if (P.ambient_dim() != Q.ambient_dim()) {
    throw DimensionMismatchError("plane_to_chart: dimensions disagree");
  }
  const Eigen::Matrix2d U = P.frame().transpose() * Q.frame();
  const Matrix W = P.complement_basis().transpose() * Q.frame();
  if (min_singular_value(Matrix(U)) <= tol) {
    throw NotInChartError(
        "plane_to_chart: Q contains a vector orthogonal to P");
  }
  if (U.determinant() <= 0.0) {
    throw NotInChartError(
        "plane_to_chart: projection of Q to P reverses orientation");
  }
  return ChartPoint(W * U.inverse());
}

bool in_bad_set(const ChartPoint& C, double tol) {
  return min_singular_value(C.A) <= tol;
}

bool planes_intersect(const ChartPoint& C1, const ChartPoint& C2, double tol) {
  if (C1.n() != C2.n()) {
    throw DimensionMismatchError("planes_intersect: dimensions disagree");
  }
  const double scale = C1.A.norm() + C2.A.norm() + 1.0;
  return min_singular_value(Matrix(C1.A - C2.A)) <= tol * scale;
}

bool transverse_to_bad_cone(const RealLinearMap& T, double tol) {
  return !has_real_eigenvalue(T, tol);
}

GreatCircle great_circle_of(const OrientedTwoPlane& plane) {
  return GreatCircle(plane);
}

RealLinearMap hopf_base_chart(const ComplexStructure& J,
                              const OrientedTwoPlane& P, double tol) {
  const Matrix& jm = J.map().matrix();
  if (jm.rows() != P.ambient_dim()) {
    throw DimensionMismatchError("hopf_base_chart: dimensions disagree");
  }
  const Matrix& E = P.frame();
  const Matrix& F = P.complement_basis();
  const double plane_residual = ((Matrix::Identity(jm.rows(), jm.cols()) -
                                  E * E.transpose()) *
                                 (jm * E))
                                    .norm();
  const double perp_residual = (E.transpose() * (jm * F)).norm();
  if (plane_residual > tol || perp_residual > tol) {
    throw NotInvariantError("hopf_base_chart: J does not preserve P");
  }
  return RealLinearMap(F.transpose() * jm * F);
}

double ImmersionReport::min_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& e : entries) {
    m = std::min(m, std::min(e.frame_rank_margin, e.eigen_margin));
  }
  return m;
}

ImmersionReport immersion_check(
    const std::function<ChartPoint(const Vector&)>& base_sampler,
    std::span<const Vector> points, double tol) {
  ImmersionReport report;
  report.entries.resize(points.size());
  if (points.empty()) return report;

  parallel_for(points.size(), [&](std::size_t idx) {
    const Vector& x = points[idx];
    const int m = static_cast<int>(x.size());
    const double h = 1e-5 * (1.0 + x.norm());
    const ChartPoint centre = base_sampler(x);
    const int twon = 2 * centre.n();

    Matrix jac(2 * twon, m);  // d vec(A1; A2) / dx
    Matrix d1(twon, m), d2(twon, m);
    for (int j = 0; j < m; ++j) {
      Vector xp = x, xm = x;
      xp(j) += h;
      xm(j) -= h;
      const Matrix diff = (base_sampler(xp).A - base_sampler(xm).A) / (2.0 * h);
      d1.col(j) = diff.col(0);
      d2.col(j) = diff.col(1);
      jac.col(j) << diff.col(0), diff.col(1);
    }

    ImmersionPointResult result;
    result.point = x;
    result.frame_rank_margin = min_singular_value(jac);
    const double d1_margin = min_singular_value(d1);
    if (d1_margin <= tol * (1.0 + d1.norm())) {
      // The tangent plane meets the vertical summand {0 | A2}, which lies
      // inside the bad cone.
      result.eigen_margin = 0.0;
    } else {
      const Matrix tangent = d2 * d1.inverse();
      const Eigen::VectorXcd eig =
          Eigen::EigenSolver<Matrix>(tangent, false).eigenvalues();
      result.eigen_margin = eig.imag().cwiseAbs().minCoeff();
    }
    report.entries[idx] = std::move(result);
  });

  for (const auto& e : report.entries) {
    if (e.frame_rank_margin <= tol || e.eigen_margin <= tol) {
      throw TangencyError("immersion_check: sampled base grazes the bad cone");
    }
  }
  return report;
}

}  // namespace forge
