#pragma once

#include <functional>
#include <span>
#include <vector>

#include "forge/numeric.hpp"
#include "forge/types.hpp"

namespace forge {

class ComplexStructure;  // structures.hpp

/// An oriented 2-plane through the origin of R^{2n+2}, stored as an
/// orthonormal frame {e1, e2} (the order fixes the orientation), together
/// with a deterministic orthonormal basis of its orthogonal complement,
/// oriented so that (plane, complement) matches the ambient orientation.
class OrientedTwoPlane {
 public:
  OrientedTwoPlane(const Vector& e1, const Vector& e2);

  /// span{e1, e2} of the first two ambient coordinate directions.
  static OrientedTwoPlane standard(int ambient_dim);

  int ambient_dim() const { return static_cast<int>(frame_.rows()); }
  const Vector e1() const { return frame_.col(0); }
  const Vector e2() const { return frame_.col(1); }
  const Matrix& frame() const { return frame_; }                // (2n+2) x 2
  const Matrix& complement_basis() const { return complement_; } // (2n+2) x 2n

 private:
  Matrix frame_;
  Matrix complement_;
};

/// A point of the chart Hom(P, P^perp): the 2n x 2 matrix A = A1 | A2 in
/// the complement basis of the centre plane. A = 0 is the centre itself.
struct ChartPoint {
  explicit ChartPoint(Matrix a);
  static ChartPoint zero(int n);

  int n() const { return static_cast<int>(A.rows()) / 2; }
  Vector column1() const { return A.col(0); }
  Vector column2() const { return A.col(1); }

  Matrix A;  // 2n x 2
};

/// The oriented unit circle of a 2-plane, parametrized by
/// t -> cos(t) e1 + sin(t) e2.
class GreatCircle {
 public:
  explicit GreatCircle(OrientedTwoPlane plane) : plane_(std::move(plane)) {}
  const OrientedTwoPlane& plane() const { return plane_; }
  Vector point(double t) const;

 private:
  OrientedTwoPlane plane_;
};

/// The plane spanned by {e1 + F A1, e2 + F A2}, orthonormalized with the
/// orientation that makes orthogonal projection to P orientation-preserving.
OrientedTwoPlane chart_to_plane(const OrientedTwoPlane& P, const ChartPoint& C);

/// Inverse chart map. Throws NotInChartError when Q contains a vector
/// orthogonal to P or its projection to P reverses orientation.
ChartPoint plane_to_chart(const OrientedTwoPlane& P, const OrientedTwoPlane& Q,
                          double tol = defaults::kChartTol);

/// True iff A has rank 0 or 1 at tolerance tol, i.e. the graph plane meets
/// P in at least a line.
bool in_bad_set(const ChartPoint& C, double tol = defaults::kIntersectTol);

/// True iff the two graph planes share a point of the sphere (up to sign):
/// the difference of chart matrices has a kernel. The threshold is scaled
/// by ||A1|| + ||A2|| + 1.
bool planes_intersect(const ChartPoint& C1, const ChartPoint& C2,
                      double tol = defaults::kIntersectTol);

/// A tangent 2n-plane presented as the graph of T is transverse to the bad
/// cone iff T has no real eigenvalues.
bool transverse_to_bad_cone(const RealLinearMap& T,
                            double tol = defaults::kRealEigTol);

GreatCircle great_circle_of(const OrientedTwoPlane& plane);

/// The matrix of J restricted to P^perp in P's complement basis; its graph
/// is the tangent plane to the Hopf base space at P. Throws
/// NotInvariantError unless J preserves P (and hence, being orthogonal or
/// at least P^perp-preserving, the complement).
RealLinearMap hopf_base_chart(const ComplexStructure& J,
                              const OrientedTwoPlane& P, double tol = 1e-9);

struct ImmersionPointResult {
  Vector point;
  double frame_rank_margin = 0.0;  // smallest singular value of the frame Jacobian
  double eigen_margin = 0.0;       // min |Im lambda| of the tangent map
};

struct ImmersionReport {
  std::vector<ImmersionPointResult> entries;
  double min_margin() const;
};

/// Certifies, by central finite differences with step 1e-5 (1 + |x|), that
/// the sampled base is immersed and transverse to the bad cone: the frame
/// Jacobian of x -> A(x) has full rank and the tangent map D2 D1^{-1} has
/// no real eigenvalues. Throws TangencyError at the first failing sample.
/// The sampler must be a pure function; samples are evaluated in parallel.
ImmersionReport immersion_check(
    const std::function<ChartPoint(const Vector&)>& base_sampler,
    std::span<const Vector> points, double tol = defaults::kRealEigTol);

}  // namespace forge
