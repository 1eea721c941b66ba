#include <Eigen/Dense>
#include <forge/fibration.hpp>
#include <forge/grassmann.hpp>
#include <forge/sampling.hpp>
#include <forge/structures.hpp>

#include "doctest.h"
#include "support/matrices.hpp"

using namespace forge;
using namespace forge::testing;

namespace {

Vector axis(int dim, int i) {
  Vector v = Vector::Zero(dim);
  v(i) = 1.0;
  return v;
}

// Least-squares oracle: two graph planes share a direction iff the stacked
// frame matrix [G1 | G2] drops rank.
bool planes_intersect_oracle(const OrientedTwoPlane& P, const ChartPoint& c1,
                             const ChartPoint& c2, double tol = 1e-7) {
  const int dim = P.ambient_dim();
  Matrix g1(dim, 2), g2(dim, 2);
  g1 = P.frame() + P.complement_basis() * c1.A;
  g2 = P.frame() + P.complement_basis() * c2.A;
  Matrix stacked(dim, 4);
  stacked << orthonormalize(g1), orthonormalize(g2);
  return min_singular_value(stacked) <= tol;
}

}  // namespace

TEST_CASE("chart_to_plane at zero returns the centre plane") {
  const OrientedTwoPlane p = OrientedTwoPlane::standard(6);
  const OrientedTwoPlane q = chart_to_plane(p, ChartPoint::zero(2));
  CHECK((q.frame() - p.frame()).norm() < 1e-12);
}

TEST_CASE("chart_to_plane of the unit diagonal chart in R^4") {
  const OrientedTwoPlane p = OrientedTwoPlane::standard(4);
  Matrix a(2, 2);
  // A1 = f1, A2 = f2 in the complement basis
  a << 1, 0, 0, 1;
  const OrientedTwoPlane q = chart_to_plane(p, ChartPoint(a));
  // expected span{(e1+f1)/sqrt2, (e2+f2)/sqrt2} with f = complement basis
  const Vector f1 = p.complement_basis().col(0);
  const Vector f2 = p.complement_basis().col(1);
  const Vector u1 = (p.e1() + f1) / std::sqrt(2.0);
  const Vector u2 = (p.e2() + f2) / std::sqrt(2.0);
  Matrix expected(4, 2);
  expected << u1, u2;
  CHECK((q.frame() - expected).norm() < 1e-12);
}

TEST_CASE("plane_to_chart inverts chart_to_plane") {
  const OrientedTwoPlane p = OrientedTwoPlane::standard(6);
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = rng.matrix_uniform(4, 2, -10.0, 10.0);
    const ChartPoint c(a);
    const ChartPoint back = plane_to_chart(p, chart_to_plane(p, c));
    CHECK((back.A - c.A).norm() < 1e-8 * (1.0 + a.norm()));
  }
}

TEST_CASE("plane_to_chart rejects planes outside the chart") {
  const OrientedTwoPlane p = OrientedTwoPlane::standard(6);
  CHECK((plane_to_chart(p, p).A).norm() < 1e-12);

  const OrientedTwoPlane perp(axis(6, 2), axis(6, 3));
  CHECK_THROWS_AS(plane_to_chart(p, perp), NotInChartError);

  // orientation-reversed copy of p
  const OrientedTwoPlane reversed(p.e2(), p.e1());
  CHECK_THROWS_AS(plane_to_chart(p, reversed), NotInChartError);
}

TEST_CASE("bad set membership by rank") {
  CHECK(in_bad_set(ChartPoint::zero(2)));

  Matrix rank1(4, 2);
  rank1.col(0) = axis(4, 1);
  rank1.col(1) = 2.0 * axis(4, 1);
  CHECK(in_bad_set(ChartPoint(rank1)));

  Matrix rank2(4, 2);
  rank2.col(0) = axis(4, 2);
  rank2.col(1) = axis(4, 3);
  CHECK_FALSE(in_bad_set(ChartPoint(rank2)));
}

TEST_CASE("bad cone is a union of lines through the origin") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Vector u = rng.unit_vector(4) * rng.uniform(0.1, 5.0);
    const double phase = rng.uniform(0.0, 2.0 * M_PI);
    Matrix a(4, 2);
    a.col(0) = std::cos(phase) * u;
    a.col(1) = std::sin(phase) * u;
    REQUIRE(in_bad_set(ChartPoint(a)));
    for (double s : {-2.0, -1.0, 0.5, 3.0}) {
      CHECK(in_bad_set(ChartPoint(Matrix(s * a))));
    }
  }
}

TEST_CASE("planes_intersect on the closed-form cases") {
  const ChartPoint zero = ChartPoint::zero(1);
  CHECK(planes_intersect(zero, zero));

  // C2 = (x | Jx): columns independent since J has no real eigenvalues
  Matrix xjx(2, 2);
  xjx.col(0) = Vector::Ones(2);
  xjx.col(1) = rot90() * Vector::Ones(2);
  CHECK_FALSE(planes_intersect(zero, ChartPoint(xjx)));

  Matrix xz = Matrix::Zero(2, 2);
  xz(0, 0) = 1.0;  // (x | 0)
  CHECK(planes_intersect(zero, ChartPoint(xz)));
}

TEST_CASE("bad cone translates into neighbouring bad cones") {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    Vector u = rng.unit_vector(4) * rng.uniform(0.1, 3.0);
    const double phase = rng.uniform(0.0, 2.0 * M_PI);
    Matrix cone(4, 2);
    cone.col(0) = std::cos(phase) * u;
    cone.col(1) = std::sin(phase) * u;
    const Matrix l = rng.matrix_uniform(4, 2, -5.0, 5.0);
    CHECK(planes_intersect(ChartPoint(cone + l), ChartPoint(l)));
  }
}

TEST_CASE("planes_intersect agrees with the least-squares oracle") {
  for (int half : {2, 4}) {
    const OrientedTwoPlane p = OrientedTwoPlane::standard(half + 2);
    Rng rng(13 + half);
    int intersecting = 0;
    for (int trial = 0; trial < 100; ++trial) {
      Matrix a1 = rng.matrix_uniform(half, 2, -3.0, 3.0);
      Matrix a2 = rng.matrix_uniform(half, 2, -3.0, 3.0);
      if (trial % 3 == 0) {
        // plant an intersection: make the difference rank one
        Vector u = rng.unit_vector(half);
        const double phase = rng.uniform(0.0, 2.0 * M_PI);
        a2 = a1;
        a2.col(0) += std::cos(phase) * u;
        a2.col(1) += std::sin(phase) * u;
      }
      const ChartPoint c1(a1), c2(a2);
      const bool fast = planes_intersect(c1, c2);
      const bool slow = planes_intersect_oracle(p, c1, c2);
      if (fast) ++intersecting;
      CHECK(fast == slow);
    }
    CHECK(intersecting >= 30);  // the planted cases were exercised
  }
}

TEST_CASE("transverse_to_bad_cone mirrors the eigenvalue test") {
  CHECK(transverse_to_bad_cone(RealLinearMap(rot90())));
  CHECK_FALSE(transverse_to_bad_cone(RealLinearMap(Matrix::Identity(2, 2))));
  CHECK(transverse_to_bad_cone(RealLinearMap(spiral2())));
}

TEST_CASE("great circles are unit-speed loops in their planes") {
  const OrientedTwoPlane p = OrientedTwoPlane::standard(4);
  const GreatCircle circle = great_circle_of(p);
  for (int i = 0; i < 32; ++i) {
    const double t = 2.0 * M_PI * i / 32;
    CHECK(std::abs(circle.point(t).norm() - 1.0) < 1e-12);
  }
  CHECK((circle.point(0.0) - p.e1()).norm() < 1e-14);
  const GreatCircle reversed = great_circle_of(OrientedTwoPlane(p.e2(), p.e1()));
  CHECK((reversed.point(M_PI_2) - circle.point(0.0)).norm() < 1e-14);
}

TEST_CASE("hopf_base_chart reads off the complement block") {
  const ComplexStructure j = ComplexStructure::standard(4);
  const OrientedTwoPlane p = OrientedTwoPlane::standard(4);
  const RealLinearMap chart = hopf_base_chart(j, p);
  // the complement basis is +/- {e3, e4}; the block is conjugate to rot90
  CHECK((chart.matrix() * chart.matrix() + Matrix::Identity(2, 2)).norm() <
        1e-12);
  const Matrix& f = p.complement_basis();
  const Matrix expected = f.transpose() * j.matrix() * f;
  CHECK((chart.matrix() - expected).norm() < 1e-14);
}

TEST_CASE("hopf_base_chart requires an invariant plane") {
  const ComplexStructure j = ComplexStructure::standard(4);
  const OrientedTwoPlane skew(axis(4, 0), axis(4, 2));
  CHECK_THROWS_AS(hopf_base_chart(j, skew), NotInvariantError);
}

TEST_CASE("chart of nearby complex lines is (A1 | J A1)") {
  // for J-complex planes Q near P, plane_to_chart gives A2 = J' A1 where J'
  // is the hopf_base_chart block
  const ComplexStructure j = ComplexStructure::standard(6);
  const OrientedTwoPlane p = OrientedTwoPlane::standard(6);
  const RealLinearMap jperp = hopf_base_chart(j, p);
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector a1 = rng.unit_vector(4) * rng.uniform(0.0, 2.0);
    Matrix a(4, 2);
    a.col(0) = a1;
    a.col(1) = jperp.matrix() * a1;
    // the graph plane is J-complex: check J maps it to itself
    const OrientedTwoPlane q = chart_to_plane(p, ChartPoint(a));
    const Matrix qf = q.frame();
    const Matrix proj = qf * qf.transpose();
    CHECK(((Matrix::Identity(6, 6) - proj) * (j.matrix() * qf)).norm() < 1e-9);
  }
}

TEST_CASE("immersion_check accepts the Hopf base") {
  const ComplexStructure j = ComplexStructure::standard(6);
  const OrientedTwoPlane p = OrientedTwoPlane::standard(6);
  const Matrix jperp = hopf_base_chart(j, p).matrix();
  auto sampler = [&](const Vector& x) {
    Matrix a(4, 2);
    a.col(0) = x;
    a.col(1) = jperp * x;
    return ChartPoint(a);
  };
  Rng rng(33);
  std::vector<Vector> points;
  for (int i = 0; i < 25; ++i) {
    points.push_back(rng.unit_vector(4) * rng.uniform(0.0, 2.0));
  }
  const ImmersionReport report = immersion_check(sampler, points);
  CHECK(report.entries.size() == points.size());
  CHECK(report.min_margin() > 0.5);
}

TEST_CASE("immersion_check flags a rank-one tangent direction") {
  // graph of a map with eigenvalue zero: tangent plane contains a rank-1
  // chart direction
  Matrix bad(2, 2);
  bad << 0.0, 1.0, 0.0, 0.0;
  auto sampler = [&](const Vector& x) {
    Matrix a(2, 2);
    a.col(0) = x;
    a.col(1) = bad * x;
    return ChartPoint(a);
  };
  std::vector<Vector> points{Vector::Ones(2)};
  CHECK_THROWS_AS(immersion_check(sampler, points), TangencyError);
}

TEST_CASE("immersion_check of nothing is empty") {
  auto sampler = [](const Vector&) { return ChartPoint::zero(1); };
  const ImmersionReport report = immersion_check(sampler, {});
  CHECK(report.entries.empty());
}
