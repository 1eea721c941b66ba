#include <Eigen/Dense>
#include <forge/angles.hpp>
#include <forge/numeric.hpp>
#include <forge/sampling.hpp>

#include "doctest.h"
#include "support/angle_oracles.hpp"

using namespace forge;
using namespace forge::testing;

namespace {

Vector axis(int dim, int i) {
  Vector v = Vector::Zero(dim);
  v(i) = 1.0;
  return v;
}

RealSubspace random_real_subspace(int n, int k, Rng& rng) {
  return RealSubspace::from_span(rng.gaussian_matrix(n, k));
}

// The paper's 2x2 worked example: the +i eigenline of [[0,b],[-1/b,0]].
ComplexSubspace conjugate_line_example(double b) {
  ComplexVector v(2);
  v << Complex(b, 0.0), Complex(0.0, 1.0);
  v /= v.norm();
  ComplexMatrix basis(2, 1);
  basis.col(0) = v;
  return ComplexSubspace(basis);
}

double subspace_residual(const Matrix& image, const Matrix& target_basis) {
  const Matrix proj = target_basis * target_basis.transpose();
  return ((Matrix::Identity(proj.rows(), proj.cols()) - proj) * image).norm();
}

}  // namespace

TEST_CASE("real principal angles: rotated line against an axis") {
  for (double theta : {0.1, 0.7, 1.3}) {
    Matrix p(3, 1), q(3, 1);
    p.col(0) = axis(3, 0);
    q.col(0) = std::cos(theta) * axis(3, 0) + std::sin(theta) * axis(3, 1);
    const AngleProfile profile =
        principal_angles_real(RealSubspace(p), RealSubspace(q));
    REQUIRE(profile.k() == 1);
    CHECK(profile.angles(0) == doctest::Approx(theta).epsilon(1e-12));
    profile.validate();
  }
}

TEST_CASE("real principal angles: identical subspaces give zeros") {
  Rng rng(2);
  const RealSubspace p = random_real_subspace(5, 2, rng);
  const AngleProfile profile = principal_angles_real(p, p);
  CHECK(profile.angles.cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("real principal angles: partially shared plane in R^3") {
  const double theta = 0.9;
  Matrix p(3, 2), q(3, 2);
  p.col(0) = axis(3, 0);
  p.col(1) = axis(3, 1);
  q.col(0) = axis(3, 0);
  q.col(1) = std::cos(theta) * axis(3, 1) + std::sin(theta) * axis(3, 2);
  const AngleProfile profile =
      principal_angles_real(RealSubspace(p), RealSubspace(q));
  CHECK(profile.angles(0) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(profile.angles(1) == doctest::Approx(theta).epsilon(1e-10));
  const auto greedy = greedy_angles_real(p, q);
  CHECK(std::abs(profile.angles(0) - greedy[0]) < 1e-4);
  CHECK(std::abs(profile.angles(1) - greedy[1]) < 1e-4);
}

TEST_CASE("real principal angles match the greedy oracle on random pairs") {
  Rng rng(17);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = trial % 2 == 0 ? 3 : 4;
    const RealSubspace p = random_real_subspace(n, 2, rng);
    const RealSubspace q = random_real_subspace(n, 2, rng);
    const AngleProfile profile = principal_angles_real(p, q);
    const auto greedy = greedy_angles_real(p.basis(), q.basis());
    for (int i = 0; i < 2; ++i) {
      CHECK(std::abs(profile.angles(i) - greedy[static_cast<size_t>(i)]) <
            1e-4);
    }
    profile.validate();
  }
}

TEST_CASE("complex principal angles: lines in C^2") {
  for (double theta : {0.3, 1.0}) {
    ComplexMatrix p(2, 1), q(2, 1);
    p << Complex(1, 0), Complex(0, 0);
    q << Complex(std::cos(theta), 0), Complex(std::sin(theta), 0);
    const AngleProfile profile =
        principal_angles_complex(ComplexSubspace(p), ComplexSubspace(q));
    CHECK(profile.angles(0) == doctest::Approx(theta).epsilon(1e-12));
  }
}

TEST_CASE("complex principal angles are phase invariant") {
  Rng rng(23);
  ComplexMatrix p(3, 1), q(3, 1);
  for (int i = 0; i < 3; ++i) {
    p(i, 0) = Complex(rng.normal(), rng.normal());
    q(i, 0) = Complex(rng.normal(), rng.normal());
  }
  p /= p.norm();
  q /= q.norm();
  const ComplexSubspace sp(p);
  const AngleProfile base = principal_angles_complex(sp, ComplexSubspace(q));
  const Complex phase = std::polar(1.0, 1.234);
  const AngleProfile rotated =
      principal_angles_complex(sp, ComplexSubspace(ComplexMatrix(q * phase)));
  CHECK((base.angles - rotated.angles).cwiseAbs().maxCoeff() < 1e-12);
  // identical subspaces give zeros
  const AngleProfile self = principal_angles_complex(sp, sp);
  CHECK(self.angles.cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("conjugate principal angles reproduce the b = 2 example") {
  const AngleProfile profile =
      principal_angles_conjugate(conjugate_line_example(2.0));
  REQUIRE(profile.k() == 1);
  // cos(theta) = |b^2 - 1| / (b^2 + 1) = 3/5
  CHECK(std::cos(profile.angles(0)) == doctest::Approx(0.6).epsilon(1e-10));
  // coincidence normalization: the partner is the entrywise conjugate
  CHECK((profile.basis_second - profile.basis_first.conjugate()).norm() ==
        0.0);
  const Complex pairing =
      (profile.basis_first.col(0).adjoint() * profile.basis_second.col(0))(0);
  CHECK(std::abs(pairing.imag()) < 1e-12);
  CHECK(pairing.real() == doctest::Approx(0.6).epsilon(1e-10));
}

TEST_CASE("conjugate principal angles: b = 1 gives a right angle") {
  const AngleProfile profile =
      principal_angles_conjugate(conjugate_line_example(1.0));
  CHECK(profile.angles(0) == doctest::Approx(M_PI_2).epsilon(1e-10));
}

TEST_CASE("conjugate principal angles reject real subspaces") {
  ComplexMatrix real_line(2, 1);
  real_line << Complex(1, 0), Complex(0, 0);
  CHECK_THROWS_AS(principal_angles_conjugate(ComplexSubspace(real_line)),
                  NotTransverseError);
}

TEST_CASE("constrained angles coincide with the ordinary ones") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4;
    const int k = 1 + trial % 2;
    ComplexMatrix span(n, k);
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < n; ++i) {
        span(i, j) = Complex(rng.normal(), rng.normal());
      }
    }
    ComplexSubspace p = ComplexSubspace::from_span(span);
    ComplexMatrix stacked(n, 2 * k);
    stacked << p.basis(), p.basis().conjugate();
    if (min_singular_value(stacked) < 1e-3) continue;
    const AngleProfile constrained = principal_angles_conjugate(p);
    const AngleProfile ordinary = principal_angles_complex(p, p.conjugate());
    CHECK((constrained.angles - ordinary.angles).cwiseAbs().maxCoeff() < 1e-8);
    constrained.validate();
  }
}

TEST_CASE("profiles are invariant under ambient isometries") {
  Rng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const RealSubspace p = random_real_subspace(5, 2, rng);
    const RealSubspace q = random_real_subspace(5, 2, rng);
    const Matrix g = random_orthogonal(5, rng);
    const AngleProfile before = principal_angles_real(p, q);
    const AngleProfile after =
        principal_angles_real(RealSubspace::from_span(g * p.basis()),
                              RealSubspace::from_span(g * q.basis()));
    CHECK((before.angles - after.angles).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("aligning_isometry_real recovers a hidden rotation") {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 5;
    const RealSubspace p = random_real_subspace(n, 2, rng);
    const RealSubspace q = random_real_subspace(n, 2, rng);
    const Matrix g = random_orthogonal(n, rng);
    const RealSubspace p2 = RealSubspace::from_span(g * p.basis());
    const RealSubspace q2 = RealSubspace::from_span(g * q.basis());
    const Matrix f = aligning_isometry_real(p, q, p2, q2);
    CHECK((f * f.transpose() - Matrix::Identity(n, n)).norm() < 1e-10);
    CHECK(subspace_residual(f * p.basis(), p2.basis()) < 1e-7);
    CHECK(subspace_residual(f * q.basis(), q2.basis()) < 1e-7);
  }
}

TEST_CASE("aligning_isometry_real refuses mismatched profiles") {
  Matrix p(3, 1), q1(3, 1), q2(3, 1);
  p.col(0) = axis(3, 0);
  q1.col(0) = std::cos(0.4) * axis(3, 0) + std::sin(0.4) * axis(3, 1);
  q2.col(0) = std::cos(0.9) * axis(3, 0) + std::sin(0.9) * axis(3, 1);
  CHECK_THROWS_AS(aligning_isometry_real(RealSubspace(p), RealSubspace(q1),
                                         RealSubspace(p), RealSubspace(q2)),
                  MismatchError);
}

TEST_CASE("aligning_isometry_real handles the zero-angle case") {
  Rng rng(43);
  const RealSubspace p = random_real_subspace(4, 2, rng);
  const RealSubspace p2 = random_real_subspace(4, 2, rng);
  const Matrix f = aligning_isometry_real(p, p, p2, p2);
  CHECK(subspace_residual(f * p.basis(), p2.basis()) < 1e-7);
}

TEST_CASE("aligning_isometry_conjugate pairs b = 2 with b = -2") {
  const ComplexSubspace p = conjugate_line_example(2.0);
  const ComplexSubspace q = conjugate_line_example(-2.0);
  const RealLinearMap f = aligning_isometry_conjugate(p, q);
  const Matrix& fm = f.matrix();
  CHECK((fm * fm.transpose() - Matrix::Identity(2, 2)).norm() < 1e-10);
  // F (complexified) carries P to Q
  const ComplexMatrix image = fm.cast<Complex>() * p.basis();
  const ComplexMatrix proj = q.basis() * q.basis().adjoint();
  CHECK(((ComplexMatrix::Identity(2, 2) - proj) * image).norm() < 1e-8);
}

TEST_CASE("aligning_isometry_conjugate accepts identical subspaces") {
  const ComplexSubspace p = conjugate_line_example(2.0);
  const RealLinearMap f = aligning_isometry_conjugate(p, p);
  const ComplexMatrix image = f.matrix().cast<Complex>() * p.basis();
  const ComplexMatrix proj = p.basis() * p.basis().adjoint();
  CHECK(((ComplexMatrix::Identity(2, 2) - proj) * image).norm() < 1e-8);
}

TEST_CASE("aligning_isometry_conjugate refuses different profiles") {
  CHECK_THROWS_AS(aligning_isometry_conjugate(conjugate_line_example(2.0),
                                              conjugate_line_example(3.0)),
                  MismatchError);
}

TEST_CASE("aligning_isometry_conjugate extends over the complement") {
  // k = 1 in C^4: the map must still commute with conjugation (be real)
  Rng rng(47);
  for (int trial = 0; trial < 5; ++trial) {
    ComplexMatrix span(4, 1);
    for (int i = 0; i < 4; ++i) span(i, 0) = Complex(rng.normal(), rng.normal());
    ComplexSubspace p = ComplexSubspace::from_span(span);
    ComplexMatrix stacked(4, 2);
    stacked << p.basis(), p.basis().conjugate();
    if (min_singular_value(stacked) < 1e-3) continue;
    const Matrix g = random_orthogonal(4, rng);
    const ComplexSubspace q =
        ComplexSubspace::from_span(g.cast<Complex>() * p.basis());
    const RealLinearMap f = aligning_isometry_conjugate(p, q);
    CHECK((f.matrix() * f.matrix().transpose() - Matrix::Identity(4, 4))
              .norm() < 1e-9);
    const ComplexMatrix image = f.matrix().cast<Complex>() * p.basis();
    const ComplexMatrix proj = q.basis() * q.basis().adjoint();
    CHECK(((ComplexMatrix::Identity(4, 4) - proj) * image).norm() < 1e-7);
  }
}

TEST_CASE("pairing orthogonality holds in every returned profile") {
  Rng rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const RealSubspace p = random_real_subspace(6, 3, rng);
    const RealSubspace q = random_real_subspace(6, 3, rng);
    const AngleProfile profile = principal_angles_real(p, q);
    const ComplexMatrix cross =
        profile.basis_first.adjoint() * profile.basis_second;
    for (int r = 0; r < 3; ++r) {
      for (int s = 0; s < 3; ++s) {
        if (r != s) CHECK(std::abs(cross(r, s)) < 1e-8);
      }
    }
  }
}
