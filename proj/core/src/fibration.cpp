#include "forge/fibration.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <memory>

#include "forge/parallel.hpp"
#include "forge/sampling.hpp"

namespace forge {

namespace {

double spectral_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

// ||Mv - (v.Mv) v||^2 for unit v: squared distance from Mv to the real
// line through v.
double line_distance_sq(const Matrix& m, const Vector& v) {
  const Vector mv = m * v;
  const double lambda = v.dot(mv);
  return mv.squaredNorm() - lambda * lambda;
}

Vector sphere_gradient(const Matrix& m, const Vector& v) {
  const Vector mv = m * v;
  const double lambda = v.dot(mv);
  const Vector grad = 2.0 * (m.transpose() * mv) - 2.0 * lambda * (mv + m.transpose() * v);
  return grad - grad.dot(v) * v;
}

// Projected gradient descent from v0; returns the best unit vector found.
Vector descend_on_sphere(const Matrix& m, Vector v, int iterations) {
  double value = line_distance_sq(m, v);
  double step = 0.25;
  for (int it = 0; it < iterations; ++it) {
    const Vector g = sphere_gradient(m, v);
    const double gn = g.norm();
    if (gn < 1e-15) break;
    bool moved = false;
    while (step > 1e-14) {
      Vector trial = v - (step / gn) * g;
      trial.normalize();
      const double trial_value = line_distance_sq(m, trial);
      if (trial_value < value) {
        v = trial;
        value = trial_value;
        moved = true;
        step *= 1.8;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return v;
}

// Candidate directions built from the eigenvectors of M: where an
// eigenvalue sits closest to the real axis, the real/imaginary parts of
// its eigenvector witness the smallest line distance.
std::vector<Vector> informed_starts(const Matrix& m) {
  std::vector<Vector> starts;
  Eigen::EigenSolver<Matrix> eig(m, true);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const ComplexVector w = eig.eigenvectors().col(i);
    Vector re = w.real();
    Vector im = w.imag();
    if (re.norm() > 1e-12) starts.push_back(re.normalized());
    if (im.norm() > 1e-12) starts.push_back(im.normalized());
    Vector mix = re + im;
    if (mix.norm() > 1e-12) starts.push_back(mix.normalized());
  }
  return starts;
}

double min_line_distance(const Matrix& m, const MarginGrid& grid, Rng& rng,
                         Vector* argmin) {
  const int dim = static_cast<int>(m.rows());
  double best = std::numeric_limits<double>::infinity();
  Vector best_v;
  if (dim == 2) {
    // One angular parameter: dense grid plus golden-section refinement.
    const int kGrid = 2048;
    auto value_at = [&](double alpha) {
      Vector v(2);
      v << std::cos(alpha), std::sin(alpha);
      return line_distance_sq(m, v);
    };
    double best_alpha = 0.0;
    for (int i = 0; i < kGrid; ++i) {
      const double alpha = M_PI * i / kGrid;
      const double val = value_at(alpha);
      if (val < best) {
        best = val;
        best_alpha = alpha;
      }
    }
    double lo = best_alpha - M_PI / kGrid;
    double hi = best_alpha + M_PI / kGrid;
    const double inv_golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_golden * (hi - lo);
    double x2 = lo + inv_golden * (hi - lo);
    double f1 = value_at(x1);
    double f2 = value_at(x2);
    while (hi - lo > 1e-15) {
      if (f1 > f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_golden * (hi - lo);
        f2 = value_at(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_golden * (hi - lo);
        f1 = value_at(x1);
      }
    }
    if (f1 < best) {
      best = f1;
      best_alpha = x1;
    }
    if (f2 < best) {
      best = f2;
      best_alpha = x2;
    }
    best_v = Vector(2);
    best_v << std::cos(best_alpha), std::sin(best_alpha);
  } else {
    std::vector<Vector> starts = informed_starts(m);
    for (int s = 0; s < grid.direction_starts; ++s) {
      starts.push_back(rng.unit_vector(dim));
    }
    for (const Vector& v0 : starts) {
      const Vector v = descend_on_sphere(m, v0, grid.descent_iterations);
      const double val = line_distance_sq(m, v);
      if (val < best) {
        best = val;
        best_v = v;
      }
    }
  }
  if (argmin) *argmin = best_v;
  return std::sqrt(std::max(best, 0.0));
}

}  // namespace

TransversalityMargin transversality_margin(const RealLinearMap& A,
                                           const ComplexStructure& J,
                                           const MarginGrid& grid) {
  if (A.dim() != J.dim()) {
    throw DimensionMismatchError("transversality_margin: dimensions disagree");
  }
  Rng rng(grid.seed ^ 0x7261696c6d617267ULL);
  TransversalityMargin out;
  out.grid = grid;
  out.epsilon = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.t_points; ++i) {
    const double t =
        grid.t_points == 1 ? 0.0 : static_cast<double>(i) / (grid.t_points - 1);
    const Matrix m = t * A.matrix() + (1.0 - t) * J.matrix();
    Vector v;
    const double dist = min_line_distance(m, grid, rng, &v);
    if (dist < out.epsilon) {
      out.epsilon = dist;
      out.witness.t = t;
      out.witness.v = v;
    }
  }
  if (!(out.epsilon > 1e-12)) {
    throw NonPositiveMarginError(
        "transversality_margin: sampled margin is numerically zero (is J the "
        "structure attached to A?)");
  }
  return out;
}

FibrationBase::FibrationBase(int n, RealLinearMap A, ComplexStructure J,
                             BumpProfile bump, TransversalityMargin margin,
                             OrientedTwoPlane P)
    : n_(n),
      a_(std::move(A)),
      j_(std::move(J)),
      bump_(bump),
      margin_(margin),
      p_(std::move(P)) {
  if (a_.dim() != 2 * n_ || j_.dim() != 2 * n_ || p_.ambient_dim() != 2 * n_ + 2) {
    throw DimensionMismatchError("FibrationBase: dimensions disagree");
  }
  if (has_real_eigenvalue(a_)) {
    throw RealEigenvalueError("FibrationBase: A has a real eigenvalue");
  }
  const double gap = spectral_norm(a_.matrix() - j_.matrix());
  if (!(slope_sup(bump_) * gap < margin_.epsilon)) {
    throw InvariantViolationError(
        "FibrationBase: certificate S(f_n) ||A - J|| < epsilon fails");
  }
}

Vector FibrationBase::eval_N(const Vector& x) const {
  const double f = bump_eval(bump_, x.norm());
  if (f == 1.0) return a_.matrix() * x;
  if (f == 0.0) return j_.matrix() * x;
  return f * (a_.matrix() * x) + (1.0 - f) * (j_.matrix() * x);
}

Matrix FibrationBase::eval_dN_matrix(const Vector& x) const {
  const double s = x.norm();
  const double f = bump_eval(bump_, s);
  const double fp = bump_slope(bump_, s);
  if (fp == 0.0) {
    if (f == 1.0) return a_.matrix();
    if (f == 0.0) return j_.matrix();
  }
  Matrix m = f * a_.matrix() + (1.0 - f) * j_.matrix();
  if (fp != 0.0 && s > 0.0) {
    // written as fp * radial * (x/s)^T so no intermediate can overflow
    // when the plateau has shrunk below representable radii
    const Vector radial = (a_.matrix() - j_.matrix()) * x;
    m += fp * radial * (x / s).transpose();
  }
  return m;
}

FibrationBase build_fibration(const RealLinearMap& A, const OrientedTwoPlane& P,
                              const BumpProfile& base_bump,
                              const MarginGrid& grid, int exponent_cap) {
  if (A.dim() + 2 != P.ambient_dim()) {
    throw DimensionMismatchError(
        "build_fibration: A must act on the complement of P");
  }
  if (has_real_eigenvalue(A)) {
    throw RealEigenvalueError("build_fibration: A has a real eigenvalue");
  }
  const ComplexStructure j = make_complex_structure(A);
  const TransversalityMargin margin = transversality_margin(A, j, grid);
  const double gap = spectral_norm(A.matrix() - j.matrix());

  // S(f_n) = S(f)/n, so the smallest workable exponent sits near
  // S(f) gap / epsilon; confirm with the real slope_sup and walk up from
  // there if the estimate was a whisker short.
  const double s1 = slope_sup(BumpProfile(base_bump.r0, base_bump.r1, 1));
  int chosen =
      std::max(1, static_cast<int>(std::floor(s1 * gap / margin.epsilon)));
  while (chosen <= exponent_cap &&
         !(slope_sup(BumpProfile(base_bump.r0, base_bump.r1, chosen)) * gap <
           margin.epsilon)) {
    ++chosen;
  }
  if (chosen > exponent_cap) {
    throw ExponentOverflowError(
        "build_fibration: no bump exponent below the cap certifies the "
        "margin");
  }
  // keep the exponent minimal
  while (chosen > 1 &&
         slope_sup(BumpProfile(base_bump.r0, base_bump.r1, chosen - 1)) * gap <
             margin.epsilon) {
    --chosen;
  }
  return FibrationBase(A.half_dim(), A, j,
                       BumpProfile(base_bump.r0, base_bump.r1, chosen), margin,
                       P);
}

ChartPoint eval_base(const FibrationBase& F, const Vector& x) {
  if (x.size() != F.A().dim()) {
    throw DimensionMismatchError("eval_base: x must lie in P^perp");
  }
  Matrix a(x.size(), 2);
  a.col(0) = x;
  a.col(1) = F.eval_N(x);
  return ChartPoint(std::move(a));
}

RealLinearMap eval_dN(const FibrationBase& F, const Vector& x) {
  if (x.size() != F.A().dim()) {
    throw DimensionMismatchError("eval_dN: x must lie in P^perp");
  }
  return RealLinearMap(F.eval_dN_matrix(x));
}

BaseMap base_map_of(const FibrationBase& F) {
  auto shared = std::make_shared<FibrationBase>(F);
  BaseMap base;
  base.N = [shared](const Vector& x) { return shared->eval_N(x); };
  base.dN = [shared](const Vector& x) { return shared->eval_dN_matrix(x); };
  base.exterior_linear = shared->J().matrix();
  base.exterior_radius = shared->bump().outer_radius();
  base.dim = shared->A().dim();
  return base;
}

Report verify_base_map(const BaseMap& base, const VerifySettings& settings) {
  Report report;
  report.seed = settings.seed;
  Rng rng(settings.seed ^ 0x76657269667921ULL);
  const int dim = base.dim;
  const double outer = base.exterior_radius;

  // Stratified radii: plateau, transition band, exterior.
  auto sample_point = [&]() {
    const double u = rng.uniform01();
    double r = 0.0;
    if (u < 0.4) {
      r = rng.uniform(0.0, outer);
    } else if (u < 0.8) {
      r = rng.uniform(0.0, 1.0) < 0.5 ? rng.uniform(0.0, 0.25 * outer)
                                      : rng.uniform(0.75 * outer, outer);
    } else {
      r = rng.uniform(outer, 2.0 * outer + 1.0);
    }
    return Vector(r * rng.unit_vector(dim));
  };

  {
    std::vector<Vector> points(static_cast<size_t>(settings.eigen_samples));
    for (auto& p : points) p = sample_point();
    std::vector<double> margins(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
      const Matrix dn = base.dN(points[i]);
      const Eigen::VectorXcd eig =
          Eigen::EigenSolver<Matrix>(dn, false).eigenvalues();
      margins[i] = eig.imag().cwiseAbs().minCoeff();
    });
    CheckRecord rec;
    rec.name = "dN_no_real_eigenvalues";
    rec.margin = std::numeric_limits<double>::infinity();
    std::size_t worst = 0;
    for (std::size_t i = 0; i < margins.size(); ++i) {
      if (margins[i] < rec.margin) {
        rec.margin = margins[i];
        worst = i;
      }
    }
    rec.passed = rec.margin > settings.tol;
    rec.witness["x"] = std::vector<double>(
        points[worst].data(), points[worst].data() + points[worst].size());
    report.add(std::move(rec));
  }

  {
    CheckRecord rec;
    rec.name = "pairwise_disjoint";
    rec.margin = std::numeric_limits<double>::infinity();
    rec.passed = true;
    auto chart_at = [&](const Vector& x) {
      Matrix a(dim, 2);
      a.col(0) = x;
      a.col(1) = base.N(x);
      return ChartPoint(std::move(a));
    };
    for (int p = 0; p < settings.disjoint_pairs; ++p) {
      const Vector x = sample_point();
      const Vector y = sample_point();
      if ((x - y).norm() < 1e-9) continue;
      const ChartPoint cx = chart_at(x);
      const ChartPoint cy = chart_at(y);
      const double scale = cx.A.norm() + cy.A.norm() + 1.0;
      const double separation = min_singular_value(Matrix(cx.A - cy.A)) / scale;
      if (separation < rec.margin) {
        rec.margin = separation;
        rec.witness["x"] = std::vector<double>(x.data(), x.data() + dim);
        rec.witness["y"] = std::vector<double>(y.data(), y.data() + dim);
      }
      if (planes_intersect(cx, cy)) rec.passed = false;
    }
    report.add(std::move(rec));
  }

  {
    CheckRecord rec;
    rec.name = "exterior_agreement";
    rec.margin = 0.0;
    rec.passed = true;
    for (int p = 0; p < 200; ++p) {
      const double r = rng.uniform(outer * (1.0 + 1e-6), 2.0 * outer + 1.0);
      const Vector x = r * rng.unit_vector(dim);
      const double residual = (base.N(x) - base.exterior_linear * x).norm();
      rec.margin = std::max(rec.margin, residual);
      if (residual != 0.0) rec.passed = false;
    }
    report.add(std::move(rec));
  }

  return report;
}

Report verify_fibration(const FibrationBase& F, const VerifySettings& settings) {
  Report report = verify_base_map(base_map_of(F), settings);

  // Recompute the margin from scratch: a tampered certificate (inflated
  // epsilon) must not survive re-verification.
  const TransversalityMargin fresh =
      transversality_margin(F.A(), F.J(), F.margin().grid);
  {
    CheckRecord rec;
    rec.name = "epsilon_reproducible";
    rec.margin = std::abs(F.epsilon() - fresh.epsilon);
    rec.passed = rec.margin <= 1e-6 * (1.0 + fresh.epsilon);
    rec.witness["claimed"] = {F.epsilon()};
    rec.witness["recomputed"] = {fresh.epsilon};
    report.add(std::move(rec));
  }
  {
    CheckRecord rec;
    rec.name = "certificate_inequality";
    const double s = slope_sup(F.bump());
    const double gap = spectral_norm(F.A().matrix() - F.J().matrix());
    const double epsilon = std::min(F.epsilon(), fresh.epsilon);
    rec.margin = epsilon - s * gap;
    rec.passed = s * gap < epsilon;
    rec.witness["slope_sup"] = {s};
    rec.witness["gap"] = {gap};
    rec.witness["epsilon"] = {epsilon};
    report.add(std::move(rec));
  }
  return report;
}

ComplexStructure extend_structure(const ComplexStructure& J_perp,
                                  const OrientedTwoPlane& P) {
  if (J_perp.dim() + 2 != P.ambient_dim()) {
    throw DimensionMismatchError("extend_structure: dimensions disagree");
  }
  const Matrix& E = P.frame();
  const Matrix& F = P.complement_basis();
  Matrix rot90(2, 2);
  rot90 << 0.0, -1.0, 1.0, 0.0;
  Matrix j = E * rot90 * E.transpose() + F * J_perp.matrix() * F.transpose();
  return ComplexStructure(RealLinearMap(std::move(j)));
}

GreatCircle hopf_fibre_through(const ComplexStructure& J, const Vector& v,
                               double tol) {
  if (v.size() != J.dim()) {
    throw DimensionMismatchError("hopf_fibre_through: dimensions disagree");
  }
  if (std::abs(v.norm() - 1.0) > tol) {
    throw NotUnitError("hopf_fibre_through: v must be a unit vector");
  }
  const Vector jv = J.matrix() * v;
  if (!J.orthogonal() || std::abs(jv.norm() - 1.0) > tol ||
      std::abs(v.dot(jv)) > tol) {
    throw NotOrthogonalError("hopf_fibre_through: J must be orthogonal");
  }
  return GreatCircle(OrientedTwoPlane(v, jv / jv.norm()));
}

Eigen::Vector3d hopf_map(const Eigen::Vector4d& x, double tol) {
  if (std::abs(x.norm() - 1.0) > tol) {
    throw NotUnitError("hopf_map: input must lie on the unit 3-sphere");
  }
  Eigen::Vector3d y;
  y(0) = 2.0 * (x(0) * x(2) + x(1) * x(3));
  y(1) = 2.0 * (x(1) * x(2) - x(0) * x(3));
  y(2) = x(0) * x(0) + x(1) * x(1) - x(2) * x(2) - x(3) * x(3);
  return y;
}

}  // namespace forge
