#include "forge/germ.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <memory>

#include "forge/sampling.hpp"

namespace forge {

namespace {

std::size_t int_pow(std::size_t base, int exp) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

PolynomialMap::PolynomialMap(int dim, std::vector<std::vector<double>> coeff)
    : dim_(dim), coeff_(std::move(coeff)) {
  if (dim_ < 1 || coeff_.empty()) {
    throw InvariantViolationError("PolynomialMap: empty coefficient list");
  }
  const auto d = static_cast<std::size_t>(dim_);
  for (size_t deg = 0; deg < coeff_.size(); ++deg) {
    if (coeff_[deg].size() != d * int_pow(d, static_cast<int>(deg))) {
      throw InvariantViolationError(
          "PolynomialMap: coefficient tensor has the wrong shape");
    }
    for (double c : coeff_[deg]) {
      if (!std::isfinite(c)) {
        throw InvariantViolationError("PolynomialMap: non-finite coefficient");
      }
    }
  }
}

Vector PolynomialMap::eval(const Vector& x) const {
  if (x.size() != dim_) {
    throw DimensionMismatchError("PolynomialMap::eval: wrong dimension");
  }
  const auto d = static_cast<std::size_t>(dim_);
  Vector out = Vector::Zero(dim_);
  for (size_t deg = 0; deg < coeff_.size(); ++deg) {
    const std::size_t tuples = int_pow(d, static_cast<int>(deg));
    for (std::size_t tuple = 0; tuple < tuples; ++tuple) {
      double monomial = 1.0;
      std::size_t rest = tuple;
      for (size_t slot = 0; slot < deg; ++slot) {
        monomial *= x(static_cast<Eigen::Index>(rest % d));
        rest /= d;
      }
      for (int j = 0; j < dim_; ++j) {
        out(j) += coeff_[deg][static_cast<std::size_t>(j) * tuples + tuple] *
                  monomial;
      }
    }
  }
  return out;
}

Matrix PolynomialMap::jacobian(const Vector& x) const {
  if (x.size() != dim_) {
    throw DimensionMismatchError("PolynomialMap::jacobian: wrong dimension");
  }
  const auto d = static_cast<std::size_t>(dim_);
  Matrix out = Matrix::Zero(dim_, dim_);
  for (size_t deg = 1; deg < coeff_.size(); ++deg) {
    const std::size_t tuples = int_pow(d, static_cast<int>(deg));
    std::vector<std::size_t> idx(deg);
    for (std::size_t tuple = 0; tuple < tuples; ++tuple) {
      std::size_t rest = tuple;
      for (size_t slot = 0; slot < deg; ++slot) {
        idx[slot] = rest % d;
        rest /= d;
      }
      // d/dx_m of x_{i1}...x_{id}: product rule over the slots.
      for (size_t slot = 0; slot < deg; ++slot) {
        double partial = 1.0;
        for (size_t other = 0; other < deg; ++other) {
          if (other != slot) partial *= x(static_cast<Eigen::Index>(idx[other]));
        }
        const auto m = static_cast<Eigen::Index>(idx[slot]);
        for (int j = 0; j < dim_; ++j) {
          out(j, m) += coeff_[deg][static_cast<std::size_t>(j) * tuples + tuple] *
                       partial;
        }
      }
    }
  }
  return out;
}

PolynomialMap PolynomialMap::linear(const Matrix& m) {
  const int dim = static_cast<int>(m.rows());
  std::vector<std::vector<double>> coeff(2);
  coeff[0].assign(static_cast<std::size_t>(dim), 0.0);
  coeff[1].resize(static_cast<std::size_t>(dim) * dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) {
      coeff[1][static_cast<std::size_t>(j) * dim + i] = m(j, i);
    }
  }
  return PolynomialMap(dim, std::move(coeff));
}

GermSpec::GermSpec(int n_, PolynomialMap h_, double valid_radius_)
    : n(n_), h(std::move(h_)), valid_radius(valid_radius_) {
  if (n < 1 || h.dim() != 2 * n) {
    throw InvariantViolationError("GermSpec: h must act on R^{2n}");
  }
  if (!(valid_radius > 0.0)) {
    throw InvariantViolationError("GermSpec: valid_radius must be positive");
  }
  if (h.eval(Vector::Zero(2 * n)).norm() > 1e-12) {
    throw GermInvalidError("GermSpec: the germ must fix the fibre, h(0) = 0");
  }
}

GermExtension::GermExtension(GermSpec germ, FibrationBase prop4, double rho)
    : germ_(std::move(germ)),
      prop4_(std::move(prop4)),
      rho_(rho),
      blend_(rho / 2.0, rho, 1) {
  if (germ_.n != prop4_.n()) {
    throw DimensionMismatchError("GermExtension: dimensions disagree");
  }
}

Vector GermExtension::eval_N(const Vector& x) const {
  const double g = bump_eval(blend_, x.norm());
  if (g == 0.0) return prop4_.eval_N(x);
  if (g == 1.0) return germ_.h.eval(x);
  return g * germ_.h.eval(x) + (1.0 - g) * prop4_.eval_N(x);
}

Matrix GermExtension::eval_dN_matrix(const Vector& x) const {
  const double s = x.norm();
  const double g = bump_eval(blend_, s);
  const double gp = bump_slope(blend_, s);
  if (g == 0.0 && gp == 0.0) return prop4_.eval_dN_matrix(x);
  Matrix m = g * germ_.h.jacobian(x) + (1.0 - g) * prop4_.eval_dN_matrix(x);
  if (gp != 0.0 && s > 0.0) {
    const Vector radial = germ_.h.eval(x) - prop4_.eval_N(x);
    m += (gp / s) * radial * x.transpose();
  }
  return m;
}

ChartPoint GermExtension::eval_base(const Vector& x) const {
  Matrix a(x.size(), 2);
  a.col(0) = x;
  a.col(1) = eval_N(x);
  return ChartPoint(std::move(a));
}

BaseMap base_map_of(const GermExtension& ext) {
  auto shared = std::make_shared<GermExtension>(ext);
  BaseMap base;
  base.N = [shared](const Vector& x) { return shared->eval_N(x); };
  base.dN = [shared](const Vector& x) { return shared->eval_dN_matrix(x); };
  base.exterior_linear = shared->prop4().J().matrix();
  base.exterior_radius =
      std::max(shared->rho(), shared->prop4().bump().outer_radius());
  base.dim = 2 * shared->germ().n;
  return base;
}

std::vector<double> default_radius_schedule() {
  std::vector<double> out;
  double rho = 1.0;
  for (int i = 0; i <= 10; ++i) {
    out.push_back(rho);
    rho /= 2.0;
  }
  return out;
}

ExtendGermOutcome extend_germ_detailed(const GermSpec& germ,
                                       const OrientedTwoPlane& P,
                                       const std::vector<double>& schedule,
                                       const BumpProfile& base_bump,
                                       const MarginGrid& grid,
                                       const VerifySettings& verify) {
  const int dim = 2 * germ.n;
  const RealLinearMap dh0(germ.h.jacobian(Vector::Zero(dim)));
  if (has_real_eigenvalue(dh0)) {
    throw RealEigenvalueError(
        "extend_germ: dh_0 has a real eigenvalue, the germ plane is not "
        "transverse to the bad cone");
  }
  // The germ must be a fibration germ throughout its asserted region.
  {
    Rng rng(verify.seed ^ 0x6765726d00ULL);
    for (int i = 0; i < 500; ++i) {
      const Vector x =
          rng.uniform(0.0, germ.valid_radius) * rng.unit_vector(dim);
      if (has_real_eigenvalue(RealLinearMap(germ.h.jacobian(x)), verify.tol)) {
        throw GermInvalidError(
            "extend_germ: dh_x acquires a real eigenvalue inside the valid "
            "radius");
      }
    }
  }

  const FibrationBase prop4 = build_fibration(dh0, P, base_bump, grid);

  ExtendGermOutcome outcome;
  Report failures;
  for (double rho : schedule) {
    if (rho > germ.valid_radius) continue;
    GermExtension candidate(germ, prop4, rho);
    Report attempt = verify_base_map(base_map_of(candidate), verify);

    // The composite must coincide with the germ where the blend is 1.
    {
      CheckRecord rec;
      rec.name = "interior_matches_germ";
      rec.margin = 0.0;
      rec.passed = true;
      Rng rng(verify.seed ^ 0x696e746572696f72ULL);
      for (int i = 0; i < 200; ++i) {
        const Vector x = rng.uniform(0.0, rho / 2.0) * rng.unit_vector(dim);
        const double residual =
            (candidate.eval_N(x) - germ.h.eval(x)).norm();
        rec.margin = std::max(rec.margin, residual);
        if (residual != 0.0) rec.passed = false;
      }
      attempt.add(std::move(rec));
    }

    if (attempt.overall_pass()) {
      CheckRecord rec;
      rec.name = "accepted_radius";
      rec.passed = true;
      rec.margin = rho;
      attempt.add(std::move(rec));
      outcome.extension = std::move(candidate);
      outcome.accepted_rho = rho;
      outcome.report = std::move(attempt);
      outcome.report.absorb(failures, "failed_");
      return outcome;
    }
    char label[64];
    std::snprintf(label, sizeof(label), "rho_%.6g_", rho);
    failures.absorb(attempt, label);
  }
  outcome.report = std::move(failures);
  return outcome;
}

std::pair<GermExtension, Report> extend_germ(const GermSpec& germ,
                                             const OrientedTwoPlane& P,
                                             const std::vector<double>& schedule,
                                             const BumpProfile& base_bump,
                                             const MarginGrid& grid,
                                             const VerifySettings& verify) {
  ExtendGermOutcome outcome =
      extend_germ_detailed(germ, P, schedule, base_bump, grid, verify);
  if (!outcome.extension) {
    throw ExtensionFailedError(
        "extend_germ: no radius in the schedule produced a clean report");
  }
  return {std::move(*outcome.extension), std::move(outcome.report)};
}

}  // namespace forge
