#pragma once

#include <optional>
#include <vector>

#include "forge/fibration.hpp"

namespace forge {

/// A polynomial map R^dim -> R^dim of bounded degree with dense
/// coefficient tensors: coeff[d] has shape [dim][dim]^d (flattened,
/// row-major over the index tuple (j, i1, ..., id)) and contributes
/// coeff[d][j, i1..id] x_{i1} ... x_{id} to output j.
class PolynomialMap {
 public:
  PolynomialMap(int dim, std::vector<std::vector<double>> coeff);

  int dim() const { return dim_; }
  int degree() const { return static_cast<int>(coeff_.size()) - 1; }
  const std::vector<std::vector<double>>& coefficients() const { return coeff_; }

  Vector eval(const Vector& x) const;
  Matrix jacobian(const Vector& x) const;

  /// Linear map x -> m x.
  static PolynomialMap linear(const Matrix& m);

 private:
  int dim_;
  std::vector<std::vector<double>> coeff_;  // coeff_[d].size() == dim^(d+1)
};

/// A germ of a great-circle fibration near the fibre P: a polynomial chart
/// map h : P^perp -> P^perp with h(0) = 0, asserted valid on
/// |x| <= valid_radius.
struct GermSpec {
  int n = 0;  // sphere S^{2n+1}; h acts on R^{2n}
  PolynomialMap h;
  double valid_radius = 0.0;

  GermSpec(int n_, PolynomialMap h_, double valid_radius_);
};

/// The extended fibration: the germ on |x| <= rho/2, the Prop-4 base
/// beyond rho, a bump blend between.
class GermExtension {
 public:
  GermExtension(GermSpec germ, FibrationBase prop4, double rho);

  const GermSpec& germ() const { return germ_; }
  const FibrationBase& prop4() const { return prop4_; }
  double rho() const { return rho_; }
  const BumpProfile& blend() const { return blend_; }

  Vector eval_N(const Vector& x) const;
  Matrix eval_dN_matrix(const Vector& x) const;
  ChartPoint eval_base(const Vector& x) const;

 private:
  GermSpec germ_;
  FibrationBase prop4_;
  double rho_;
  BumpProfile blend_;
};

BaseMap base_map_of(const GermExtension& ext);

std::vector<double> default_radius_schedule();  // 1, 1/2, ..., 2^-10

struct ExtendGermOutcome {
  std::optional<GermExtension> extension;
  Report report;          // accepted attempt's report, plus failure summaries
  double accepted_rho = 0.0;
};

/// Builds the Prop-4 fibration tangent to dh_0, then blends the germ into
/// it at each radius of the schedule until a composite verifies cleanly.
/// Returns the outcome without throwing on schedule exhaustion (the report
/// carries the failures).
ExtendGermOutcome extend_germ_detailed(
    const GermSpec& germ, const OrientedTwoPlane& P,
    const std::vector<double>& schedule = default_radius_schedule(),
    const BumpProfile& base_bump = BumpProfile(), const MarginGrid& grid = {},
    const VerifySettings& verify = {});

/// As above, but throws ExtensionFailedError when no radius passes.
std::pair<GermExtension, Report> extend_germ(
    const GermSpec& germ, const OrientedTwoPlane& P,
    const std::vector<double>& schedule = default_radius_schedule(),
    const BumpProfile& base_bump = BumpProfile(), const MarginGrid& grid = {},
    const VerifySettings& verify = {});

}  // namespace forge
