#pragma once

#include "forge/angles.hpp"
#include "forge/numeric.hpp"
#include "forge/types.hpp"

namespace forge {

/// A linear complex structure: J^2 = -I. The orthogonal flag records
/// whether J is additionally an orthogonal transformation.
class ComplexStructure {
 public:
  explicit ComplexStructure(RealLinearMap map, double tol = defaults::kOrthTol);

  /// Block-diagonal 90-degree rotations pairing coordinates (1,2), (3,4), ...
  static ComplexStructure standard(int dim);

  const RealLinearMap& map() const { return map_; }
  const Matrix& matrix() const { return map_.matrix(); }
  int dim() const { return map_.dim(); }
  bool orthogonal() const { return orthogonal_; }

 private:
  RealLinearMap map_;
  bool orthogonal_;
};

/// The structure J_T acting as +i on V_C^+ and -i on V_C^-, realized as
/// the real part of i (Pi+ - Pi-) for the oblique split projectors. The
/// imaginary part must vanish and is checked, not discarded.
ComplexStructure make_complex_structure(const RealLinearMap& T,
                                        double tol = defaults::kRealEigTol);

/// The segment (1-t) T + t J_T; free of real eigenvalues for all t in [0,1].
RealLinearMap mckay_path(const RealLinearMap& T, double t,
                         double tol = defaults::kRealEigTol);

/// True iff ||J^T J - I|| < tol, cross-checked against the equivalent
/// characterization max |v . Jv| / |v|^2 < tol on a deterministic sample of
/// directions.
bool is_orthogonal_structure(const ComplexStructure& J,
                             double tol = defaults::kOrthTol);

/// Largest Hermitian inner product magnitude between orthonormal bases of
/// V_C^+(J) and V_C^-(J); vanishes exactly when J is orthogonal.
double split_orthogonality_defect(const ComplexStructure& J);

/// The scissors deformation precomputed once for a structure J, evaluable
/// at any t. Exposes the profile-driven rebuild so a caller can substitute
/// an equal-angle re-mixed profile.
class ScissorsPath {
 public:
  explicit ScissorsPath(const ComplexStructure& J);
  ScissorsPath(const ComplexStructure& J, const AngleProfile& profile);

  ComplexStructure eval(double t) const;
  const AngleProfile& profile() const { return profile_; }

 private:
  int dim_;
  AngleProfile profile_;
  ConjugatePairFrames frames_;
};

/// Opens the conjugate split of J to orthogonality: each pair angle
/// beta_i = theta_i / 2 moves linearly to pi/4. At t=0 this is J, at t=1
/// an orthogonal complex structure; every intermediate stage is a complex
/// structure with real entries.
ComplexStructure open_scissors(const ComplexStructure& J, double t);

/// The two-stage retraction of Theorem A: the segment to J_T on [0, 1/2],
/// then the scissors opening on [1/2, 1].
class RetractionPath {
 public:
  explicit RetractionPath(const RealLinearMap& T,
                          double tol = defaults::kRealEigTol);

  RealLinearMap eval(double t) const;
  const ComplexStructure& complex_structure() const { return j_; }
  /// ||scissors(J_T, 0) - J_T||: the numerical seam at t = 1/2.
  double junction_residual() const;

  static constexpr double kStructureReachedAt = 0.5;

 private:
  RealLinearMap t_;
  ComplexStructure j_;
  ScissorsPath scissors_;
};

RealLinearMap full_retraction(const RealLinearMap& T, double t,
                              double tol = defaults::kRealEigTol);

}  // namespace forge
