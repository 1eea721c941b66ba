#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "forge/bump.hpp"
#include "forge/grassmann.hpp"
#include "forge/report.hpp"
#include "forge/structures.hpp"
#include "forge/types.hpp"

namespace forge {

struct MarginGrid {
  int t_points = defaults::kMarginTGrid;
  int direction_starts = defaults::kMarginDirectionStarts;
  int descent_iterations = 120;
  std::uint64_t seed = 0;
};

struct MarginWitness {
  double t = 0.0;
  Vector v;
};

struct TransversalityMargin {
  double epsilon = 0.0;
  MarginWitness witness;
  MarginGrid grid;
};

/// Certified lower bound (by sampling plus local descent) for
/// min over t in [0,1], unit v, real lambda of |(tA + (1-t)J) v - lambda v|.
/// Positive by compactness whenever J shares the conjugate split of A.
TransversalityMargin transversality_margin(const RealLinearMap& A,
                                           const ComplexStructure& J,
                                           const MarginGrid& grid = {});

/// The data of a constructed great-circle fibration of S^{2n+1}: the base
/// is the graph of N(x) = f(|x|) A x + (1 - f(|x|)) J x over P^perp, glued
/// to the Hopf base of J outside the bump support.
class FibrationBase {
 public:
  FibrationBase(int n, RealLinearMap A, ComplexStructure J, BumpProfile bump,
                TransversalityMargin margin, OrientedTwoPlane P);

  int n() const { return n_; }
  const RealLinearMap& A() const { return a_; }
  const ComplexStructure& J() const { return j_; }
  const BumpProfile& bump() const { return bump_; }
  double epsilon() const { return margin_.epsilon; }
  const TransversalityMargin& margin() const { return margin_; }
  const OrientedTwoPlane& plane() const { return p_; }

  Vector eval_N(const Vector& x) const;
  Matrix eval_dN_matrix(const Vector& x) const;

 private:
  int n_;
  RealLinearMap a_;
  ComplexStructure j_;
  BumpProfile bump_;
  TransversalityMargin margin_;
  OrientedTwoPlane p_;
};

/// Builds the certified fibration tangent to the graph of A at P: computes
/// J_A, the transversality margin, and the smallest bump exponent with
/// slope_sup(f_n) ||A - J||_2 < epsilon.
FibrationBase build_fibration(const RealLinearMap& A, const OrientedTwoPlane& P,
                              const BumpProfile& base_bump = BumpProfile(),
                              const MarginGrid& grid = {},
                              int exponent_cap = defaults::kBumpExponentCap);

ChartPoint eval_base(const FibrationBase& F, const Vector& x);
RealLinearMap eval_dN(const FibrationBase& F, const Vector& x);

/// A base-space presentation shared by Prop-4 fibrations and germ
/// composites: the graph of N with its analytic differential, agreeing
/// with the linear Hopf base x -> exterior_linear x outside
/// exterior_radius.
struct BaseMap {
  std::function<Vector(const Vector&)> N;
  std::function<Matrix(const Vector&)> dN;
  Matrix exterior_linear;
  double exterior_radius = 0.0;
  int dim = 0;  // 2n
};

BaseMap base_map_of(const FibrationBase& F);

struct VerifySettings {
  int eigen_samples = 10000;
  int disjoint_pairs = 500;
  double tol = defaults::kRealEigTol;
  std::uint64_t seed = 0;
};

/// Samples the base map across the plateau, transition and exterior
/// regimes and reports: no real eigenvalues of dN, pairwise disjointness
/// of graph planes, and exact exterior agreement with the Hopf base.
/// Failures become report records, never exceptions.
Report verify_base_map(const BaseMap& base, const VerifySettings& settings);
Report verify_fibration(const FibrationBase& F, const VerifySettings& settings = {});

/// Ambient complex structure on R^{2n+2} rotating P by 90 degrees within
/// itself and acting as J_perp on the complement.
ComplexStructure extend_structure(const ComplexStructure& J_perp,
                                  const OrientedTwoPlane& P);

/// The oriented unit circle through v of the J-complex line spanned by
/// {v, Jv}; J must be orthogonal.
GreatCircle hopf_fibre_through(const ComplexStructure& J, const Vector& v,
                               double tol = 1e-9);

/// The classical S^3 -> S^2 map
///   y1 = 2 (x1 x3 + x2 x4),
///   y2 = 2 (x2 x3 - x1 x4),
///   y3 = x1^2 + x2^2 - x3^2 - x4^2.
Eigen::Vector3d hopf_map(const Eigen::Vector4d& x, double tol = 1e-9);

}  // namespace forge
