#pragma once

#include <Eigen/Core>
#include <complex>

#include "forge/errors.hpp"

namespace forge {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

namespace defaults {
inline constexpr double kRealEigTol = 1e-9;
inline constexpr double kOrthTol = 1e-8;
inline constexpr double kIntersectTol = 1e-8;
inline constexpr double kChartTol = 1e-9;
inline constexpr int kMarginTGrid = 101;
inline constexpr int kMarginDirectionStarts = 64;
inline constexpr int kBumpExponentCap = 4096;
}  // namespace defaults

bool all_finite(const Matrix& m);
bool all_finite(const ComplexMatrix& m);

/// A square real matrix of even dimension 2n, the ambient object for the
/// maps T, A and the complex structures acting on P^perp.
class RealLinearMap {
 public:
  explicit RealLinearMap(Matrix entries);

  int dim() const { return static_cast<int>(mat_.rows()); }
  int half_dim() const { return dim() / 2; }
  const Matrix& matrix() const { return mat_; }

 private:
  Matrix mat_;
};

}  // namespace forge
