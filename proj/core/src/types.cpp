#include "forge/types.hpp"

#include <cmath>

namespace forge {

bool all_finite(const Matrix& m) { return m.allFinite(); }

bool all_finite(const ComplexMatrix& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

RealLinearMap::RealLinearMap(Matrix entries) : mat_(std::move(entries)) {
  if (mat_.rows() != mat_.cols()) {
    throw InvariantViolationError("RealLinearMap: matrix must be square");
  }
  if (mat_.rows() < 2 || mat_.rows() % 2 != 0) {
    throw InvariantViolationError(
        "RealLinearMap: dimension must be even and at least 2");
  }
  if (!all_finite(mat_)) {
    throw InvariantViolationError("RealLinearMap: entries must be finite");
  }
}

}  // namespace forge
