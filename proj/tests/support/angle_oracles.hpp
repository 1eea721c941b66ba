#pragma once

#include <algorithm>
#include <cmath>
#include <forge/types.hpp>
#include <vector>

namespace forge::testing {

// Brute-force greedy principal angles for real k-planes (k <= 2): the
// smallest angle is found on a discretized circle of unit vectors per
// subspace, then both subspaces are deflated and the last angle is closed
// form. Mirrors the recursive construction rather than any SVD.
inline std::vector<double> greedy_angles_real(const Matrix& basis_p,
                                              const Matrix& basis_q,
                                              int grid = 2000) {
  const int k = static_cast<int>(basis_p.cols());
  std::vector<double> out;
  if (k == 1) {
    const double c = std::abs(basis_p.col(0).dot(basis_q.col(0)));
    out.push_back(std::acos(std::clamp(c, 0.0, 1.0)));
    return out;
  }
  double best = -1.0;
  double best_alpha = 0.0, best_beta = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double alpha = M_PI * i / grid;
    const Vector v =
        std::cos(alpha) * basis_p.col(0) + std::sin(alpha) * basis_p.col(1);
    for (int j = 0; j < grid; ++j) {
      const double beta = M_PI * j / grid;
      const Vector w =
          std::cos(beta) * basis_q.col(0) + std::sin(beta) * basis_q.col(1);
      const double c = std::abs(v.dot(w));
      if (c > best) {
        best = c;
        best_alpha = alpha;
        best_beta = beta;
      }
    }
  }
  out.push_back(std::acos(std::clamp(best, 0.0, 1.0)));
  // deflate both subspaces to the complements of the chosen directions
  const Vector v1 = std::cos(best_alpha) * basis_p.col(0) +
                    std::sin(best_alpha) * basis_p.col(1);
  const Vector w1 = std::cos(best_beta) * basis_q.col(0) +
                    std::sin(best_beta) * basis_q.col(1);
  const Vector v2 = -std::sin(best_alpha) * basis_p.col(0) +
                    std::cos(best_alpha) * basis_p.col(1);
  const Vector w2 = -std::sin(best_beta) * basis_q.col(0) +
                    std::cos(best_beta) * basis_q.col(1);
  const double c2 = std::abs(v2.dot(w2));
  out.push_back(std::acos(std::clamp(c2, 0.0, 1.0)));
  std::sort(out.begin(), out.end());
  return out;
}

// Hermitian angle between two complex lines.
inline double line_angle_complex(const ComplexVector& a, const ComplexVector& b) {
  const double c = std::abs((a.adjoint() * b)(0)) / (a.norm() * b.norm());
  return std::acos(std::clamp(c, 0.0, 1.0));
}

// Angle between a complex line and its conjugate line.
inline double conjugate_line_angle(const ComplexVector& a) {
  return line_angle_complex(a, a.conjugate());
}

}  // namespace forge::testing
