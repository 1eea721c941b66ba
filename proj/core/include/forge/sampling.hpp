#pragma once

#include <cstdint>
#include <vector>

#include "forge/types.hpp"

namespace forge {

/// Deterministic random source. Distributions are hand-rolled on top of
/// mt19937_64 so streams do not depend on the standard library's
/// implementation-defined distribution algorithms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  double uniform01();                            // [0, 1)
  double uniform(double lo, double hi);
  double normal();                               // Box-Muller
  Vector unit_vector(int dim);
  Matrix matrix_uniform(int rows, int cols, double lo, double hi);
  Matrix gaussian_matrix(int rows, int cols);

 private:
  std::uint64_t state_;
  bool have_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

/// Rejection-samples a matrix with entries uniform in [lo, hi] whose
/// spectrum stays at least tol away from the real axis.
RealLinearMap random_no_real_eigenvalue_map(int dim, Rng& rng, double lo = -10.0,
                                            double hi = 10.0, double tol = 1e-6);

/// Haar-ish random orthogonal matrix (QR of a Gaussian matrix with the
/// sign-fixed R diagonal).
Matrix random_orthogonal(int dim, Rng& rng);

/// Random invertible map with 2-norm condition number at most max_cond.
Matrix random_conditioned_invertible(int dim, Rng& rng, double max_cond);

}  // namespace forge
