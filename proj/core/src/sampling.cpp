#include "forge/sampling.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "forge/numeric.hpp"

namespace forge {

namespace {
std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

Rng::Rng(std::uint64_t seed) : state_(seed) {
  // Warm the state so small seeds decorrelate.
  for (int i = 0; i < 4; ++i) splitmix64(state_);
}

std::uint64_t Rng::next_u64() { return splitmix64(state_); }

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

double Rng::normal() {
  if (have_cached_normal_) {
    have_cached_normal_ = false;
    return cached_normal_;
  }
  double u1 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  cached_normal_ = r * std::sin(2.0 * M_PI * u2);
  have_cached_normal_ = true;
  return r * std::cos(2.0 * M_PI * u2);
}

Vector Rng::unit_vector(int dim) {
  Vector v(dim);
  double n = 0.0;
  do {
    for (int i = 0; i < dim; ++i) v(i) = normal();
    n = v.norm();
  } while (n < 1e-12);
  return v / n;
}

Matrix Rng::matrix_uniform(int rows, int cols, double lo, double hi) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = uniform(lo, hi);
  }
  return m;
}

Matrix Rng::gaussian_matrix(int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = normal();
  }
  return m;
}

RealLinearMap random_no_real_eigenvalue_map(int dim, Rng& rng, double lo,
                                            double hi, double tol) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    RealLinearMap candidate(rng.matrix_uniform(dim, dim, lo, hi));
    if (!has_real_eigenvalue(candidate, tol)) return candidate;
  }
  throw Error("random_no_real_eigenvalue_map: rejection sampling stalled");
}

Matrix random_orthogonal(int dim, Rng& rng) {
  return orthonormalize(rng.gaussian_matrix(dim, dim));
}

Matrix random_conditioned_invertible(int dim, Rng& rng, double max_cond) {
  const Matrix q1 = random_orthogonal(dim, rng);
  const Matrix q2 = random_orthogonal(dim, rng);
  Vector d(dim);
  for (int i = 0; i < dim; ++i) d(i) = rng.uniform(1.0, max_cond);
  d(0) = 1.0;
  d(dim - 1) = max_cond;  // pin the condition number
  return q1 * d.asDiagonal() * q2;
}

}  // namespace forge
