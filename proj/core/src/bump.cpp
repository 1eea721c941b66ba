#include "forge/bump.hpp"

#include <cmath>

namespace forge {

namespace {

// phi(x) = exp(-1/x) for x > 0, extended by 0: the standard smooth step
// ingredient.
double phi(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

double phi_prime(double x) {
  if (x <= 0.0) return 0.0;
  const double e = std::exp(-1.0 / x);
  return e / (x * x);
}

// g(u) = phi(u) / (phi(u) + phi(1-u)): 0 at u<=0, 1 at u>=1, smooth.
double smooth_step(double u) {
  const double a = phi(u);
  const double b = phi(1.0 - u);
  return a / (a + b);
}

double smooth_step_prime(double u) {
  const double a = phi(u);
  const double b = phi(1.0 - u);
  const double da = phi_prime(u);
  const double db = -phi_prime(1.0 - u);
  const double denom = (a + b) * (a + b);
  return (da * b - a * db) / denom;
}

}  // namespace

BumpProfile::BumpProfile(double r0_, double r1_, int n_exp_)
    : r0(r0_), r1(r1_), n_exp(n_exp_) {
  if (!(r0 > 0.0) || !(r1 > r0) || n_exp < 1) {
    throw InvariantViolationError("BumpProfile: need 0 < r0 < r1, n_exp >= 1");
  }
}

double BumpProfile::inner_radius() const { return std::pow(r0, n_exp); }
double BumpProfile::outer_radius() const { return std::pow(r1, n_exp); }

double bump_eval(const BumpProfile& b, double s) {
  if (s < 0.0) throw std::invalid_argument("bump_eval: s must be >= 0");
  const double sigma = b.n_exp == 1 ? s : std::pow(s, 1.0 / b.n_exp);
  if (sigma <= b.r0) return 1.0;
  if (sigma >= b.r1) return 0.0;
  return smooth_step((b.r1 - sigma) / (b.r1 - b.r0));
}

double bump_slope(const BumpProfile& b, double s) {
  if (s < 0.0) throw std::invalid_argument("bump_slope: s must be >= 0");
  const double sigma = b.n_exp == 1 ? s : std::pow(s, 1.0 / b.n_exp);
  if (sigma <= b.r0 || sigma >= b.r1) return 0.0;
  const double u = (b.r1 - sigma) / (b.r1 - b.r0);
  const double f_prime_sigma = -smooth_step_prime(u) / (b.r1 - b.r0);
  if (b.n_exp == 1) return f_prime_sigma;
  // d/ds f(s^(1/n)) = f'(sigma) * sigma^(1-n) / n with sigma = s^(1/n).
  return f_prime_sigma * std::pow(sigma, 1 - b.n_exp) / b.n_exp;
}

double slope_sup(const BumpProfile& b) {
  // s |f_n'(s)| vanishes off the transition band; sample it uniformly in
  // sigma = s^(1/n) where the band has fixed width.
  const int kGrid = 4001;
  auto value_at_sigma = [&](double sigma) {
    const double s = std::pow(sigma, b.n_exp);
    return s * std::abs(bump_slope(b, s));
  };
  double best_sigma = b.r0;
  double best = 0.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double sigma = b.r0 + (b.r1 - b.r0) * i / kGrid;
    const double v = value_at_sigma(sigma);
    if (v > best) {
      best = v;
      best_sigma = sigma;
    }
  }
  // Golden-section refinement around the best grid point.
  const double step = (b.r1 - b.r0) / kGrid;
  double lo = std::max(b.r0, best_sigma - step);
  double hi = std::min(b.r1, best_sigma + step);
  const double inv_golden = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_golden * (hi - lo);
  double x2 = lo + inv_golden * (hi - lo);
  double f1 = value_at_sigma(x1);
  double f2 = value_at_sigma(x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_golden * (hi - lo);
      f2 = value_at_sigma(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_golden * (hi - lo);
      f1 = value_at_sigma(x1);
    }
  }
  return std::max(best, std::max(f1, f2));
}

}  // namespace forge
