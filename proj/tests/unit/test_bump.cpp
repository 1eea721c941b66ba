#include <cmath>
#include <forge/bump.hpp>

#include "doctest.h"

using namespace forge;

namespace {

// Independent slope-sup oracle: finite differences of bump_eval on a dense
// grid in s, refined by a parabolic step. Uses no code from bump_slope or
// slope_sup.
double slope_sup_oracle(const BumpProfile& b) {
  const double lo = b.inner_radius();
  const double hi = b.outer_radius();
  auto value = [&](double s) {
    const double h = 1e-7 * (1.0 + s);
    const double fp = (bump_eval(b, s + h) - bump_eval(b, s - h)) / (2.0 * h);
    return s * std::abs(fp);
  };
  const int grid = 200000;
  double best = 0.0;
  double best_s = lo;
  for (int i = 1; i < grid; ++i) {
    const double s = lo + (hi - lo) * i / grid;
    const double v = value(s);
    if (v > best) {
      best = v;
      best_s = s;
    }
  }
  // parabolic refinement around the best sample
  const double step = (hi - lo) / grid;
  for (double h = step; h > 1e-10 * (hi - lo); h /= 2.0) {
    const double left = value(best_s - h);
    const double right = value(best_s + h);
    if (left > best) {
      best = left;
      best_s -= h;
    } else if (right > best) {
      best = right;
      best_s += h;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("bump plateau and support") {
  const BumpProfile b(0.25, 1.0, 2);
  CHECK(bump_eval(b, 0.0) == 1.0);
  CHECK(bump_eval(b, 0.5 * b.inner_radius()) == 1.0);
  CHECK(bump_eval(b, b.outer_radius() * 1.001) == 0.0);
  CHECK(bump_eval(b, 10.0) == 0.0);
  CHECK(bump_slope(b, 0.5 * b.inner_radius()) == 0.0);
  CHECK(bump_slope(b, 2.0 * b.outer_radius()) == 0.0);
  // monotone nonincreasing with values in [0, 1]
  double prev = 1.0;
  for (int i = 0; i <= 400; ++i) {
    const double s = 1.2 * b.outer_radius() * i / 400;
    const double v = bump_eval(b, s);
    CHECK(v <= 1.0);
    CHECK(v >= 0.0);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
}

TEST_CASE("bump_slope matches finite differences of bump_eval") {
  for (int n : {1, 2, 4}) {
    const BumpProfile b(0.25, 1.0, n);
    for (int i = 1; i < 60; ++i) {
      const double s = 1.5 * b.outer_radius() * i / 60;
      const double h = 1e-7 * (1.0 + s);
      const double fd = (bump_eval(b, s + h) - bump_eval(b, s - h)) / (2.0 * h);
      CHECK(bump_slope(b, s) == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
    }
  }
}

TEST_CASE("slope_sup agrees with the finite-difference oracle") {
  for (int n : {1, 2, 3}) {
    const BumpProfile b(0.25, 1.0, n);
    const double fast = slope_sup(b);
    const double slow = slope_sup_oracle(b);
    CHECK(fast == doctest::Approx(slow).epsilon(1e-5));
  }
}

TEST_CASE("slope_sup baseline value for the default profile") {
  // frozen from the finite-difference oracle on the default r0 = 1/4,
  // r1 = 1 profile
  const double baseline = slope_sup(BumpProfile(0.25, 1.0, 1));
  CHECK(baseline == doctest::Approx(0.97993429456).epsilon(1e-6));
}

TEST_CASE("the rescaled family divides the slope bound by n") {
  const double base = slope_sup(BumpProfile(0.25, 1.0, 1));
  for (int n = 1; n <= 6; ++n) {
    const double sn = slope_sup(BumpProfile(0.25, 1.0, n));
    CHECK(std::abs(sn - base / n) / (base / n) < 1e-6);
  }
}

TEST_CASE("narrowing the transition band raises the slope bound") {
  const double wide = slope_sup(BumpProfile(0.25, 1.0, 1));
  const double narrow = slope_sup(BumpProfile(0.8, 1.0, 1));
  CHECK(narrow > wide);
}
