#pragma once

#include "forge/types.hpp"

namespace forge {

/// A smooth cutoff profile: the base function f is 1 on [0, r0], 0 on
/// [r1, inf) and glides between on the standard exp(-1/x) partition; the
/// effective profile is f_n(s) = f(s^(1/n_exp)), which plateaus on
/// [0, r0^n_exp] and vanishes beyond r1^n_exp.
struct BumpProfile {
  double r0 = 0.25;
  double r1 = 1.0;
  int n_exp = 1;

  BumpProfile() = default;
  BumpProfile(double r0_, double r1_, int n_exp_);

  double inner_radius() const;  // r0^n_exp
  double outer_radius() const;  // r1^n_exp
};

/// f_{n_exp}(s).
double bump_eval(const BumpProfile& b, double s);

/// d/ds f_{n_exp}(s), by the closed-form chain rule.
double bump_slope(const BumpProfile& b, double s);

/// sup over s >= 0 of s |f_n'(s)|, computed on a dense grid over the
/// transition band with golden-section refinement. Scales as S(f)/n_exp.
double slope_sup(const BumpProfile& b);

}  // namespace forge
