#pragma once

#include <utility>

#include "milnor/lie_group.hpp"

namespace milnor {

inline constexpr double kUnitNormTol = 1e-10;
inline constexpr double kInteriorThreshold = 1e-8;

/// Finite-difference defaults: first derivatives, second derivatives.
inline constexpr double kFdStep1 = 1e-4;
inline constexpr double kFdStep2 = 1e-3;

/// Point of the coordinate sphere S_I: sum x_i^2 = 1.
struct SphericalPoint {
  Vec x;
  static SphericalPoint make(Vec x);
  int dim() const { return static_cast<int>(x.size()); }
};

/// Point of the simplex Delta_I: t_i >= 0, sum t_i = 1.
struct SimplexPoint {
  Vec t;
  static SimplexPoint make(Vec t);
  int dim() const { return static_cast<int>(t.size()); }
};

/// Orthogonal projection of w onto T_x S_I = {v : x.v = 0}.
Vec tangent_project(const SphericalPoint& x, const Vec& w);

/// Normalized-line retraction x -> (x + s v)/|x + s v|; its s-derivative at 0
/// equals v for tangent v.
SphericalPoint sphere_retract(const SphericalPoint& x, const Vec& v, double s);

/// t_i = x_i^2.
SimplexPoint square_map(const SphericalPoint& x);

/// Nonnegative branch x_i = sqrt(t_i).
SphericalPoint sqrt_lift(const SimplexPoint& t);

/// Fisher-Rao pairing sum a_i b_i / t_i at an interior simplex point,
/// for simplex-tangent a, b (components summing to zero).
double fisher_rao_eval(const SimplexPoint& t, const Vec& a, const Vec& b);

/// |g_FR(dt, dt) - 4 |v|^2| with dt_i = 2 x_i v_i: the spherical pullback of
/// the Fisher-Rao metric is four times the Euclidean one, exactly.
double fr_pullback_residual(const SphericalPoint& x, const Vec& v);

/// Central-difference first and second derivatives at s = 0 of
/// s -> (s v)^2. Returns (t'(0), t''(0)); the first vanishes, the second is
/// 2 v^2: activation of a zero coordinate is invisible at first order in the
/// squared coordinates.
std::pair<double, double> quadratic_invisibility(double v);

}  // namespace milnor
