#include "milnor/sphere.hpp"

#include <cmath>
#include <stdexcept>

namespace milnor {

SphericalPoint SphericalPoint::make(Vec x) {
  if (x.size() == 0) throw std::invalid_argument("spherical point: empty vector");
  const double r = std::abs(x.squaredNorm() - 1.0);
  if (r > kUnitNormTol)
    throw std::invalid_argument("spherical point: |sum x_i^2 - 1| = " + std::to_string(r));
  return SphericalPoint{std::move(x)};
}

SimplexPoint SimplexPoint::make(Vec t) {
  if (t.size() == 0) throw std::invalid_argument("simplex point: empty vector");
  if (t.minCoeff() < -1e-12)
    throw std::invalid_argument("simplex point: negative coordinate");
  if (std::abs(t.sum() - 1.0) > kUnitNormTol)
    throw std::invalid_argument("simplex point: coordinates must sum to 1");
  return SimplexPoint{std::move(t)};
}

Vec tangent_project(const SphericalPoint& x, const Vec& w) {
  if (w.size() != x.x.size())
    throw std::invalid_argument("tangent_project: dimension mismatch");
  return w - x.x.dot(w) * x.x;
}

SphericalPoint sphere_retract(const SphericalPoint& x, const Vec& v, double s) {
  if (v.size() != x.x.size())
    throw std::invalid_argument("sphere_retract: dimension mismatch");
  const Vec y = x.x + s * v;
  const double n = y.norm();
  if (n < 1e-12) throw std::invalid_argument("sphere_retract: vanishing norm");
  return SphericalPoint{y / n};
}

SimplexPoint square_map(const SphericalPoint& x) {
  Vec t = x.x.array().square();
  t /= t.sum();  // absorb last-ulp drift so the result is an exact simplex point
  return SimplexPoint{std::move(t)};
}

SphericalPoint sqrt_lift(const SimplexPoint& t) {
  if (t.t.minCoeff() < -1e-12)
    throw std::invalid_argument("sqrt_lift: negative simplex coordinate");
  Vec x = t.t.cwiseMax(0.0).array().sqrt();
  return SphericalPoint{x / x.norm()};
}

double fisher_rao_eval(const SimplexPoint& t, const Vec& a, const Vec& b) {
  if (a.size() != t.t.size() || b.size() != t.t.size())
    throw std::invalid_argument("fisher_rao_eval: dimension mismatch");
  if (t.t.minCoeff() < kInteriorThreshold)
    throw std::invalid_argument("fisher_rao_eval: point is on the simplex boundary");
  return (a.array() * b.array() / t.t.array()).sum();
}

double fr_pullback_residual(const SphericalPoint& x, const Vec& v) {
  if (v.size() != x.x.size())
    throw std::invalid_argument("fr_pullback_residual: dimension mismatch");
  if (x.x.minCoeff() < kInteriorThreshold)
    throw std::invalid_argument("fr_pullback_residual: point must be strictly interior");
  const Vec dt = 2.0 * x.x.array() * v.array();
  const double fr = fisher_rao_eval(square_map(x), dt, dt);
  return std::abs(fr - 4.0 * v.squaredNorm());
}

std::pair<double, double> quadratic_invisibility(double v) {
  const auto t = [v](double s) { return (s * v) * (s * v); };
  const double h1 = kFdStep1;
  const double h2 = kFdStep2;
  const double first = (t(h1) - t(-h1)) / (2.0 * h1);
  const double second = (t(h2) - 2.0 * t(0.0) + t(-h2)) / (h2 * h2);
  return {first, second};
}

}  // namespace milnor
