#pragma once

#include <functional>
#include <vector>

#include "milnor/chart.hpp"
#include "milnor/forms.hpp"

namespace milnor {

/// Algebra-valued 1-form on a chart: one algebra element per axis.
struct ConnectionField {
  int chart_dim = 0;
  LieGroupSpec spec;
  std::function<std::vector<Mat>(const Vec&)> components;
};

/// Barycentric connection Theta = sum_i x_i^2 theta_i assembled from the
/// Maurer-Cartan pullbacks of a plot.
ConnectionField connection_form(const Plot& plot);

/// Curvature values F_ab = d_a Theta_b - d_b Theta_a + [Theta_a, Theta_b]
/// at u, for increasing pairs (a < b), central differences with step h.
std::vector<Mat> curvature(const ConnectionField& theta, const Vec& u, double h);

/// Frobenius norm of (dF + [Theta ^ F]) over increasing triples; O(h) for
/// smooth connections since the continuum identity is exact.
double bianchi_residual(const ConnectionField& theta, const Vec& u, double h);

/// tr(F^k) coefficient array over increasing 2k-tuples, plus the norm of its
/// numerical exterior derivative (closedness residual, O(h); negative when
/// the chart has no room for the d-check).
struct ChernValue {
  Eigen::VectorXcd coefficients;  // over increasing multi-indices of length 2k
  double closedness_residual = -1.0;
};

ChernValue chern_form(const ConnectionField& theta, int power, const Vec& u, double h);

}  // namespace milnor
