#pragma once

#include <functional>
#include <vector>

#include "milnor/chart.hpp"

namespace milnor {

/// Increasing multi-indices of length p over axes 0..k-1, lexicographic.
std::vector<std::vector<int>> increasing_multi_indices(int k, int p);

/// Position of a sorted multi-index in the lexicographic enumeration.
int multi_index_position(int k, const std::vector<int>& mi);

/// Differential form on a chart, stored through coefficients over increasing
/// multi-indices (antisymmetry holds by the storage convention).
struct FormField {
  int chart_dim = 0;
  int degree = 0;
  std::function<Vec(const Vec&)> coefficients;

  int coefficient_count() const;
};

FormField function_form(int chart_dim, const std::function<double(const Vec&)>& f);

/// Coefficients of (d omega)(u) by antisymmetrized central differences.
Vec exterior_derivative_value(const FormField& form, const Vec& u, double h);

/// d omega as a form field (each evaluation differentiates numerically).
FormField exterior_derivative(const FormField& form, double h);

/// Flat uniform periodic grid over a box (axis length = hi - lo, the
/// endpoint identified with the start).
struct PeriodicGrid {
  Vec lo, hi;
  std::vector<int> shape;

  int dim() const { return static_cast<int>(shape.size()); }
  int size() const;
  double spacing(int axis) const;
  Vec point(int flat) const;
  int neighbour(int flat, int axis, int delta) const;  // periodic wrap
};

/// Discrete Hodge data on a periodic grid: central-difference d on functions
/// and its formal adjoint under the metric volume weights. The adjointness
/// identity <d f, alpha> = <f, delta alpha> is exact by construction.
struct DiscreteHodge {
  PeriodicGrid grid;
  RealMat d;            // (k*N) x N
  Vec weights0;         // N, sqrt|G| per node
  RealMat weights1;     // (k*N) x (k*N) block-diagonal sqrt|G| G^{-1}
  RealMat delta;        // N x (k*N)

  double inner0(const Vec& f, const Vec& g) const;
  double inner1(const Vec& alpha, const Vec& beta) const;
};

DiscreteHodge build_discrete_hodge(const PulledMetric& g, const PeriodicGrid& grid);

/// delta alpha for a discrete 1-form (k*N values, axis-major blocks).
Vec codifferential_1form(const DiscreteHodge& hodge, const Vec& alpha);

/// Sample a smooth function / 1-form on the grid.
Vec sample_function(const PeriodicGrid& grid, const std::function<double(const Vec&)>& f);
Vec sample_1form(const PeriodicGrid& grid,
                 const std::function<Vec(const Vec&)>& alpha);

}  // namespace milnor
