#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "milnor/milnor_space.hpp"

namespace milnor {

/// Value of a plot: spherical coordinates over a finite index set together
/// with one group element per index.
struct ChartPoint {
  Vec x;
  std::vector<Mat> groups;
};

enum class AxisKind { Spherical, Group };

/// Product-structure annotation of a chart axis. Group axes name the node
/// whose group coordinate they move.
struct AxisRole {
  AxisKind kind = AxisKind::Spherical;
  int node = -1;
};

/// A smooth parametrization of the local model S_I x G^I from a Euclidean
/// box. The box and sample counts drive grid sweeps; the map itself must be
/// evaluable in a 2*step neighbourhood of the box.
struct Plot {
  LieGroupSpec spec;
  Vec lo, hi;
  double step = 1e-4;
  int samples_per_axis = 5;
  std::function<ChartPoint(const Vec&)> map;
  std::vector<AxisRole> axes;  // empty when no product structure is declared

  int dim() const { return static_cast<int>(lo.size()); }
  int nodes() const { return map ? static_cast<int>(map(lo).x.size()) : 0; }
};

/// Largest plot-invariant violation (unit norm, group membership) over the
/// sample grid.
double plot_residual(const Plot& plot);

/// Pullback of the barycentric metric along a plot, evaluated by central
/// differences: G_ab = sum_i d_a x_i d_b x_i + sum_i x_i^2 <theta_i(a), theta_i(b)>.
struct PulledMetric {
  int dim = 0;
  bool maybe_indefinite = false;
  std::function<RealMat(const Vec&)> eval;
};

PulledMetric pullback_metric(const Plot& plot, InnerProductKind kind);

/// Constant Euclidean metric (flat periodic charts, tests).
PulledMetric euclidean_metric(int dim);

/// Barycentric pairing of two tangent data at a point:
/// sum u_i w_i + sum_j x_j^2 <xi_j, eta_j>. Vanishes on kernel directions.
double metric_eval(const MilnorPoint& p, const MilnorTangent& u, const MilnorTangent& w,
                   InnerProductKind kind);
double metric_eval(const MilnorPoint& p, const MilnorTangent& u, const MilnorTangent& w);

/// sup over the sample grid of |pullback(h . plot) - pullback(plot)|_F.
double invariance_residual(const Plot& plot, InnerProductKind kind, const Mat& h);
/// Same for the sign action x -> eps x.
double invariance_residual_z2(const Plot& plot, InnerProductKind kind, int eps);

/// Divergence-form Laplace-Beltrami operator
///   (1/sqrt|G|) d_a ( sqrt|G| G^{ab} d_b f )
/// by nested central differences. Rejects indefinite or near-singular
/// metrics. Eigenfunctions satisfy  Delta f = -lambda f, lambda >= 0.
double laplace_beltrami(const PulledMetric& g, const std::function<double(const Vec&)>& f,
                        const Vec& u, double h);

/// Warped-product split of the Laplacian on a product-structured chart:
///   Delta = Delta_S + sum_i x_i^{-2} Delta_{G,i} + L,
/// with L the first-order operator carrying the spherical derivatives of
/// sqrt|G| (i.e. of the warping weights).
struct WarpedDecomposition {
  double full = 0.0;
  double sphere_part = 0.0;
  double fiber_part = 0.0;     // already includes the x^{-2} weights
  double first_order_part = 0.0;
  double residual = 0.0;
};

WarpedDecomposition warped_decomposition(const Plot& plot, InnerProductKind kind,
                                         const std::function<double(const Vec&)>& f,
                                         const Vec& u);

double warped_decomposition_residual(const Plot& plot, InnerProductKind kind,
                                     const std::function<double(const Vec&)>& f, const Vec& u);

/// Discrete geodesic between chart points: piecewise-linear curve minimizing
/// the segment energy, gradient descent with backtracking line search.
struct GeodesicResult {
  std::vector<Vec> nodes;
  double length = 0.0;
  int iterations = 0;
  double grad_norm = 0.0;
  bool converged = false;
};

GeodesicResult geodesic(const PulledMetric& g, const Vec& p, const Vec& q, int segments,
                        int max_iterations = 10000, double grad_tol = 1e-8);

/// The round 3-sphere as a two-node SO(2) chart: u = (theta, phi_1, phi_2),
/// x = (cos theta, sin theta), fiber generators normalized to unit trace-form
/// length, so the pullback is diag(1, cos^2 theta, sin^2 theta).
Plot s3_chart();

/// Ambient R^4 embedding of the s3_chart coordinates (oracle for geodesic
/// lengths: distance = arccos of the ambient inner product).
Vec s3_ambient(const Vec& u);

/// Two-node SU(2) chart: x = (cos theta, sin theta), one exp-curve axis per
/// node with unit-norm generators.
Plot su2_two_node_chart();

/// Single-node chart (x = 1) moving the group coordinate only:
/// g(u) = base * exp(u_1 X_1) * ... * exp(u_k X_k).
Plot exp_product_chart(const LieGroupSpec& spec, const Mat& base,
                       const std::vector<Mat>& generators);

/// Single-node constant plot (zero pullback metric).
Plot constant_plot(const LieGroupSpec& spec, const Mat& g, int dim);

}  // namespace milnor
