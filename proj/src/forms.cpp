#include "milnor/forms.hpp"

#include <cmath>
#include <stdexcept>

namespace milnor {

std::vector<std::vector<int>> increasing_multi_indices(int k, int p) {
  std::vector<std::vector<int>> out;
  if (p < 0 || p > k) return out;
  if (p == 0) {
    out.push_back({});
    return out;
  }
  std::vector<int> mi(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) mi[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(mi);
    int pos = p - 1;
    while (pos >= 0 && mi[static_cast<std::size_t>(pos)] == k - p + pos) --pos;
    if (pos < 0) break;
    ++mi[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < p; ++i)
      mi[static_cast<std::size_t>(i)] = mi[static_cast<std::size_t>(i - 1)] + 1;
  }
  return out;
}

int multi_index_position(int k, const std::vector<int>& mi) {
  const auto all = increasing_multi_indices(k, static_cast<int>(mi.size()));
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i] == mi) return static_cast<int>(i);
  throw std::invalid_argument("multi_index_position: not an increasing multi-index");
}

int FormField::coefficient_count() const {
  return static_cast<int>(increasing_multi_indices(chart_dim, degree).size());
}

FormField function_form(int chart_dim, const std::function<double(const Vec&)>& f) {
  FormField out;
  out.chart_dim = chart_dim;
  out.degree = 0;
  out.coefficients = [f](const Vec& u) {
    Vec v(1);
    v(0) = f(u);
    return v;
  };
  return out;
}

Vec exterior_derivative_value(const FormField& form, const Vec& u, double h) {
  const int k = form.chart_dim;
  if (form.degree + 1 > k)
    throw std::invalid_argument("exterior_derivative: degree overflow");
  const auto upper = increasing_multi_indices(k, form.degree + 1);

  // Cache the 2k shifted coefficient evaluations.
  std::vector<Vec> plus(static_cast<std::size_t>(k)), minus(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a) {
    Vec up = u, um = u;
    up(a) += h;
    um(a) -= h;
    plus[static_cast<std::size_t>(a)] = form.coefficients(up);
    minus[static_cast<std::size_t>(a)] = form.coefficients(um);
  }

  Vec out(static_cast<Eigen::Index>(upper.size()));
  for (std::size_t m = 0; m < upper.size(); ++m) {
    const auto& mi = upper[m];
    double v = 0.0;
    double sign = 1.0;
    for (std::size_t drop = 0; drop < mi.size(); ++drop) {
      std::vector<int> rest;
      for (std::size_t i = 0; i < mi.size(); ++i)
        if (i != drop) rest.push_back(mi[i]);
      const int pos = multi_index_position(k, rest);
      const int a = mi[drop];
      const double deriv = (plus[static_cast<std::size_t>(a)](pos) -
                            minus[static_cast<std::size_t>(a)](pos)) /
                           (2.0 * h);
      v += sign * deriv;
      sign = -sign;
    }
    out(static_cast<Eigen::Index>(m)) = v;
  }
  return out;
}

FormField exterior_derivative(const FormField& form, double h) {
  FormField out;
  out.chart_dim = form.chart_dim;
  out.degree = form.degree + 1;
  out.coefficients = [form, h](const Vec& u) { return exterior_derivative_value(form, u, h); };
  return out;
}

int PeriodicGrid::size() const {
  int n = 1;
  for (int s : shape) n *= s;
  return n;
}

double PeriodicGrid::spacing(int axis) const {
  return (hi(axis) - lo(axis)) / shape[static_cast<std::size_t>(axis)];
}

Vec PeriodicGrid::point(int flat) const {
  const int k = dim();
  Vec u(k);
  for (int a = 0; a < k; ++a) {
    const int s = shape[static_cast<std::size_t>(a)];
    u(a) = lo(a) + spacing(a) * (flat % s);
    flat /= s;
  }
  return u;
}

int PeriodicGrid::neighbour(int flat, int axis, int delta) const {
  int stride = 1;
  for (int a = 0; a < axis; ++a) stride *= shape[static_cast<std::size_t>(a)];
  const int s = shape[static_cast<std::size_t>(axis)];
  const int coord = (flat / stride) % s;
  const int wrapped = ((coord + delta) % s + s) % s;
  return flat + (wrapped - coord) * stride;
}

double DiscreteHodge::inner0(const Vec& f, const Vec& g) const {
  return f.dot(weights0.asDiagonal() * g);
}

double DiscreteHodge::inner1(const Vec& alpha, const Vec& beta) const {
  return alpha.dot(weights1 * beta);
}

DiscreteHodge build_discrete_hodge(const PulledMetric& g, const PeriodicGrid& grid) {
  if (g.maybe_indefinite)
    throw std::invalid_argument("discrete hodge: metric may be indefinite");
  if (g.dim != grid.dim()) throw std::invalid_argument("discrete hodge: dimension mismatch");
  const int n = grid.size();
  const int k = grid.dim();
  if (n * k > 20000)
    throw std::invalid_argument("discrete hodge: grid too large for dense assembly");

  DiscreteHodge hodge;
  hodge.grid = grid;
  hodge.d = RealMat::Zero(k * n, n);
  hodge.weights0 = Vec::Zero(n);
  hodge.weights1 = RealMat::Zero(k * n, k * n);

  for (int j = 0; j < n; ++j) {
    const RealMat gj = g.eval(grid.point(j));
    Eigen::LDLT<RealMat> ldlt(gj);
    const Vec dvec = ldlt.vectorD();
    if (ldlt.info() != Eigen::Success || (dvec.array() <= 0.0).any())
      throw std::runtime_error("discrete hodge: metric not positive definite on the grid");
    const double sqrt_det = std::sqrt(dvec.prod());
    hodge.weights0(j) = sqrt_det;
    const RealMat ginv = gj.inverse();
    for (int a = 0; a < k; ++a) {
      const double inv2h = 1.0 / (2.0 * grid.spacing(a));
      hodge.d(a * n + j, grid.neighbour(j, a, +1)) += inv2h;
      hodge.d(a * n + j, grid.neighbour(j, a, -1)) -= inv2h;
      for (int b = 0; b < k; ++b)
        hodge.weights1(a * n + j, b * n + j) = sqrt_det * ginv(a, b);
    }
  }

  hodge.delta = hodge.weights0.cwiseInverse().asDiagonal() *
                (hodge.d.transpose() * hodge.weights1);
  return hodge;
}

Vec codifferential_1form(const DiscreteHodge& hodge, const Vec& alpha) {
  if (alpha.size() != hodge.delta.cols())
    throw std::invalid_argument("codifferential_1form: size mismatch");
  return hodge.delta * alpha;
}

Vec sample_function(const PeriodicGrid& grid, const std::function<double(const Vec&)>& f) {
  Vec out(grid.size());
  for (int j = 0; j < grid.size(); ++j) out(j) = f(grid.point(j));
  return out;
}

Vec sample_1form(const PeriodicGrid& grid, const std::function<Vec(const Vec&)>& alpha) {
  const int n = grid.size();
  const int k = grid.dim();
  Vec out(n * k);
  for (int j = 0; j < n; ++j) {
    const Vec v = alpha(grid.point(j));
    for (int a = 0; a < k; ++a) out(a * n + j) = v(a);
  }
  return out;
}

}  // namespace milnor
