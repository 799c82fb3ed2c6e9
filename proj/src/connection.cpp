#include "milnor/connection.hpp"

#include <cmath>
#include <stdexcept>

namespace milnor {

namespace {

int merge_sign(const std::vector<int>& first, const std::vector<int>& second) {
  std::vector<int> seq = first;
  seq.insert(seq.end(), second.begin(), second.end());
  int inversions = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

/// Coefficient-level wedge of matrix-valued forms (shuffle formula over
/// increasing multi-indices, matrix product on values).
std::vector<Mat> wedge(const std::vector<Mat>& a, int deg_a, const std::vector<Mat>& b,
                       int deg_b, int k) {
  const auto out_idx = increasing_multi_indices(k, deg_a + deg_b);
  std::vector<Mat> out(out_idx.size());
  const Eigen::Index m = a.empty() ? b.front().rows() : a.front().rows();
  for (auto& v : out) v = Mat::Zero(m, m);

  const auto splits = increasing_multi_indices(deg_a + deg_b, deg_a);
  for (std::size_t mi = 0; mi < out_idx.size(); ++mi) {
    const auto& total = out_idx[mi];
    for (const auto& pick : splits) {
      std::vector<int> s, rest;
      std::size_t p = 0;
      for (int pos = 0; pos < static_cast<int>(total.size()); ++pos) {
        if (p < pick.size() && pick[p] == pos) {
          s.push_back(total[static_cast<std::size_t>(pos)]);
          ++p;
        } else {
          rest.push_back(total[static_cast<std::size_t>(pos)]);
        }
      }
      const int sign = merge_sign(s, rest);
      out[mi] += static_cast<double>(sign) *
                 a[static_cast<std::size_t>(multi_index_position(k, s))] *
                 b[static_cast<std::size_t>(multi_index_position(k, rest))];
    }
  }
  return out;
}

}  // namespace

ConnectionField connection_form(const Plot& plot) {
  if (!plot.map) throw std::invalid_argument("connection_form: plot has no map");
  const Plot p = plot;
  ConnectionField theta;
  theta.chart_dim = plot.dim();
  theta.spec = plot.spec;
  theta.components = [p](const Vec& u) {
    const int k = p.dim();
    const double h = p.step;
    const ChartPoint center = p.map(u);
    if (std::abs(center.x.squaredNorm() - 1.0) > 1e-8)
      throw std::runtime_error("connection_form: plot value off the unit sphere");
    const int m = static_cast<int>(center.x.size());
    for (int i = 0; i < m; ++i)
      if (group_residual(p.spec, center.groups[static_cast<std::size_t>(i)]) > 1e-8)
        throw std::runtime_error("connection_form: plot value fails group residual");

    std::vector<Eigen::PartialPivLU<Mat>> inv;
    inv.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) inv.emplace_back(center.groups[static_cast<std::size_t>(i)]);

    std::vector<Mat> comps(static_cast<std::size_t>(k));
    const int n = p.spec.matrix_size();
    for (int a = 0; a < k; ++a) {
      Vec up = u, um = u;
      up(a) += h;
      um(a) -= h;
      const ChartPoint cp = p.map(up);
      const ChartPoint cm = p.map(um);
      Mat sum = Mat::Zero(n, n);
      for (int i = 0; i < m; ++i) {
        const double w = center.x(i);
        if (w == 0.0) continue;
        sum += w * w *
               inv[static_cast<std::size_t>(i)].solve(
                   (cp.groups[static_cast<std::size_t>(i)] -
                    cm.groups[static_cast<std::size_t>(i)]) /
                   (2.0 * h));
      }
      comps[static_cast<std::size_t>(a)] = sum;
    }
    return comps;
  };
  return theta;
}

std::vector<Mat> curvature(const ConnectionField& theta, const Vec& u, double h) {
  const int k = theta.chart_dim;
  if (k < 2) throw std::invalid_argument("curvature: chart dimension must be at least 2");
  const auto center = theta.components(u);
  std::vector<std::vector<Mat>> plus(static_cast<std::size_t>(k)),
      minus(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a) {
    Vec up = u, um = u;
    up(a) += h;
    um(a) -= h;
    plus[static_cast<std::size_t>(a)] = theta.components(up);
    minus[static_cast<std::size_t>(a)] = theta.components(um);
  }
  const auto pairs = increasing_multi_indices(k, 2);
  std::vector<Mat> f(pairs.size());
  for (std::size_t m = 0; m < pairs.size(); ++m) {
    const int a = pairs[m][0];
    const int b = pairs[m][1];
    const Mat da_tb = (plus[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] -
                       minus[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) /
                      (2.0 * h);
    const Mat db_ta = (plus[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] -
                       minus[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)]) /
                      (2.0 * h);
    f[m] = da_tb - db_ta + bracket(center[static_cast<std::size_t>(a)],
                                   center[static_cast<std::size_t>(b)]);
  }
  return f;
}

double bianchi_residual(const ConnectionField& theta, const Vec& u, double h) {
  const int k = theta.chart_dim;
  if (k < 3) throw std::invalid_argument("bianchi_residual: chart dimension must be at least 3");
  const auto center_theta = theta.components(u);
  const auto f_center = curvature(theta, u, h);

  std::vector<std::vector<Mat>> fplus(static_cast<std::size_t>(k)),
      fminus(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) {
    Vec up = u, um = u;
    up(c) += h;
    um(c) -= h;
    fplus[static_cast<std::size_t>(c)] = curvature(theta, up, h);
    fminus[static_cast<std::size_t>(c)] = curvature(theta, um, h);
  }

  auto fpos = [&](int a, int b) {
    return static_cast<std::size_t>(multi_index_position(k, {a, b}));
  };

  const auto triples = increasing_multi_indices(k, 3);
  double norm2 = 0.0;
  for (const auto& t : triples) {
    const int a = t[0], b = t[1], c = t[2];
    const Mat df = (fplus[static_cast<std::size_t>(a)][fpos(b, c)] -
                    fminus[static_cast<std::size_t>(a)][fpos(b, c)]) /
                       (2.0 * h) -
                   (fplus[static_cast<std::size_t>(b)][fpos(a, c)] -
                    fminus[static_cast<std::size_t>(b)][fpos(a, c)]) /
                       (2.0 * h) +
                   (fplus[static_cast<std::size_t>(c)][fpos(a, b)] -
                    fminus[static_cast<std::size_t>(c)][fpos(a, b)]) /
                       (2.0 * h);
    const Mat tf = bracket(center_theta[static_cast<std::size_t>(a)], f_center[fpos(b, c)]) -
                   bracket(center_theta[static_cast<std::size_t>(b)], f_center[fpos(a, c)]) +
                   bracket(center_theta[static_cast<std::size_t>(c)], f_center[fpos(a, b)]);
    norm2 += (df + tf).squaredNorm();
  }
  return std::sqrt(norm2);
}

ChernValue chern_form(const ConnectionField& theta, int power, const Vec& u, double h) {
  const int k = theta.chart_dim;
  if (power < 1) throw std::invalid_argument("chern_form: power must be >= 1");
  if (k < 2 * power)
    throw std::invalid_argument("chern_form: chart dimension too small for tr(F^k)");

  auto trace_power = [&](const Vec& v) {
    const auto f = curvature(theta, v, h);
    std::vector<Mat> w = f;
    int deg = 2;
    for (int p = 1; p < power; ++p) {
      w = wedge(w, deg, f, 2, k);
      deg += 2;
    }
    Eigen::VectorXcd coeffs(static_cast<Eigen::Index>(w.size()));
    for (std::size_t m = 0; m < w.size(); ++m)
      coeffs(static_cast<Eigen::Index>(m)) = w[m].trace();
    return coeffs;
  };

  ChernValue out;
  out.coefficients = trace_power(u);
  if (k >= 2 * power + 1) {
    std::vector<Eigen::VectorXcd> plus(static_cast<std::size_t>(k)),
        minus(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a) {
      Vec up = u, um = u;
      up(a) += h;
      um(a) -= h;
      plus[static_cast<std::size_t>(a)] = trace_power(up);
      minus[static_cast<std::size_t>(a)] = trace_power(um);
    }
    const auto upper = increasing_multi_indices(k, 2 * power + 1);
    double norm2 = 0.0;
    for (const auto& mi : upper) {
      Complex v = 0.0;
      double sign = 1.0;
      for (std::size_t drop = 0; drop < mi.size(); ++drop) {
        std::vector<int> rest;
        for (std::size_t i = 0; i < mi.size(); ++i)
          if (i != drop) rest.push_back(mi[i]);
        const int pos = multi_index_position(k, rest);
        const int a = mi[drop];
        v += sign *
             (plus[static_cast<std::size_t>(a)](pos) - minus[static_cast<std::size_t>(a)](pos)) /
             (2.0 * h);
        sign = -sign;
      }
      norm2 += std::norm(v);
    }
    out.closedness_residual = std::sqrt(norm2);
  }
  return out;
}

}  // namespace milnor
