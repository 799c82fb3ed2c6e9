#include "milnor/chart.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace milnor {

namespace {

constexpr double kPlotTol = 1e-8;
constexpr double kWeightGuard = 0.05;

std::vector<Vec> sample_grid(const Plot& plot) {
  const int k = plot.dim();
  const int s = std::max(plot.samples_per_axis, 1);
  std::vector<Vec> pts;
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  while (true) {
    Vec u(k);
    for (int a = 0; a < k; ++a) {
      const double frac = (idx[static_cast<std::size_t>(a)] + 1.0) / (s + 1.0);
      u(a) = plot.lo(a) + frac * (plot.hi(a) - plot.lo(a));
    }
    pts.push_back(u);
    int a = 0;
    while (a < k && ++idx[static_cast<std::size_t>(a)] == s) {
      idx[static_cast<std::size_t>(a)] = 0;
      ++a;
    }
    if (a == k) break;
  }
  return pts;
}

void check_chart_point(const LieGroupSpec& spec, const ChartPoint& c) {
  if (std::abs(c.x.squaredNorm() - 1.0) > kPlotTol)
    throw std::runtime_error("plot value is off the unit sphere");
  if (c.groups.size() != static_cast<std::size_t>(c.x.size()))
    throw std::runtime_error("plot value has mismatched node count");
  for (const auto& g : c.groups)
    if (group_residual(spec, g) > kPlotTol)
      throw std::runtime_error("plot value fails the group membership residual");
}

std::pair<std::vector<int>, std::vector<std::pair<int, std::vector<int>>>> split_axes(
    const Plot& plot) {
  if (plot.axes.size() != static_cast<std::size_t>(plot.dim()))
    throw std::invalid_argument("chart has no product-structure annotation");
  std::vector<int> sphere;
  std::vector<std::pair<int, std::vector<int>>> nodes;
  for (int a = 0; a < plot.dim(); ++a) {
    const AxisRole& role = plot.axes[static_cast<std::size_t>(a)];
    if (role.kind == AxisKind::Spherical) {
      sphere.push_back(a);
    } else {
      auto it = std::find_if(nodes.begin(), nodes.end(),
                             [&](const auto& p) { return p.first == role.node; });
      if (it == nodes.end())
        nodes.push_back({role.node, {a}});
      else
        it->second.push_back(a);
    }
  }
  return {sphere, nodes};
}

RealMat submatrix(const RealMat& m, const std::vector<int>& axes) {
  RealMat out(axes.size(), axes.size());
  for (std::size_t i = 0; i < axes.size(); ++i)
    for (std::size_t j = 0; j < axes.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          m(axes[i], axes[j]);
  return out;
}

double checked_det(const RealMat& g, const char* who) {
  Eigen::LDLT<RealMat> ldlt(g);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error(std::string(who) + ": metric factorization failed");
  const Vec d = ldlt.vectorD();
  if ((d.array() <= 0.0).any())
    throw std::runtime_error(std::string(who) + ": metric is not positive definite");
  if (d.maxCoeff() / d.minCoeff() > 1e12)
    throw std::runtime_error(std::string(who) + ": metric is near-singular");
  return d.prod();
}

/// (1/sqrt|B|) sum_{a in axes} d_a ( sqrt|B| (B^{-1} grad f)_a ) where B is
/// the metric block over the given axes, all other coordinates frozen.
double block_laplacian(const std::function<RealMat(const Vec&)>& block,
                       const std::vector<int>& axes,
                       const std::function<double(const Vec&)>& f, const Vec& u, double h) {
  const int kb = static_cast<int>(axes.size());
  auto flux = [&](const Vec& v, int a) {
    const RealMat b = block(v);
    const double det = checked_det(b, "laplace_beltrami");
    Vec grad(kb);
    for (int c = 0; c < kb; ++c) {
      Vec vp = v, vm = v;
      vp(axes[static_cast<std::size_t>(c)]) += h;
      vm(axes[static_cast<std::size_t>(c)]) -= h;
      grad(c) = (f(vp) - f(vm)) / (2.0 * h);
    }
    const Vec fv = b.ldlt().solve(grad);
    return std::sqrt(det) * fv(a);
  };
  const double det_c = checked_det(block(u), "laplace_beltrami");
  double div = 0.0;
  for (int a = 0; a < kb; ++a) {
    Vec up = u, um = u;
    up(axes[static_cast<std::size_t>(a)]) += h;
    um(axes[static_cast<std::size_t>(a)]) -= h;
    div += (flux(up, a) - flux(um, a)) / (2.0 * h);
  }
  return div / std::sqrt(det_c);
}

}  // namespace

double plot_residual(const Plot& plot) {
  double worst = 0.0;
  for (const Vec& u : sample_grid(plot)) {
    const ChartPoint c = plot.map(u);
    worst = std::max(worst, std::abs(c.x.squaredNorm() - 1.0));
    for (const auto& g : c.groups) worst = std::max(worst, group_residual(plot.spec, g));
  }
  return worst;
}

PulledMetric pullback_metric(const Plot& plot, InnerProductKind kind) {
  if (!plot.map) throw std::invalid_argument("pullback_metric: plot has no map");
  if (!kind_admissible(plot.spec, kind))
    throw std::invalid_argument("pullback_metric: inner product not admissible for family");
  auto ip = std::make_shared<InnerProduct>(plot.spec, kind);
  const Plot p = plot;

  PulledMetric out;
  out.dim = plot.dim();
  // The Killing form is negative definite on the compact families and
  // indefinite on so(1,n); any Killing pullback may fail positivity.
  out.maybe_indefinite = (kind == InnerProductKind::Killing);
  out.eval = [p, ip](const Vec& u) -> RealMat {
    const int k = p.dim();
    const double h = p.step;
    const ChartPoint center = p.map(u);
    check_chart_point(p.spec, center);
    const int m = static_cast<int>(center.x.size());

    std::vector<Eigen::PartialPivLU<Mat>> inv;
    inv.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) inv.emplace_back(center.groups[static_cast<std::size_t>(i)]);

    std::vector<Vec> dx(static_cast<std::size_t>(k));
    std::vector<std::vector<Mat>> theta(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a) {
      Vec up = u, um = u;
      up(a) += h;
      um(a) -= h;
      const ChartPoint cp = p.map(up);
      const ChartPoint cm = p.map(um);
      dx[static_cast<std::size_t>(a)] = (cp.x - cm.x) / (2.0 * h);
      auto& th = theta[static_cast<std::size_t>(a)];
      th.resize(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i)
        th[static_cast<std::size_t>(i)] = inv[static_cast<std::size_t>(i)].solve(
            (cp.groups[static_cast<std::size_t>(i)] - cm.groups[static_cast<std::size_t>(i)]) /
            (2.0 * h));
    }

    RealMat g(k, k);
    for (int a = 0; a < k; ++a) {
      for (int b = a; b < k; ++b) {
        double v = dx[static_cast<std::size_t>(a)].dot(dx[static_cast<std::size_t>(b)]);
        for (int i = 0; i < m; ++i) {
          const double w = center.x(i);
          if (w == 0.0) continue;
          v += w * w *
               (*ip)(theta[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)],
                     theta[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)]);
        }
        g(a, b) = v;
        g(b, a) = v;
      }
    }
    return g;
  };
  return out;
}

PulledMetric euclidean_metric(int dim) {
  PulledMetric out;
  out.dim = dim;
  out.eval = [dim](const Vec&) { return RealMat::Identity(dim, dim); };
  return out;
}

namespace {

void check_same_base(const MilnorPoint& p, const MilnorTangent& v) {
  if (!(v.base.spec == p.spec) || v.base.entries.size() != p.entries.size())
    throw std::invalid_argument("metric_eval: tangent based at a different point");
  for (std::size_t k = 0; k < p.entries.size(); ++k) {
    const auto& a = p.entries[k];
    const auto& b = v.base.entries[k];
    if (a.index != b.index || std::abs(a.weight - b.weight) > 1e-9 ||
        (a.group - b.group).norm() > 1e-9)
      throw std::invalid_argument("metric_eval: tangent based at a different point");
  }
}

}  // namespace

double metric_eval(const MilnorPoint& p, const MilnorTangent& u, const MilnorTangent& w,
                   InnerProductKind kind) {
  check_same_base(p, u);
  check_same_base(p, w);
  double out = 0.0;
  for (const auto& [i, ui] : u.sphericals) {
    const auto it = w.sphericals.find(i);
    if (it != w.sphericals.end()) out += ui * it->second;
  }
  InnerProduct ip(p.spec, kind);
  for (const auto& [i, xi] : u.groups) {
    const auto it = w.groups.find(i);
    if (it == w.groups.end()) continue;
    const double x = p.weight_at(i);
    if (x == 0.0) continue;
    out += x * x * ip(xi, it->second);
  }
  return out;
}

double metric_eval(const MilnorPoint& p, const MilnorTangent& u, const MilnorTangent& w) {
  return metric_eval(p, u, w, natural_kind(p.spec.family));
}

namespace {

double metric_sup_difference(const Plot& a, const Plot& b, InnerProductKind kind) {
  const PulledMetric ga = pullback_metric(a, kind);
  const PulledMetric gb = pullback_metric(b, kind);
  double sup = 0.0;
  for (const Vec& u : sample_grid(a)) sup = std::max(sup, (gb.eval(u) - ga.eval(u)).norm());
  return sup;
}

}  // namespace

double invariance_residual(const Plot& plot, InnerProductKind kind, const Mat& h) {
  require_group(plot.spec, h, 1e-6);
  Plot moved = plot;
  const auto inner = plot.map;
  moved.map = [inner, h](const Vec& u) {
    ChartPoint c = inner(u);
    for (auto& g : c.groups) g = h * g;
    return c;
  };
  return metric_sup_difference(plot, moved, kind);
}

double invariance_residual_z2(const Plot& plot, InnerProductKind kind, int eps) {
  if (eps != 1 && eps != -1)
    throw std::invalid_argument("invariance_residual_z2: sign must be +1 or -1");
  Plot moved = plot;
  const auto inner = plot.map;
  const double s = eps;
  moved.map = [inner, s](const Vec& u) {
    ChartPoint c = inner(u);
    c.x *= s;
    return c;
  };
  return metric_sup_difference(plot, moved, kind);
}

double laplace_beltrami(const PulledMetric& g, const std::function<double(const Vec&)>& f,
                        const Vec& u, double h) {
  if (g.maybe_indefinite)
    throw std::invalid_argument("laplace_beltrami: metric may be indefinite");
  if (u.size() != g.dim) throw std::invalid_argument("laplace_beltrami: dimension mismatch");
  std::vector<int> axes(static_cast<std::size_t>(g.dim));
  for (int a = 0; a < g.dim; ++a) axes[static_cast<std::size_t>(a)] = a;
  return block_laplacian([&](const Vec& v) { return g.eval(v); }, axes, f, u, h);
}

WarpedDecomposition warped_decomposition(const Plot& plot, InnerProductKind kind,
                                         const std::function<double(const Vec&)>& f,
                                         const Vec& u) {
  const auto [sphere_axes, node_axes] = split_axes(plot);
  const double h = std::max(plot.step, 1e-4);
  const PulledMetric g = pullback_metric(plot, kind);
  if (g.maybe_indefinite)
    throw std::invalid_argument("warped_decomposition: metric may be indefinite");

  const ChartPoint center = plot.map(u);
  for (const auto& [node, axs] : node_axes) {
    if (node < 0 || node >= center.x.size())
      throw std::invalid_argument("warped_decomposition: bad node annotation");
    if (std::abs(center.x(node)) < kWeightGuard)
      throw std::runtime_error(
          "warped_decomposition: active weight below guard, fiber term is ill-conditioned");
  }

  WarpedDecomposition out;
  out.full = laplace_beltrami(g, f, u, h);

  out.sphere_part = block_laplacian(
      [&](const Vec& v) { return submatrix(g.eval(v), sphere_axes); }, sphere_axes, f, u, h);

  for (const auto& [node, axs] : node_axes) {
    const double x = center.x(node);
    const double fiber = block_laplacian(
        [&](const Vec& v) {
          const ChartPoint c = plot.map(v);
          return RealMat(submatrix(g.eval(v), axs) / (c.x(node) * c.x(node)));
        },
        axs, f, u, h);
    out.fiber_part += fiber / (x * x);
  }

  // First-order term: spherical derivatives of sqrt|G| beyond those of the
  // sphere block, i.e. the derivatives of the warping weights.
  const auto half_log_ratio = [&](const Vec& v) {
    const RealMat full = g.eval(v);
    const double det_full = checked_det(full, "warped_decomposition");
    const double det_s = checked_det(submatrix(full, sphere_axes), "warped_decomposition");
    return 0.5 * (std::log(det_full) - std::log(det_s));
  };
  const int ks = static_cast<int>(sphere_axes.size());
  Vec dlog(ks), grad_s(ks);
  for (int c = 0; c < ks; ++c) {
    Vec vp = u, vm = u;
    vp(sphere_axes[static_cast<std::size_t>(c)]) += h;
    vm(sphere_axes[static_cast<std::size_t>(c)]) -= h;
    dlog(c) = (half_log_ratio(vp) - half_log_ratio(vm)) / (2.0 * h);
    grad_s(c) = (f(vp) - f(vm)) / (2.0 * h);
  }
  const RealMat s_block = submatrix(g.eval(u), sphere_axes);
  out.first_order_part = dlog.dot(s_block.ldlt().solve(grad_s));

  out.residual = std::abs(out.full - (out.sphere_part + out.fiber_part + out.first_order_part));
  return out;
}

double warped_decomposition_residual(const Plot& plot, InnerProductKind kind,
                                     const std::function<double(const Vec&)>& f,
                                     const Vec& u) {
  return warped_decomposition(plot, kind, f, u).residual;
}

namespace {

double segment_energy(const PulledMetric& g, const Vec& a, const Vec& b, double scale) {
  const Vec mid = 0.5 * (a + b);
  const Vec d = b - a;
  return scale * d.dot(g.eval(mid) * d);
}

}  // namespace

GeodesicResult geodesic(const PulledMetric& g, const Vec& p, const Vec& q, int segments,
                        int max_iterations, double grad_tol) {
  if (g.maybe_indefinite) throw std::invalid_argument("geodesic: metric may be indefinite");
  if (segments < 1) throw std::invalid_argument("geodesic: need at least one segment");
  if (p.size() != g.dim || q.size() != g.dim)
    throw std::invalid_argument("geodesic: dimension mismatch");

  const int k = g.dim;
  const int n = segments;
  std::vector<Vec> nodes(static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n; ++j)
    nodes[static_cast<std::size_t>(j)] = p + (q - p) * (static_cast<double>(j) / n);

  GeodesicResult out;
  if ((q - p).norm() == 0.0) {
    out.nodes = nodes;
    out.converged = true;
    return out;
  }

  const double scale = static_cast<double>(n);
  const int free_count = (n - 1) * k;

  auto unpack = [&](const Vec& z) {
    std::vector<Vec> cur = nodes;
    for (int j = 1; j < n; ++j)
      cur[static_cast<std::size_t>(j)] = z.segment((j - 1) * k, k);
    return cur;
  };
  auto energy = [&](const std::vector<Vec>& cur) {
    double e = 0.0;
    for (int j = 0; j < n; ++j)
      e += segment_energy(g, cur[static_cast<std::size_t>(j)], cur[static_cast<std::size_t>(j + 1)],
                          scale);
    return e;
  };

  Vec z(free_count);
  for (int j = 1; j < n; ++j) z.segment((j - 1) * k, k) = nodes[static_cast<std::size_t>(j)];

  // Differencing step balanced against the evaluation noise of the pulled
  // metric; 1e-6 would sit below the noise floor and stall the descent.
  const double fd = 1e-4;
  auto gradient = [&](const Vec& zz) {
    std::vector<Vec> cur = unpack(zz);
    Vec grad(free_count);
    for (int j = 1; j < n; ++j) {
      for (int c = 0; c < k; ++c) {
        const double saved = cur[static_cast<std::size_t>(j)](c);
        cur[static_cast<std::size_t>(j)](c) = saved + fd;
        const double ep =
            segment_energy(g, cur[static_cast<std::size_t>(j - 1)], cur[static_cast<std::size_t>(j)], scale) +
            segment_energy(g, cur[static_cast<std::size_t>(j)], cur[static_cast<std::size_t>(j + 1)], scale);
        cur[static_cast<std::size_t>(j)](c) = saved - fd;
        const double em =
            segment_energy(g, cur[static_cast<std::size_t>(j - 1)], cur[static_cast<std::size_t>(j)], scale) +
            segment_energy(g, cur[static_cast<std::size_t>(j)], cur[static_cast<std::size_t>(j + 1)], scale);
        cur[static_cast<std::size_t>(j)](c) = saved;
        grad((j - 1) * k + c) = (ep - em) / (2.0 * fd);
      }
    }
    return grad;
  };

  double e = energy(unpack(z));
  Vec grad = gradient(z);
  double step = 1e-2 / (1.0 + grad.norm());
  std::vector<double> recent{e};
  int it = 0;
  for (; it < max_iterations; ++it) {
    if (grad.norm() <= grad_tol) break;
    // Barzilai-Borwein step with a reset when it leaves a sane range (near
    // the minimum the curvature estimate is noise and collapses), guarded by
    // nonmonotone backtracking: decreases below the floating-point
    // resolution of the energy are not required.
    double alpha = step;
    if (!(alpha > 1e-5) || !(alpha < 1e3)) alpha = 0.02 / (1.0 + grad.norm());
    const double ref = *std::max_element(recent.begin(), recent.end());
    Vec z_new;
    double e_new = e;
    for (int bt = 0; bt < 40; ++bt) {
      z_new = z - alpha * grad;
      e_new = energy(unpack(z_new));
      if (e_new <= ref - 1e-4 * alpha * grad.squaredNorm() + 1e-12 * (1.0 + std::abs(ref)))
        break;
      alpha *= 0.5;
      if (alpha < 1e-9) {
        z_new = z - alpha * grad;
        e_new = energy(unpack(z_new));
        break;
      }
    }
    const Vec z_prev = z;
    const Vec grad_prev = grad;
    z = z_new;
    e = e_new;
    grad = gradient(z);
    recent.push_back(e);
    if (recent.size() > 10) recent.erase(recent.begin());
    const Vec dz = z - z_prev;
    const Vec dg = grad - grad_prev;
    const double dgg = dg.squaredNorm();
    step = dgg > 1e-300 ? std::abs(dz.dot(dg)) / dgg : alpha * 2.0;
    if (!(step > 0.0) || !std::isfinite(step)) step = alpha;
  }

  const std::vector<Vec> cur = unpack(z);
  double length = 0.0;
  for (int j = 0; j < n; ++j) {
    const Vec mid = 0.5 * (cur[static_cast<std::size_t>(j)] + cur[static_cast<std::size_t>(j + 1)]);
    const Vec d = cur[static_cast<std::size_t>(j + 1)] - cur[static_cast<std::size_t>(j)];
    length += std::sqrt(std::max(d.dot(g.eval(mid) * d), 0.0));
  }

  out.nodes = cur;
  out.length = length;
  out.iterations = it;
  out.grad_norm = grad.norm();
  out.converged = grad.norm() <= grad_tol;
  if (!out.converged)
    throw std::runtime_error("geodesic: no convergence after " + std::to_string(it) +
                             " iterations (gradient norm " + std::to_string(out.grad_norm) + ")");
  return out;
}

Plot s3_chart() {
  Plot p;
  p.spec = make_spec(LieFamily::SpecialOrthogonal, 2);
  p.lo = Vec(3);
  p.hi = Vec(3);
  p.lo << 0.3, 0.0, 0.0;
  p.hi << 1.2, 6.2831853071795864769, 6.2831853071795864769;
  p.step = 1e-4;
  p.axes = {{AxisKind::Spherical, -1}, {AxisKind::Group, 0}, {AxisKind::Group, 1}};
  const double inv_sqrt2 = 0.70710678118654752440;
  p.map = [inv_sqrt2](const Vec& u) {
    ChartPoint c;
    c.x = Vec(2);
    c.x << std::cos(u(0)), std::sin(u(0));
    c.groups.resize(2);
    for (int i = 0; i < 2; ++i) {
      const double a = u(i + 1) * inv_sqrt2;  // unit trace-form speed
      Mat r(2, 2);
      r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
      c.groups[static_cast<std::size_t>(i)] = r;
    }
    return c;
  };
  return p;
}

Vec s3_ambient(const Vec& u) {
  Vec a(4);
  a << std::cos(u(0)) * std::cos(u(1)), std::cos(u(0)) * std::sin(u(1)),
      std::sin(u(0)) * std::cos(u(2)), std::sin(u(0)) * std::sin(u(2));
  return a;
}

Plot su2_two_node_chart() {
  Plot p;
  p.spec = make_spec(LieFamily::SpecialUnitary, 2);
  p.lo = Vec(3);
  p.hi = Vec(3);
  p.lo << 0.3, -2.0, -2.0;
  p.hi << 1.2, 2.0, 2.0;
  p.step = 1e-4;
  p.axes = {{AxisKind::Spherical, -1}, {AxisKind::Group, 0}, {AxisKind::Group, 1}};
  const double inv_sqrt2 = 0.70710678118654752440;
  Mat x1(2, 2), x2(2, 2);
  x1 << Complex(0, inv_sqrt2), 0, 0, Complex(0, -inv_sqrt2);
  x2 << 0, inv_sqrt2, -inv_sqrt2, 0;
  p.map = [x1, x2](const Vec& u) {
    ChartPoint c;
    c.x = Vec(2);
    c.x << std::cos(u(0)), std::sin(u(0));
    c.groups = {group_exp(u(1) * x1), group_exp(u(2) * x2)};
    return c;
  };
  return p;
}

Plot exp_product_chart(const LieGroupSpec& spec, const Mat& base,
                       const std::vector<Mat>& generators) {
  for (const auto& x : generators) require_algebra(spec, x, 1e-6);
  require_group(spec, base, 1e-6);
  Plot p;
  p.spec = spec;
  const int k = static_cast<int>(generators.size());
  p.lo = Vec::Constant(k, -1.0);
  p.hi = Vec::Constant(k, 1.0);
  p.step = 1e-4;
  p.axes.assign(static_cast<std::size_t>(k), AxisRole{AxisKind::Group, 0});
  p.map = [base, generators](const Vec& u) {
    ChartPoint c;
    c.x = Vec::Ones(1);
    Mat g = base;
    for (std::size_t a = 0; a < generators.size(); ++a)
      g = g * group_exp(u(static_cast<Eigen::Index>(a)) * generators[a]);
    c.groups = {g};
    return c;
  };
  return p;
}

Plot constant_plot(const LieGroupSpec& spec, const Mat& g, int dim) {
  require_group(spec, g, 1e-6);
  Plot p;
  p.spec = spec;
  p.lo = Vec::Constant(dim, -1.0);
  p.hi = Vec::Constant(dim, 1.0);
  p.step = 1e-4;
  p.map = [g](const Vec&) {
    ChartPoint c;
    c.x = Vec::Ones(1);
    c.groups = {g};
    return c;
  };
  return p;
}

}  // namespace milnor
