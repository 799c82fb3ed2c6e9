#include "milnor/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "milnor/chart.hpp"
#include "milnor/circle.hpp"
#include "milnor/clifford.hpp"
#include "milnor/connection.hpp"
#include "milnor/forms.hpp"
#include "milnor/lie_group.hpp"
#include "milnor/milnor_space.hpp"
#include "milnor/sphere.hpp"

namespace milnor {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

class SuiteBuilder {
 public:
  SuiteBuilder(Report& report, const VerifyConfig& config)
      : report_(report), config_(config) {}

  void check(const std::string& name, const std::string& anchor, double value,
             double tolerance) {
    const auto now = std::chrono::steady_clock::now();
    const double ms =
        std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    report_.add(name, anchor, value,
                config_.tol > 0.0 ? config_.tol : tolerance, ms);
  }

  /// Predicate checks record 0 (holds) or 1 (fails) against tolerance 0.
  void require(const std::string& name, const std::string& anchor, bool holds) {
    check(name, anchor, holds ? 0.0 : 1.0, 0.0);
  }

 private:
  Report& report_;
  const VerifyConfig& config_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

// ---------------------------------------------------------------- liegroup

void suite_liegroup(SuiteBuilder& b, const VerifyConfig& cfg) {
  Rng rng(cfg.seed);

  double dim_err = 0.0;
  double membership = 0.0;
  const std::vector<LieGroupSpec> specs = {
      make_spec(LieFamily::Orthogonal, 3),      make_spec(LieFamily::SpecialOrthogonal, 2),
      make_spec(LieFamily::SpecialOrthogonal, 3), make_spec(LieFamily::SpecialOrthogonal, 4),
      make_spec(LieFamily::SpecialUnitary, 2),  make_spec(LieFamily::SpecialUnitary, 3),
      make_spec(LieFamily::Lorentz, 1),         make_spec(LieFamily::Lorentz, 2),
      make_spec(LieFamily::Lorentz, 3)};
  for (const auto& spec : specs) {
    const auto basis = algebra_basis(spec);
    dim_err = std::max(dim_err,
                       std::abs(static_cast<double>(basis.size()) - spec.algebra_dim()));
    for (const auto& x : basis) membership = std::max(membership, algebra_residual(spec, x));
  }
  b.check("algebra basis dimensions", "dim so(n)=n(n-1)/2, dim su(n)=n^2-1, dim so(1,n)=n(n+1)/2",
          dim_err, 0.0);
  b.check("algebra membership residuals", "X^T+X=0, X*+X=0 & tr X=0, X^T eta + eta X=0",
          membership, 1e-9);

  double exp_res = 0.0;
  for (const auto& spec : specs)
    for (int t = 0; t < 5; ++t)
      exp_res = std::max(exp_res, group_residual(spec, random_group(spec, rng)));
  b.check("exponential lands in the group", "exp(g) in G", exp_res, 1e-10);

  const auto so3 = make_spec(LieFamily::SpecialOrthogonal, 3);
  b.check("exp(0) = identity", "exp(0)=I",
          (group_exp(Mat::Zero(3, 3)) - Mat::Identity(3, 3)).norm(), 0.0);

  double mc_err = 0.0;
  for (int t = 0; t < 5; ++t) {
    const Mat x = random_algebra(so3, rng);
    const auto curve = [x](double s) { return group_exp(s * x); };
    mc_err = std::max(mc_err, (maurer_cartan(curve, rng.uniform(-1.0, 1.0), 1e-4) - x).norm());
  }
  b.check("maurer-cartan of one-parameter subgroups", "theta = g^{-1} dg", mc_err, 1e-6);

  double ad_err = 0.0;
  const auto su2 = make_spec(LieFamily::SpecialUnitary, 2);
  const std::vector<std::pair<LieGroupSpec, InnerProductKind>> ad_cases = {
      {so3, InnerProductKind::TraceForm},
      {su2, InnerProductKind::ReTraceForm},
      {su2, InnerProductKind::Killing},
      {make_spec(LieFamily::Lorentz, 2), InnerProductKind::Killing}};
  for (const auto& [spec, kind] : ad_cases) {
    for (int t = 0; t < 10; ++t) {
      const Mat x = random_algebra(spec, rng);
      const Mat y = random_algebra(spec, rng);
      const Mat g = random_group(spec, rng);
      ad_err = std::max(ad_err, std::abs(inner_product(spec, kind, adjoint(g, x), adjoint(g, y)) -
                                         inner_product(spec, kind, x, y)));
    }
  }
  b.check("ad-invariance of trace and killing forms", "<Ad_g X, Ad_g Y> = <X,Y>", ad_err, 1e-8);

  double killing_err = 0.0;
  {
    const auto basis = algebra_basis(su2);
    for (const auto& x : basis)
      for (const auto& y : basis)
        killing_err = std::max(
            killing_err, std::abs(inner_product(su2, InnerProductKind::Killing, x, y) -
                                  2.0 * 2.0 * (x * y).trace().real()));
  }
  b.check("killing form matches 2n tr(XY) on su(n)", "kappa(X,Y) = tr(ad_X ad_Y)", killing_err,
          1e-10);

  {
    const auto lor = make_spec(LieFamily::Lorentz, 2);
    const auto basis = algebra_basis(lor);
    const int d = static_cast<int>(basis.size());
    RealMat gram(d, d);
    InnerProduct cartan(lor, InnerProductKind::Cartan);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        gram(i, j) = cartan(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]);
    const double min_eig = Eigen::SelfAdjointEigenSolver<RealMat>(gram).eigenvalues().minCoeff();
    b.require("cartan inner product positive definite", "<X,X>_theta = -kappa(X, theta X) > 0",
              min_eig > 0.0);
  }

  double add_err = 0.0;
  for (int t = 0; t < 5; ++t) {
    const Mat x = random_algebra(so3, rng);
    const Mat y = 0.7 * x;  // commuting pair
    add_err = std::max(add_err,
                       (group_exp(x + y) - group_exp(x) * group_exp(y)).norm());
  }
  b.check("exp additivity on commuting elements", "exp(X+Y)=exp(X)exp(Y) when [X,Y]=0", add_err,
          1e-10);
}

// ------------------------------------------------------------------ sphere

void suite_sphere(SuiteBuilder& b, const VerifyConfig& cfg) {
  Rng rng(cfg.seed);

  double proj_err = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + static_cast<int>(rng.integer(6));
    Vec raw(n);
    for (int i = 0; i < n; ++i) raw(i) = rng.normal();
    const auto x = SphericalPoint::make(raw.normalized());
    Vec w(n), w2(n);
    for (int i = 0; i < n; ++i) {
      w(i) = rng.normal();
      w2(i) = rng.normal();
    }
    const Vec p = tangent_project(x, w);
    proj_err = std::max(proj_err, std::abs(x.x.dot(p)));
    proj_err = std::max(proj_err, (tangent_project(x, p) - p).norm());
    proj_err = std::max(proj_err,
                        std::abs(tangent_project(x, w).dot(w2) - w.dot(tangent_project(x, w2))));
  }
  b.check("tangent projection idempotent and self-adjoint", "v = w - (x.w) x", proj_err, 1e-12);

  double retract_err = 0.0;
  for (int t = 0; t < 20; ++t) {
    Vec raw(4);
    for (int i = 0; i < 4; ++i) raw(i) = rng.normal();
    const auto x = SphericalPoint::make(raw.normalized());
    Vec w(4);
    for (int i = 0; i < 4; ++i) w(i) = rng.normal();
    const Vec v = tangent_project(x, w);
    const double h = 1e-4;
    const Vec d = (sphere_retract(x, v, h).x - sphere_retract(x, v, -h).x) / (2.0 * h);
    retract_err = std::max(retract_err, (d - v).norm());
    retract_err = std::max(retract_err, std::abs(sphere_retract(x, v, 0.3).x.norm() - 1.0));
  }
  b.check("retraction: unit norm and derivative", "d/ds (x+sv)/|x+sv| at 0 = v", retract_err,
          1e-6);

  double round_err = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + static_cast<int>(rng.integer(6));
    Vec raw(n);
    for (int i = 0; i < n; ++i) raw(i) = std::abs(rng.normal()) + 0.05;
    const auto x = SphericalPoint::make(raw.normalized());
    round_err = std::max(round_err, (sqrt_lift(square_map(x)).x - x.x).norm());
    Vec tr(n);
    for (int i = 0; i < n; ++i) tr(i) = std::abs(rng.normal()) + 0.02;
    tr /= tr.sum();
    const auto tp = SimplexPoint::make(tr);
    round_err = std::max(round_err, (square_map(sqrt_lift(tp)).t - tp.t).norm());
  }
  b.check("square map and sqrt lift invert each other", "t = x^2, x = sqrt(t)", round_err, 1e-12);

  double fr_err = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + static_cast<int>(rng.integer(7));
    Vec raw(n);
    for (int i = 0; i < n; ++i) raw(i) = std::abs(rng.normal()) + 0.05;
    const auto x = SphericalPoint::make(raw.normalized());
    Vec w(n);
    for (int i = 0; i < n; ++i) w(i) = rng.normal();
    Vec v = tangent_project(x, w);
    if (v.norm() > 1e-9) v.normalize();
    fr_err = std::max(fr_err, fr_pullback_residual(x, v));
  }
  b.check("fisher-rao pullback is 4x euclidean", "sum dt_i^2/t_i = 4 sum dx_i^2", fr_err, 1e-10);

  double first = 0.0, second = 0.0;
  for (int t = 0; t < 100; ++t) {
    const double v = rng.uniform(-5.0, 5.0);
    const auto [d1, d2] = quadratic_invisibility(v);
    first = std::max(first, std::abs(d1));
    second = std::max(second, std::abs(d2 - 2.0 * v * v));
  }
  b.check("quadratic invisibility: first derivative", "d/ds (sv)^2 at 0 = 0", first, 1e-8);
  b.check("quadratic invisibility: second derivative", "d2/ds2 (sv)^2 at 0 = 2 v^2", second,
          1e-4);
}

// ------------------------------------------------------------------ milnor

void suite_milnor(SuiteBuilder& b, const VerifyConfig& cfg) {
  Rng rng(cfg.seed);
  const std::vector<LieGroupSpec> specs = {
      make_spec(LieFamily::Orthogonal, 2), make_spec(LieFamily::SpecialOrthogonal, 3),
      make_spec(LieFamily::SpecialUnitary, 2), make_spec(LieFamily::Lorentz, 2)};

  double constraint = 0.0;
  double dim_err = 0.0;
  for (const auto& spec : specs) {
    for (int t = 0; t < 10; ++t) {
      const MilnorPoint p = random_point(spec, rng);
      auto ambient = p.support();
      ambient.push_back(100 + rng.integer(4));
      ambient.push_back(110 + rng.integer(4));
      std::sort(ambient.begin(), ambient.end());
      const auto basis = tangent_basis(p, ambient);
      for (const auto& v : basis) constraint = std::max(constraint, tangent_constraint_residual(v));
      const double expected_t = static_cast<double>(ambient.size()) - 1.0 +
                                static_cast<double>(p.entries.size()) * spec.algebra_dim();
      dim_err = std::max(dim_err, std::abs(static_cast<double>(basis.size()) - expected_t));
      const auto kernel = kernel_basis(p, ambient);
      const double expected_k =
          static_cast<double>(ambient.size() - p.entries.size()) * spec.algebra_dim();
      dim_err = std::max(dim_err, std::abs(static_cast<double>(kernel.size()) - expected_k));
    }
  }
  b.check("tangent constraint on basis vectors", "sum_J x_j v_j = 0", constraint, 1e-10);
  b.check("tangent and kernel dimension laws",
          "dim T = (|I|-1) + |J| dim g, dim ker = (|I|-|J|) dim g", dim_err, 0.0);

  double commute = 0.0;
  for (const auto& spec : specs) {
    for (int t = 0; t < 5; ++t) {
      const MilnorPoint p = random_point(spec, rng);
      const Mat h = random_group(spec, rng);
      const MilnorPoint a = z2_act(-1, group_act(h, p));
      const MilnorPoint c = group_act(h, z2_act(-1, p));
      double d = 0.0;
      for (std::size_t k = 0; k < a.entries.size(); ++k) {
        d = std::max(d, std::abs(a.entries[k].weight - c.entries[k].weight));
        d = std::max(d, (a.entries[k].group - c.entries[k].group).norm());
      }
      commute = std::max(commute, d);
    }
  }
  b.check("group and sign actions commute", "eps.(h.p) = h.(eps.p)", commute, 1e-12);

  {
    const auto spec = make_spec(LieFamily::SpecialOrthogonal, 2);
    const MilnorPoint p = random_point(spec, rng);
    const MilnorPoint h0 = shift_contraction(p, 0.0, 1);
    double d0 = std::abs(static_cast<double>(h0.entries.size()) -
                         static_cast<double>(p.entries.size()));
    for (std::size_t k = 0; k < std::min(h0.entries.size(), p.entries.size()); ++k) {
      d0 = std::max(d0, std::abs(h0.entries[k].weight - p.entries[k].weight));
      d0 = std::max(d0, (h0.entries[k].group - p.entries[k].group).norm());
    }
    b.check("contraction stage 1 starts at the identity", "H_0 = id", d0, 0.0);

    const MilnorPoint h1 = shift_contraction(p, 1.0, 2);
    const bool base = h1.entries.size() == 1 && h1.entries[0].index == 0 &&
                      h1.entries[0].weight == 1.0 &&
                      (h1.entries[0].group - Mat::Identity(2, 2)).norm() == 0.0;
    b.require("contraction stage 2 ends at the base point", "H_1 = e_0", base);
  }

  {
    const auto spec = make_spec(LieFamily::SpecialOrthogonal, 2);
    double min_denom = 1e300;
    const int samples = 10000;
    for (int t = 0; t < samples; ++t) {
      const MilnorPoint p = random_point(spec, rng, 8, 16);
      for (int j = 0; j <= 100; ++j)
        min_denom = std::min(min_denom, shift_denominator(p, j / 100.0));
    }
    b.require("shift interpolant never vanishes", "|(1-t) x + t Sx| > 0", min_denom > 0.0);
  }
}

// ------------------------------------------------------------------ metric

void suite_metric(SuiteBuilder& b, const VerifyConfig& cfg) {
  Rng rng(cfg.seed);

  {
    const Plot chart = s3_chart();
    const PulledMetric g = pullback_metric(chart, InnerProductKind::TraceForm);
    double err = 0.0;
    double sym = 0.0;
    for (int t = 0; t < 10; ++t) {
      Vec u(3);
      u << rng.uniform(0.3, 1.2), rng.uniform(0.0, 2.0 * kPi), rng.uniform(0.0, 2.0 * kPi);
      const RealMat m = g.eval(u);
      RealMat expected = RealMat::Zero(3, 3);
      expected(0, 0) = 1.0;
      expected(1, 1) = std::cos(u(0)) * std::cos(u(0));
      expected(2, 2) = std::sin(u(0)) * std::sin(u(0));
      err = std::max(err, (m - expected).norm());
      sym = std::max(sym, (m - m.transpose()).norm());
    }
    b.check("round chart pullback matches diag(1, cos^2, sin^2)",
            "g = sum dx_i^2 + sum x_i^2 <theta_i, theta_i>", err, 1e-6);
    b.check("pullback metric symmetry", "g_ab = g_ba", sym, 1e-12);
  }

  {
    const std::vector<LieGroupSpec> specs = {
        make_spec(LieFamily::Orthogonal, 2), make_spec(LieFamily::SpecialOrthogonal, 3),
        make_spec(LieFamily::SpecialUnitary, 2), make_spec(LieFamily::Lorentz, 2)};
    double kernel_err = 0.0;
    bool stratum_pd = true;
    for (const auto& spec : specs) {
      for (int t = 0; t < 5; ++t) {
        const MilnorPoint p = random_point(spec, rng, 3, 8);
        auto ambient = p.support();
        ambient.push_back(50);
        std::sort(ambient.begin(), ambient.end());
        const auto kernel = kernel_basis(p, ambient);
        const auto tangents = tangent_basis(p, ambient);
        for (const auto& [idx, xi] : kernel) {
          const MilnorTangent kv = kernel_tangent(p, idx, xi);
          kernel_err = std::max(kernel_err, std::abs(metric_eval(p, kv, kv)));
          for (const auto& tv : tangents)
            kernel_err = std::max(kernel_err, std::abs(metric_eval(p, kv, tv)));
        }
        // Stratum directions (ambient = support) carry a positive definite Gram.
        const auto stratum = tangent_basis(p, p.support());
        if (!stratum.empty()) {
          const RealMat gram = tangent_gram(p, stratum);
          const double min_eig =
              Eigen::SelfAdjointEigenSolver<RealMat>(gram).eigenvalues().minCoeff();
          if (min_eig <= 0.0) stratum_pd = false;
        }
      }
    }
    b.check("barycentric pairing vanishes on the kernel", "ker g = sum of T_g G at inactive indices",
            kernel_err, 1e-12);
    b.require("stratum tangent gram positive definite", "g positive definite along the stratum",
              stratum_pd);
  }

  {
    const Plot s3 = s3_chart();
    const Plot su2 = su2_two_node_chart();
    double g_res = 0.0;
    for (int t = 0; t < 20; ++t) {
      g_res = std::max(g_res, invariance_residual(s3, InnerProductKind::TraceForm,
                                                  random_group(s3.spec, rng)));
      g_res = std::max(g_res, invariance_residual(su2, InnerProductKind::ReTraceForm,
                                                  random_group(su2.spec, rng)));
    }
    b.check("left action leaves the metric invariant", "g(h.p) = g(p)", g_res, 1e-8);

    double z_res = 0.0;
    z_res = std::max(z_res, invariance_residual_z2(s3, InnerProductKind::TraceForm, -1));
    z_res = std::max(z_res, invariance_residual_z2(su2, InnerProductKind::ReTraceForm, -1));
    b.check("sign action leaves the metric invariant", "x -> -x preserves dx^2 and x^2", z_res,
            1e-10);
  }
}

// ------------------------------------------------------------------ laplace

void suite_laplace(SuiteBuilder& b, const VerifyConfig& cfg) {
  Rng rng(cfg.seed);
  const double h0 = 1e-3;
  const double h = cfg.step > 0.0 ? cfg.step
                   : cfg.grid > 0 ? 1.0 / cfg.grid
                                  : h0;
  const double scale = (h / h0) * (h / h0);

  {
    const PulledMetric flat = euclidean_metric(1);
    Vec u(1);
    u << 0.3;
    const double quad = laplace_beltrami(
        flat, [](const Vec& v) { return v(0) * v(0); }, u, h);
    b.check("flat second derivative", "Delta u^2 = 2", std::abs(quad - 2.0), 1e-6);
    const double constant = laplace_beltrami(flat, [](const Vec&) { return 1.5; }, u, h);
    b.check("constants are harmonic", "Delta c = 0", std::abs(constant), 1e-8);
  }

  const Plot chart = s3_chart();
  const PulledMetric g = pullback_metric(chart, InnerProductKind::TraceForm);
  const auto f = [](const Vec& u) { return std::cos(u(0)) * std::cos(u(1)); };

  {
    double eig_err = 0.0;
    for (int t = 0; t < 50; ++t) {
      Vec u(3);
      u << rng.uniform(0.5, 1.07), rng.uniform(-0.8, 0.8), rng.uniform(0.0, 2.0 * kPi);
      const double lap = laplace_beltrami(g, f, u, h);
      eig_err = std::max(eig_err, std::abs(lap + 3.0 * f(u)) / std::abs(f(u)));
    }
    b.check("first eigenfunction of the round chart", "Delta(cos th cos ph) = -3 cos th cos ph",
            eig_err, 1e-3 * std::max(scale, 1.0));
  }

  {
    double dec_err = 0.0;
    for (int t = 0; t < 10; ++t) {
      Vec u(3);
      u << rng.uniform(0.5, 1.07), rng.uniform(-0.8, 0.8), rng.uniform(0.0, 2.0 * kPi);
      dec_err = std::max(dec_err,
                         warped_decomposition_residual(chart, InnerProductKind::TraceForm, f, u));
    }
    b.check("warped split of the laplacian", "Delta = Delta_S + sum x_i^{-2} Delta_G,i + L",
            dec_err, 1e-5 * std::max(scale, 1.0));
  }

  {
    // f depending only on theta: L collapses to (cot - tan) d_theta.
    const auto ftheta = [](const Vec& u) { return std::sin(u(0)); };
    double l_err = 0.0;
    for (int t = 0; t < 5; ++t) {
      Vec u(3);
      u << rng.uniform(0.5, 1.07), rng.uniform(0.0, 2.0 * kPi), rng.uniform(0.0, 2.0 * kPi);
      const auto dec = warped_decomposition(chart, InnerProductKind::TraceForm, ftheta, u);
      const double expected = (1.0 / std::tan(u(0)) - std::tan(u(0))) * std::cos(u(0));
      l_err = std::max(l_err, std::abs(dec.first_order_part - expected));
    }
    b.check("first-order term on theta-only fields", "L = (cot th - tan th) d_th", l_err, 1e-4);
  }

  {
    PeriodicGrid grid;
    grid.lo = Vec::Zero(1);
    grid.hi = Vec::Constant(1, 2.0 * kPi);
    grid.shape = {cfg.grid > 0 ? cfg.grid : 128};
    const DiscreteHodge hodge = build_discrete_hodge(euclidean_metric(1), grid);
    const Vec fs = sample_function(grid, [](const Vec& u) { return std::sin(u(0)); });
    const Vec alpha = hodge.d * fs;
    const Vec delta_df = codifferential_1form(hodge, alpha);

    // Independent wide-stencil oracle for d^T d on the flat circle.
    const int n = grid.size();
    const double spacing = grid.spacing(0);
    Vec oracle(n);
    for (int j = 0; j < n; ++j) {
      const int jp = grid.neighbour(j, 0, +2);
      const int jm = grid.neighbour(j, 0, -2);
      oracle(j) = -(fs(jp) - 2.0 * fs(j) + fs(jm)) / (4.0 * spacing * spacing);
    }
    b.check("discrete hodge identity on the flat circle", "delta d f = -Delta f",
            (delta_df - oracle).norm(), 1e-10);

    Rng arng(cfg.seed + 1);
    Vec rf(n), ra(n);
    for (int j = 0; j < n; ++j) {
      rf(j) = arng.normal();
      ra(j) = arng.normal();
    }
    const double adj =
        std::abs(hodge.inner1(hodge.d * rf, ra) - hodge.inner0(rf, codifferential_1form(hodge, ra)));
    b.check("codifferential adjointness", "<df, a> = <f, delta a>", adj, 1e-12);

    const Vec harmonic = Vec::Ones(n);  // constant 1-form coefficients
    b.check("constant 1-forms are coclosed on the flat circle", "delta a = 0",
            codifferential_1form(hodge, harmonic).norm(), 1e-10);
  }

  {
    FormField field;
    field.chart_dim = 3;
    field.degree = 1;
    field.coefficients = [](const Vec& u) {
      Vec c(3);
      c << std::sin(u(1)) * u(2), std::cos(u(0)), u(0) * u(1);
      return c;
    };
    Vec u(3);
    u << 0.4, 0.7, -0.2;
    const FormField df = exterior_derivative(field, 1e-3);
    const double dd = exterior_derivative_value(df, u, 1e-3).norm();
    b.check("d compose d vanishes", "d(d omega) = 0", dd, 1e-4);
  }
}

// ---------------------------------------------------------------- clifford

void suite_clifford(SuiteBuilder& b, const VerifyConfig& cfg) {
  Rng rng(cfg.seed);

  double rel = 0.0;
  for (int r = 1; r <= 10; ++r) {
    rel = std::max(rel, clifford_relation_residual(gamma_generators(r)));
    std::vector<int> sig(static_cast<std::size_t>(r), 1);
    for (int a = 0; a < r; a += 2) sig[static_cast<std::size_t>(a)] = -1;
    rel = std::max(rel, clifford_relation_residual(gamma_generators(r, sig)));
  }
  b.check("clifford relation for ranks 1..10", "gamma_a gamma_b + gamma_b gamma_a = -2 eta_ab",
          rel, 1e-12);

  const int r = 4;
  const CliffordRep rep = gamma_generators(r);
  Frame frame;
  frame.vectors = RealMat::Identity(r, r);
  frame.metric = RealMat::Identity(r, r);
  frame.signature.assign(static_cast<std::size_t>(r), 1);

  double square = 0.0;
  for (int t = 0; t < 20; ++t) {
    Vec v(r);
    for (int i = 0; i < r; ++i) v(i) = rng.normal();
    const Mat c = clifford_of_vector(rep, frame, v);
    square = std::max(square,
                      (c * c + v.squaredNorm() * Mat::Identity(c.rows(), c.cols())).norm());
  }
  b.check("clifford square of a vector", "c(v)^2 = -<v,v> Id", square, 1e-10);

  double indep = 0.0;
  for (int t = 0; t < 100; ++t) {
    RealMat noise(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) noise(i, j) = rng.normal();
    const RealMat q = Eigen::HouseholderQR<RealMat>(noise).householderQ();
    Frame rotated = frame;
    rotated.vectors = frame.vectors * q.transpose();
    Vec xi(r);
    for (int i = 0; i < r; ++i) xi(i) = rng.normal();
    indep = std::max(indep, frame_independence_residual(rep, frame, rotated, xi));
  }
  b.check("dirac contraction is frame independent", "sum_a A_ab A_ac = delta_bc", indep, 1e-10);

  double sym = 0.0;
  for (int t = 0; t < 20; ++t) {
    Vec xi(r);
    for (int i = 0; i < r; ++i) xi(i) = rng.normal();
    sym = std::max(sym, dirac_square_symbol_check(rep, frame, xi));
  }
  b.check("squared symbol of the dirac contraction", "c(xi)^2 = -|xi|^2 Id", sym, 1e-10);

  double gram = 0.0;
  const std::vector<LieGroupSpec> specs = {make_spec(LieFamily::SpecialOrthogonal, 3),
                                           make_spec(LieFamily::SpecialUnitary, 2),
                                           make_spec(LieFamily::Lorentz, 2)};
  for (const auto& spec : specs) {
    const auto algebra_frame = orthonormal_algebra_frame(spec);
    for (int t = 0; t < 5; ++t) {
      MilnorPoint p = random_point(spec, rng, 3, 6);
      const auto wf = warped_frame(p, algebra_frame);
      const RealMat gm = tangent_gram(p, wf);
      gram = std::max(gram,
                      (gm - RealMat::Identity(gm.rows(), gm.cols())).norm());
    }
  }
  b.check("warped fiber frame is orthonormal", "f~ = f / x_i has unit barycentric gram", gram,
          1e-8);
}

// -------------------------------------------------------------------- dirac

void suite_dirac(SuiteBuilder& b, const VerifyConfig& cfg) {
  const int n = cfg.grid > 0 ? cfg.grid : 512;

  const OperatorMatrix plain = circle_dirac(n, false);
  const OperatorMatrix twisted = circle_dirac(n, true);
  b.check("circle dirac hermiticity", "D = D*",
          std::max(plain.hermiticity_residual(), twisted.hermiticity_residual()), 1e-12);

  const Vec ev_plain = sorted_eigenvalues(plain);
  const Vec ev_twisted = sorted_eigenvalues(twisted);

  double int_dev = 0.0;
  int near_zero_plain = 0;
  for (Eigen::Index i = 0; i < ev_plain.size(); ++i) {
    const double l = ev_plain(i);
    if (std::abs(l) <= 3.0 + 0.5) int_dev = std::max(int_dev, std::abs(l - std::round(l)));
    if (std::abs(l) < 0.4) ++near_zero_plain;
  }
  b.check("periodic spectrum sits on the integers", "spec(i d/dphi) = Z", int_dev, 1e-3);
  b.require("periodic kernel is the constant mode", "dim ker = 1", near_zero_plain == 1);

  double half_dev = 0.0;
  int near_zero_twisted = 0;
  double gap = 1e300;
  for (Eigen::Index i = 0; i < ev_twisted.size(); ++i) {
    const double l = ev_twisted(i);
    if (std::abs(l) <= 3.0 + 0.5)
      half_dev = std::max(half_dev, std::abs(l - (std::round(l - 0.5) + 0.5)));
    if (std::abs(l) < 0.4) ++near_zero_twisted;
    gap = std::min(gap, std::abs(l));
  }
  b.check("antiperiodic spectrum sits on the half-integers", "spec = Z + 1/2", half_dev, 1e-3);
  b.require("twist removes the kernel", "0 not in spec(D_alpha)", near_zero_twisted == 0);
  b.check("twisted spectral gap", "|spec(D_alpha)| >= 1/2", std::max(0.0, 0.49 - gap), 0.0);
}

// -------------------------------------------------------------------- chern

void suite_chern(SuiteBuilder& b, const VerifyConfig& cfg) {
  Rng rng(cfg.seed);
  const auto su2 = make_spec(LieFamily::SpecialUnitary, 2);
  const auto frame = orthonormal_algebra_frame(su2);

  {
    const Plot plot = exp_product_chart(su2, Mat::Identity(2, 2), {frame[0], frame[1]});
    const ConnectionField theta = connection_form(plot);
    Vec u(2);
    u << 0.3, -0.4;
    const auto f = curvature(theta, u, 1e-3);
    double flat = 0.0;
    for (const auto& m : f) flat = std::max(flat, m.norm());
    b.check("maurer-cartan connection is flat", "d theta + (1/2)[theta, theta] = 0", flat, 1e-4);

    double tr = 0.0;
    const ChernValue c1 = chern_form(theta, 1, u, 1e-3);
    tr = std::max(tr, c1.coefficients.norm());
    b.check("first chern form vanishes on su(n)", "tr F = 0", tr, 1e-8);
  }

  {
    // Smooth connection on a 3-cube: Bianchi residual is truncation-dominated
    // and decays like the stencil order under halving of h.
    std::vector<Mat> coeff;
    for (int i = 0; i < 9; ++i) coeff.push_back(random_algebra(su2, rng, 0.4));
    ConnectionField theta;
    theta.chart_dim = 3;
    theta.spec = su2;
    theta.components = [coeff](const Vec& u) {
      std::vector<Mat> c(3);
      for (int a = 0; a < 3; ++a)
        c[static_cast<std::size_t>(a)] =
            std::sin(u(0) + 2.0 * u(1)) * coeff[static_cast<std::size_t>(3 * a)] +
            std::cos(u(2) - u(a)) * coeff[static_cast<std::size_t>(3 * a + 1)] +
            std::sin(3.0 * u(2)) * coeff[static_cast<std::size_t>(3 * a + 2)];
      return c;
    };
    Vec u(3);
    u << 0.2, -0.3, 0.5;
    const double r1 = bianchi_residual(theta, u, 2e-2);
    const double r2 = bianchi_residual(theta, u, 1e-2);
    const double r4 = bianchi_residual(theta, u, 5e-3);
    const double ratio1 = r1 / std::max(r2, 1e-300);
    const double ratio2 = r2 / std::max(r4, 1e-300);
    b.check("bianchi residual magnitude", "dF + [Theta ^ F] = 0", r2, 1e-1);
    b.require("bianchi residual decays under h-halving",
              "residual = O(h) (ratio within [1.5, 4.5])",
              ratio1 >= 1.5 && ratio1 <= 4.5 && ratio2 >= 1.5 && ratio2 <= 4.5);
  }

  {
    const auto so2 = make_spec(LieFamily::SpecialOrthogonal, 2);
    Mat j(2, 2);
    j << 0, -1, 1, 0;
    ConnectionField theta;
    theta.chart_dim = 3;
    theta.spec = so2;
    theta.components = [j](const Vec& u) {
      std::vector<Mat> c(3);
      c[0] = std::sin(u(1)) * j;
      c[1] = u(2) * u(2) * j;
      c[2] = std::cos(u(0) * u(1)) * j;
      return c;
    };
    Vec u(3);
    u << 0.4, 0.1, -0.6;
    b.check("abelian bianchi is the d^2 residual", "dF = d(dTheta) = 0",
            bianchi_residual(theta, u, 1e-2), 1e-3);
    const ChernValue c1 = chern_form(theta, 1, u, 1e-2);
    b.check("abelian first chern form is closed", "d tr F = 0", c1.closedness_residual, 1e-3);
  }
}

// ------------------------------------------------------------------- defect

void suite_defect(SuiteBuilder& b, const VerifyConfig& cfg) {
  const int n = cfg.grid > 0 ? cfg.grid : 256;
  const OperatorMatrix lap = circle_laplacian(n);

  b.check("identity has zero defect", "D_D(id) = 0",
          defect_operator(lap, [](double t) { return t; }).norm, 0.0);

  b.check("rotations preserve the circle laplacian", "D_D(rot) = 0 for isometries",
          defect_operator(lap, [](double t) { return t + 0.7; }).norm, 1e-6);

  const double spacing = 2.0 * kPi / n;
  b.check("grid rotations have machine-zero defect", "D_D(rot_{2 pi/N}) = 0",
          defect_operator(lap, [spacing](double t) { return t + spacing; }).norm, 1e-10);

  const auto wobble = [](double t) { return t + 0.3 * std::sin(t); };
  const double non_iso = defect_operator(lap, wobble).norm;
  b.check("non-isometries have visible defect", "D_D(phi) = 0 iff phi preserves D",
          std::max(0.0, 0.1 - non_iso), 0.0);

  b.check("rotation field has zero infinitesimal defect", "[L_X, D] = 0 for Killing fields",
          infinitesimal_defect(lap, [](double) { return 1.0; }).norm, 1e-5);

  const auto sin_field = [](double t) { return std::sin(t); };
  const double inf_norm = infinitesimal_defect(lap, sin_field).norm;
  b.check("sin field has visible infinitesimal defect", "[L_X, D] != 0",
          std::max(0.0, 0.1 - inf_norm), 0.0);

  const double t_step = 1e-5;
  const double flow =
      defect_operator(lap, [t_step](double t) { return t + t_step * std::sin(t); }).norm / t_step;
  b.check("infinitesimal defect matches the flow derivative", "d/dt D_D(phi_t) at 0 = [L_X, D]",
          std::abs(flow - inf_norm) / inf_norm, 0.05);
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"liegroup", "sphere", "milnor", "metric",
                                                 "laplace",  "clifford", "dirac", "chern",
                                                 "defect",   "all"};
  return names;
}

Report run_verify(const std::string& suite, const VerifyConfig& config) {
  Report report;
  report.command = "verify";
  report.suite = suite;
  report.seed = config.seed;
  SuiteBuilder builder(report, config);

  const auto run_one = [&](const std::string& name) {
    if (name == "liegroup") suite_liegroup(builder, config);
    else if (name == "sphere") suite_sphere(builder, config);
    else if (name == "milnor") suite_milnor(builder, config);
    else if (name == "metric") suite_metric(builder, config);
    else if (name == "laplace") suite_laplace(builder, config);
    else if (name == "clifford") suite_clifford(builder, config);
    else if (name == "dirac") suite_dirac(builder, config);
    else if (name == "chern") suite_chern(builder, config);
    else if (name == "defect") suite_defect(builder, config);
    else throw std::invalid_argument("unknown verify suite: " + name);
  };

  if (suite == "all") {
    for (const auto& name : verify_suite_names())
      if (name != "all") run_one(name);
  } else {
    run_one(suite);
  }
  return report;
}

}  // namespace milnor
