// Acceptance gate: every criterion below runs at its stated tolerance and
// prints one pass/fail line. The last criterion shells out to the CLI twice
// and compares the reports byte for byte.

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "milnor/chart.hpp"
#include "milnor/circle.hpp"
#include "milnor/clifford.hpp"
#include "milnor/connection.hpp"
#include "milnor/milnor_space.hpp"
#include "milnor/sphere.hpp"

using namespace milnor;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Criterion {
  int id;
  std::string label;
  bool pass = true;
  double worst = 0.0;

  void bound(double value, double tolerance) {
    worst = std::max(worst, value);
    if (!(value <= tolerance)) pass = false;
  }
  void hold(bool condition) {
    if (!condition) pass = false;
  }
  ~Criterion() {
    std::printf("[%s] criterion %2d: %s (worst %.3e)\n", pass ? "PASS" : "FAIL", id,
                label.c_str(), worst);
    std::fflush(stdout);
    CHECK_MESSAGE(pass, label);
  }
};

double wall_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("1. fisher-rao desingularization") {
  Criterion c{1, "fisher-rao pullback residual <= 1e-10 on 1000 interior points"};
  Rng rng(42);
  const double start = wall_seconds();
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + static_cast<int>(rng.integer(7));  // |I| <= 8
    Vec raw(n), w(n);
    for (int i = 0; i < n; ++i) {
      raw(i) = std::abs(rng.normal()) + 0.05;
      w(i) = rng.normal();
    }
    const auto x = SphericalPoint::make(raw.normalized());
    Vec v = tangent_project(x, w);
    if (v.norm() > 1e-12) v.normalize();
    c.bound(fr_pullback_residual(x, v), 1e-10);
  }
  c.hold(wall_seconds() - start < 1.0);
}

TEST_CASE("2. quadratic invisibility") {
  Criterion c{2, "t'(0) <= 1e-8 and |t''(0) - 2v^2| <= 1e-4 for 100 random v"};
  Rng rng(42);
  for (int t = 0; t < 100; ++t) {
    const double v = rng.uniform(-5.0, 5.0);
    const auto [d1, d2] = quadratic_invisibility(v);
    c.bound(std::abs(d1), 1e-8);
    c.bound(std::abs(d2 - 2.0 * v * v), 1e-4);
  }
}

TEST_CASE("3. metric kernel law") {
  Criterion c{3, "kernel dimension (|I|-|J|) dim g and pairing <= 1e-12 on it"};
  Rng rng(42);
  const std::vector<LieGroupSpec> specs = {
      make_spec(LieFamily::Orthogonal, 2), make_spec(LieFamily::SpecialOrthogonal, 3),
      make_spec(LieFamily::SpecialUnitary, 2), make_spec(LieFamily::Lorentz, 2)};
  for (const auto& spec : specs) {
    for (int t = 0; t < 10; ++t) {
      const MilnorPoint p = random_point(spec, rng, 3, 8);
      auto ambient = p.support();
      ambient.push_back(40 + rng.integer(4));
      ambient.push_back(50 + rng.integer(4));
      std::sort(ambient.begin(), ambient.end());
      const auto kernel = kernel_basis(p, ambient);
      c.hold(kernel.size() ==
             (ambient.size() - p.entries.size()) * static_cast<std::size_t>(spec.algebra_dim()));
      const auto tangents = tangent_basis(p, ambient);
      for (const auto& [idx, xi] : kernel) {
        const MilnorTangent kv = kernel_tangent(p, idx, xi);
        c.bound(std::abs(metric_eval(p, kv, kv)), 1e-12);
        for (const auto& tv : tangents) c.bound(std::abs(metric_eval(p, kv, tv)), 1e-12);
      }
    }
  }
}

TEST_CASE("4. metric invariance") {
  Criterion c{4, "group/sign invariance residuals <= 1e-8 on both charts, 20 transforms"};
  Rng rng(42);
  const Plot s3 = s3_chart();
  const Plot su2 = su2_two_node_chart();
  for (int t = 0; t < 20; ++t) {
    c.bound(invariance_residual(s3, InnerProductKind::TraceForm, random_group(s3.spec, rng)),
            1e-8);
    c.bound(invariance_residual(su2, InnerProductKind::ReTraceForm,
                                random_group(su2.spec, rng)),
            1e-8);
  }
  c.bound(invariance_residual_z2(s3, InnerProductKind::TraceForm, -1), 1e-8);
  c.bound(invariance_residual_z2(su2, InnerProductKind::ReTraceForm, -1), 1e-8);
}

TEST_CASE("5. warped laplacian") {
  Criterion c{5, "round-chart eigenfunction 1e-3 and warped split 1e-5 at 50 points"};
  Rng rng(42);
  const double start = wall_seconds();
  const Plot chart = s3_chart();
  const PulledMetric g = pullback_metric(chart, InnerProductKind::TraceForm);
  const auto f = [](const Vec& u) { return std::cos(u(0)) * std::cos(u(1)); };
  const double h = 1e-3;
  for (int t = 0; t < 50; ++t) {
    Vec u(3);
    u << rng.uniform(0.5, 1.07), rng.uniform(-0.8, 0.8), rng.uniform(0.0, 2.0 * kPi);
    const double lap = laplace_beltrami(g, f, u, h);
    c.bound(std::abs(lap + 3.0 * f(u)) / std::abs(f(u)), 1e-3);
    c.bound(warped_decomposition_residual(chart, InnerProductKind::TraceForm, f, u), 1e-5);
  }
  c.hold(wall_seconds() - start < 10.0);
}

TEST_CASE("6. geodesics") {
  Criterion c{6, "round-chart geodesic length vs ambient arccos <= 1e-3, 10 pairs"};
  Rng rng(42);
  const Plot chart = s3_chart();
  const PulledMetric g = pullback_metric(chart, InnerProductKind::TraceForm);
  for (int t = 0; t < 10; ++t) {
    Vec p(3), q(3);
    p << rng.uniform(0.35, 1.15), rng.uniform(0.0, 2.0 * kPi), rng.uniform(0.0, 2.0 * kPi);
    q = p;
    q(0) += rng.uniform(-0.25, 0.25);
    q(1) += rng.uniform(-0.5, 0.5);
    q(2) += rng.uniform(-0.5, 0.5);
    const GeodesicResult res = geodesic(g, p, q, 32);
    c.hold(res.converged && res.iterations <= 10000);
    const double expected =
        std::acos(std::clamp(s3_ambient(p).dot(s3_ambient(q)), -1.0, 1.0));
    c.bound(std::abs(res.length - expected), 1e-3);
  }
}

TEST_CASE("7. clifford and dirac algebra") {
  Criterion c{7, "relation 1e-12 ranks 1-10, frame independence 1e-10, warped gram 1e-8"};
  Rng rng(42);
  for (int r = 1; r <= 10; ++r)
    c.bound(clifford_relation_residual(gamma_generators(r)), 1e-12);

  const int r = 4;
  const CliffordRep rep = gamma_generators(r);
  Frame frame;
  frame.vectors = RealMat::Identity(r, r);
  frame.metric = RealMat::Identity(r, r);
  frame.signature.assign(r, 1);
  for (int t = 0; t < 100; ++t) {
    RealMat noise(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) noise(i, j) = rng.normal();
    Frame rotated = frame;
    rotated.vectors = frame.vectors * Eigen::HouseholderQR<RealMat>(noise).householderQ();
    Vec xi(r);
    for (int i = 0; i < r; ++i) xi(i) = rng.normal();
    c.bound(frame_independence_residual(rep, frame, rotated, xi), 1e-10);
  }

  for (const auto& spec :
       {make_spec(LieFamily::SpecialOrthogonal, 3), make_spec(LieFamily::SpecialUnitary, 2),
        make_spec(LieFamily::Lorentz, 2)}) {
    const auto af = orthonormal_algebra_frame(spec);
    for (int t = 0; t < 5; ++t) {
      const MilnorPoint p = random_point(spec, rng, 3, 6);
      const RealMat gram = tangent_gram(p, warped_frame(p, af));
      c.bound((gram - RealMat::Identity(gram.rows(), gram.cols())).norm(), 1e-8);
    }
  }
}

TEST_CASE("8. twisted spectra") {
  Criterion c{8, "N=512 spectra: integers / half-integers within 1e-3, gap >= 0.49"};
  const double start = wall_seconds();
  const Vec plain = sorted_eigenvalues(circle_dirac(512, false));
  const Vec twisted = sorted_eigenvalues(circle_dirac(512, true));
  for (Eigen::Index i = 0; i < plain.size(); ++i)
    if (std::abs(plain(i)) <= 3.0 + 0.5)
      c.bound(std::abs(plain(i) - std::round(plain(i))), 1e-3);
  double gap = 1e300;
  for (Eigen::Index i = 0; i < twisted.size(); ++i) {
    if (std::abs(twisted(i)) <= 3.0 + 0.5)
      c.bound(std::abs(twisted(i) - (std::round(twisted(i) - 0.5) + 0.5)), 1e-3);
    gap = std::min(gap, std::abs(twisted(i)));
  }
  c.hold(gap >= 0.49);
  c.hold(wall_seconds() - start < 5.0);
}

TEST_CASE("9. chern-weil") {
  Criterion c{9, "mc flatness 1e-3, bianchi O(h) ratios in [1.5,4.5], tr F <= 1e-8"};
  Rng rng(42);
  const auto su2 = make_spec(LieFamily::SpecialUnitary, 2);
  const auto basis = algebra_basis(su2);

  const Plot plot = exp_product_chart(su2, Mat::Identity(2, 2), {basis[0], basis[1]});
  const ConnectionField mc = connection_form(plot);
  Vec u2(2);
  u2 << 0.3, -0.4;
  for (const auto& m : curvature(mc, u2, 1e-3)) c.bound(m.norm(), 1e-3);
  c.bound(chern_form(mc, 1, u2, 1e-3).coefficients.norm(), 1e-8);

  std::vector<Mat> coeff;
  for (int i = 0; i < 9; ++i) coeff.push_back(random_algebra(su2, rng, 0.4));
  ConnectionField theta;
  theta.chart_dim = 3;
  theta.spec = su2;
  theta.components = [coeff](const Vec& u) {
    std::vector<Mat> comp(3);
    for (int a = 0; a < 3; ++a)
      comp[(std::size_t)a] =
          std::sin(u(0) + 2.0 * u(1)) * coeff[(std::size_t)(3 * a)] +
          std::cos(u(2) - u(a)) * coeff[(std::size_t)(3 * a + 1)] +
          std::sin(3.0 * u(2)) * coeff[(std::size_t)(3 * a + 2)];
    return comp;
  };
  Vec u3(3);
  u3 << 0.2, -0.3, 0.5;
  const double r1 = bianchi_residual(theta, u3, 2e-2);
  const double r2 = bianchi_residual(theta, u3, 1e-2);
  const double r4 = bianchi_residual(theta, u3, 5e-3);
  c.hold(r1 / r2 >= 1.5 && r1 / r2 <= 4.5);
  c.hold(r2 / r4 >= 1.5 && r2 / r4 <= 4.5);
  c.bound(chern_form(theta, 1, u3, 1e-2).coefficients.norm(), 1e-8);
}

TEST_CASE("10. defect operators") {
  Criterion c{10, "rotation defect 1e-6, identity 0, wobble > 0.1, flow match 5%"};
  const int n = 256;
  const OperatorMatrix lap = circle_laplacian(n);

  c.hold(defect_operator(lap, [](double t) { return t; }).norm == 0.0);
  c.bound(defect_operator(lap, [](double t) { return t + 0.7; }).norm, 1e-6);
  c.hold(defect_operator(lap, [](double t) { return t + 0.3 * std::sin(t); }).norm > 0.1);

  c.bound(infinitesimal_defect(lap, [](double) { return 1.0; }).norm, 1e-5);
  const double inf_norm = infinitesimal_defect(lap, [](double t) { return std::sin(t); }).norm;
  const double t_step = 1e-5;
  const double flow =
      defect_operator(lap, [t_step](double t) { return t + t_step * std::sin(t); }).norm /
      t_step;
  c.bound(std::abs(flow - inf_norm) / inf_norm, 0.05);
}

TEST_CASE("11. contraction") {
  Criterion c{11, "H_0 = id exactly, stage-2 end = base exactly, denominator > 0"};
  Rng rng(42);
  const auto spec = make_spec(LieFamily::SpecialOrthogonal, 2);

  const MilnorPoint p = random_point(spec, rng, 5, 10);
  const MilnorPoint start = shift_contraction(p, 0.0, 1);
  c.hold(start.entries.size() == p.entries.size());
  for (std::size_t k = 0; k < p.entries.size(); ++k) {
    c.hold(start.entries[k].index == p.entries[k].index);
    c.hold(start.entries[k].weight == p.entries[k].weight);
    c.hold((start.entries[k].group - p.entries[k].group).norm() == 0.0);
  }
  const MilnorPoint end = shift_contraction(p, 1.0, 2);
  c.hold(end.entries.size() == 1 && end.entries[0].index == 0 &&
         end.entries[0].weight == 1.0 &&
         (end.entries[0].group - Mat::Identity(2, 2)).norm() == 0.0);

  double min_denom = 1e300;
  for (int t = 0; t < 10000; ++t) {
    const MilnorPoint q = random_point(spec, rng, 8, 16);
    for (int j = 0; j <= 100; ++j)
      min_denom = std::min(min_denom, shift_denominator(q, j / 100.0));
  }
  c.hold(min_denom > 0.0);
}

TEST_CASE("12. determinism and runtime of the verify suite") {
  Criterion c{12, "verify all --seed 42 twice: byte-identical reports, < 60 s"};
#ifdef MILNOR_CLI_PATH
  const std::string cli = MILNOR_CLI_PATH;
  const std::string r1 = "/tmp/milnor_report_1.json";
  const std::string r2 = "/tmp/milnor_report_2.json";
  const double start = wall_seconds();
  const int code1 = std::system((cli + " verify all --seed 42 --out " + r1 + " 2>/dev/null").c_str());
  const double first_run = wall_seconds() - start;
  const int code2 = std::system((cli + " verify all --seed 42 --out " + r2 + " 2>/dev/null").c_str());
  c.hold(code1 == 0 && code2 == 0);
  const std::string a = slurp(r1);
  const std::string b = slurp(r2);
  c.hold(!a.empty() && a == b);
  c.hold(first_run < 60.0);
  std::remove(r1.c_str());
  std::remove(r2.c_str());
#else
  c.hold(false);
#endif
}
