#include "milnor/demos.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "milnor/chart.hpp"
#include "milnor/circle.hpp"
#include "milnor/connection.hpp"
#include "milnor/milnor_space.hpp"
#include "milnor/sphere.hpp"

namespace milnor {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

void write_summary(const DemoConfig& cfg, const std::string& name, const nlohmann::json& j) {
  write_file(cfg.out_dir + "/" + name + ".json", j.dump(2) + "\n");
}

bool demo_fisher_rao(const DemoConfig& cfg) {
  std::ostringstream csv;
  csv << "theta,fisher_rao,euclidean_times_4\n";
  csv.precision(17);
  double max_dev = 0.0;
  const int rows = 200;
  for (int i = 0; i < rows; ++i) {
    const double theta = 0.05 + (kPi / 2.0 - 0.1) * i / (rows - 1.0);
    Vec x(2), v(2);
    x << std::cos(theta), std::sin(theta);
    v << -std::sin(theta), std::cos(theta);
    const auto sp = SphericalPoint::make(x);
    const Vec dt = 2.0 * x.array() * v.array();
    const double fr = fisher_rao_eval(square_map(sp), dt, dt);
    const double eu = 4.0 * v.squaredNorm();
    max_dev = std::max(max_dev, std::abs(fr - eu));
    csv << theta << "," << fr << "," << eu << "\n";
  }
  write_file(cfg.out_dir + "/fisher_rao.csv", csv.str());
  write_summary(cfg, "fisher_rao",
                {{"rows", rows}, {"max_deviation", max_dev}, {"tolerance", 1e-10}});
  return max_dev <= 1e-10;
}

bool demo_s3_laplacian(const DemoConfig& cfg) {
  Rng rng(cfg.seed);
  const Plot chart = s3_chart();
  const PulledMetric g = pullback_metric(chart, InnerProductKind::TraceForm);
  const auto f = [](const Vec& u) { return std::cos(u(0)) * std::cos(u(1)); };
  const double h = 1e-3;

  std::ostringstream csv;
  csv << "theta,phi1,phi2,laplacian,minus_3f,rel_residual\n";
  csv.precision(17);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    Vec u(3);
    u << rng.uniform(0.5, 1.07), rng.uniform(-0.8, 0.8), rng.uniform(0.0, 2.0 * kPi);
    const double lap = laplace_beltrami(g, f, u, h);
    const double target = -3.0 * f(u);
    const double rel = std::abs(lap - target) / std::abs(f(u));
    worst = std::max(worst, rel);
    csv << u(0) << "," << u(1) << "," << u(2) << "," << lap << "," << target << "," << rel
        << "\n";
  }
  write_file(cfg.out_dir + "/s3_laplacian.csv", csv.str());

  std::ostringstream metric_csv;
  metric_csv << "theta,g_theta_theta,g_phi1_phi1,g_phi2_phi2\n";
  metric_csv.precision(17);
  for (int i = 0; i <= 40; ++i) {
    Vec u(3);
    u << 0.3 + (1.2 - 0.3) * i / 40.0, 0.8, 2.1;
    const RealMat m = g.eval(u);
    metric_csv << u(0) << "," << m(0, 0) << "," << m(1, 1) << "," << m(2, 2) << "\n";
  }
  write_file(cfg.out_dir + "/s3_metric.csv", metric_csv.str());

  write_summary(cfg, "s3_laplacian",
                {{"points", 50}, {"h", h}, {"max_rel_residual", worst}, {"tolerance", 1e-3}});
  return worst <= 1e-3;
}

bool demo_geodesic(const DemoConfig& cfg) {
  const Plot chart = s3_chart();
  const PulledMetric g = pullback_metric(chart, InnerProductKind::TraceForm);
  Vec p(3), q(3);
  p << 0.4, 0.2, 0.5;
  q << 0.9, 1.1, 1.2;
  const GeodesicResult res = geodesic(g, p, q, 32);
  const double reference = std::acos(std::clamp(s3_ambient(p).dot(s3_ambient(q)), -1.0, 1.0));

  std::ostringstream csv;
  csv << "theta,phi1,phi2\n";
  csv.precision(17);
  for (const auto& node : res.nodes) csv << node(0) << "," << node(1) << "," << node(2) << "\n";
  write_file(cfg.out_dir + "/geodesic.csv", csv.str());
  write_summary(cfg, "geodesic",
                {{"length", res.length},
                 {"ambient_arccos", reference},
                 {"abs_error", std::abs(res.length - reference)},
                 {"iterations", res.iterations},
                 {"gradient_norm", res.grad_norm},
                 {"tolerance", 1e-3}});
  return std::abs(res.length - reference) <= 1e-3;
}

bool demo_chern_weil(const DemoConfig& cfg) {
  Rng rng(cfg.seed);
  const auto su2 = make_spec(LieFamily::SpecialUnitary, 2);

  const auto basis = algebra_basis(su2);
  const Plot plot =
      exp_product_chart(su2, Mat::Identity(2, 2), {basis[0], basis[1]});
  const ConnectionField mc = connection_form(plot);
  Vec u2(2);
  u2 << 0.3, -0.4;
  double flatness = 0.0;
  for (const auto& m : curvature(mc, u2, 1e-3)) flatness = std::max(flatness, m.norm());
  const double trace_norm = chern_form(mc, 1, u2, 1e-3).coefficients.norm();

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
  Vec u3(3);
  u3 << 0.2, -0.3, 0.5;
  const double r1 = bianchi_residual(theta, u3, 2e-2);
  const double r2 = bianchi_residual(theta, u3, 1e-2);
  const double r4 = bianchi_residual(theta, u3, 5e-3);

  std::ostringstream csv;
  csv << "h,bianchi_residual\n";
  csv.precision(17);
  csv << 2e-2 << "," << r1 << "\n" << 1e-2 << "," << r2 << "\n" << 5e-3 << "," << r4 << "\n";
  write_file(cfg.out_dir + "/chern_weil.csv", csv.str());

  const double ratio1 = r1 / r2, ratio2 = r2 / r4;
  const bool ok = flatness <= 1e-3 && trace_norm <= 1e-8 && ratio1 >= 1.5 && ratio1 <= 4.5 &&
                  ratio2 >= 1.5 && ratio2 <= 4.5;
  write_summary(cfg, "chern_weil",
                {{"mc_flatness", flatness},
                 {"trace_F_norm", trace_norm},
                 {"bianchi", {{"h_2e-2", r1}, {"h_1e-2", r2}, {"h_5e-3", r4}}},
                 {"halving_ratios", {ratio1, ratio2}},
                 {"pass", ok}});
  return ok;
}

bool demo_dirac_circle(const DemoConfig& cfg) {
  const int n = cfg.n;
  const OperatorMatrix plain = circle_dirac(n, false);
  const OperatorMatrix twisted = circle_dirac(n, true);
  const Vec ev_plain = sorted_eigenvalues(plain);
  const Vec ev_twisted = sorted_eigenvalues(twisted);

  const auto dump = [](const Vec& ev) {
    std::ostringstream csv;
    csv << "eigenvalue\n";
    csv.precision(17);
    for (Eigen::Index i = 0; i < ev.size(); ++i) csv << ev(i) << "\n";
    return csv.str();
  };
  write_file(cfg.out_dir + "/dirac_circle_periodic.csv", dump(ev_plain));
  write_file(cfg.out_dir + "/dirac_circle_twisted.csv", dump(ev_twisted));

  double gap = 1e300;
  for (Eigen::Index i = 0; i < ev_twisted.size(); ++i) gap = std::min(gap, std::abs(ev_twisted(i)));
  double int_dev = 0.0, half_dev = 0.0;
  for (Eigen::Index i = 0; i < ev_plain.size(); ++i)
    if (std::abs(ev_plain(i)) <= 3.5)
      int_dev = std::max(int_dev, std::abs(ev_plain(i) - std::round(ev_plain(i))));
  for (Eigen::Index i = 0; i < ev_twisted.size(); ++i)
    if (std::abs(ev_twisted(i)) <= 3.5)
      half_dev = std::max(half_dev,
                          std::abs(ev_twisted(i) - (std::round(ev_twisted(i) - 0.5) + 0.5)));

  const bool ok = gap >= 0.49 && int_dev <= 1e-3 && half_dev <= 1e-3;
  write_summary(cfg, "dirac_circle",
                {{"grid", n},
                 {"twisted_gap", gap},
                 {"max_integer_deviation", int_dev},
                 {"max_half_integer_deviation", half_dev},
                 {"pass", ok}});
  return ok;
}

bool demo_defect(const DemoConfig& cfg) {
  const int n = std::min(cfg.n, 256);
  const OperatorMatrix lap = circle_laplacian(n);

  nlohmann::json entries = nlohmann::json::array();
  std::ostringstream csv;
  csv << "phi,defect_norm,iso_flag\n";
  csv.precision(17);

  const auto record = [&](const std::string& desc, double norm, bool iso) {
    entries.push_back({{"phi_description", desc}, {"norm", norm}, {"iso_flag", iso}});
    csv << desc << "," << norm << "," << (iso ? 1 : 0) << "\n";
  };

  const double identity = defect_operator(lap, [](double t) { return t; }).norm;
  record("identity", identity, true);
  const double rotation = defect_operator(lap, [](double t) { return t + 0.7; }).norm;
  record("rotation_0.7", rotation, true);
  const double wobble =
      defect_operator(lap, [](double t) { return t + 0.3 * std::sin(t); }).norm;
  record("t_plus_0.3_sin_t", wobble, false);
  const double inf_rot = infinitesimal_defect(lap, [](double) { return 1.0; }).norm;
  record("field_d_phi", inf_rot, true);
  const double inf_sin = infinitesimal_defect(lap, [](double t) { return std::sin(t); }).norm;
  record("field_sin_d_phi", inf_sin, false);

  write_file(cfg.out_dir + "/defect.csv", csv.str());
  const bool ok = identity == 0.0 && rotation <= 1e-6 && wobble > 0.1 && inf_rot <= 1e-5 &&
                  inf_sin > 0.1;
  write_summary(cfg, "defect", {{"grid", n}, {"entries", entries}, {"pass", ok}});
  return ok;
}

bool demo_contraction(const DemoConfig& cfg) {
  Rng rng(cfg.seed);
  const auto spec = make_spec(LieFamily::SpecialOrthogonal, 2);
  const MilnorPoint p = random_point(spec, rng, 4, 6);

  std::ostringstream csv;
  csv << "stage,t,index,weight\n";
  csv.precision(17);
  double min_denom = 1e300;
  for (int stage = 1; stage <= 2; ++stage) {
    for (int j = 0; j <= 40; ++j) {
      const double t = j / 40.0;
      const MilnorPoint q = shift_contraction(p, t, stage);
      if (stage == 1) min_denom = std::min(min_denom, shift_denominator(p, t));
      for (const auto& e : q.entries)
        csv << stage << "," << t << "," << e.index << "," << e.weight << "\n";
    }
  }
  write_file(cfg.out_dir + "/contraction.csv", csv.str());

  const MilnorPoint start = shift_contraction(p, 0.0, 1);
  bool identity = start.entries.size() == p.entries.size();
  if (identity)
    for (std::size_t k = 0; k < p.entries.size(); ++k)
      identity = identity && start.entries[k].index == p.entries[k].index &&
                 start.entries[k].weight == p.entries[k].weight;
  const MilnorPoint end = shift_contraction(p, 1.0, 2);
  const bool base = end.entries.size() == 1 && end.entries[0].index == 0 &&
                    end.entries[0].weight == 1.0;

  const bool ok = identity && base && min_denom > 0.0;
  write_summary(cfg, "contraction",
                {{"support", p.entries.size()},
                 {"stage1_t0_is_identity", identity},
                 {"stage2_t1_is_base_point", base},
                 {"min_denominator", min_denom},
                 {"pass", ok}});
  return ok;
}

}  // namespace

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names = {"fisher-rao", "s3-laplacian", "geodesic",
                                                 "chern-weil", "dirac-circle", "defect",
                                                 "contraction"};
  return names;
}

bool run_demo(const std::string& name, const DemoConfig& config) {
  if (name == "fisher-rao") return demo_fisher_rao(config);
  if (name == "s3-laplacian") return demo_s3_laplacian(config);
  if (name == "geodesic") return demo_geodesic(config);
  if (name == "chern-weil") return demo_chern_weil(config);
  if (name == "dirac-circle") return demo_dirac_circle(config);
  if (name == "defect") return demo_defect(config);
  if (name == "contraction") return demo_contraction(config);
  throw std::invalid_argument("unknown demo: " + name);
}

}  // namespace milnor
