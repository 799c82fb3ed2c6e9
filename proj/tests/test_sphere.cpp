#include <doctest.h>

#include <cmath>

#include "milnor/rng.hpp"
#include "milnor/sphere.hpp"

using namespace milnor;

namespace {

Vec make_vec(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("tangent projection") {
  const auto e1 = SphericalPoint::make(make_vec({1.0, 0.0}));
  CHECK((tangent_project(e1, make_vec({0.0, 1.0})) - make_vec({0.0, 1.0})).norm() == 0.0);
  CHECK(tangent_project(e1, make_vec({1.0, 0.0})).norm() == 0.0);

  const double s = 1.0 / std::sqrt(2.0);
  const auto diag = SphericalPoint::make(make_vec({s, s}));
  const Vec p = tangent_project(diag, make_vec({1.0, 0.0}));
  CHECK(p(0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p(1) == doctest::Approx(-0.5).epsilon(1e-14));

  CHECK_THROWS_AS(tangent_project(e1, make_vec({1.0, 0.0, 0.0})), std::invalid_argument);

  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    Vec raw(5), w(5), w2(5);
    for (int i = 0; i < 5; ++i) {
      raw(i) = rng.normal();
      w(i) = rng.normal();
      w2(i) = rng.normal();
    }
    const auto x = SphericalPoint::make(raw.normalized());
    const Vec v = tangent_project(x, w);
    CHECK(std::abs(x.x.dot(v)) <= 1e-12);
    CHECK((tangent_project(x, v) - v).norm() <= 1e-12);  // idempotent
    CHECK(std::abs(tangent_project(x, w).dot(w2) - w.dot(tangent_project(x, w2))) <=
          1e-12);  // self-adjoint
  }
}

TEST_CASE("sphere retraction") {
  const auto e1 = SphericalPoint::make(make_vec({1.0, 0.0}));
  const Vec v = make_vec({0.0, 1.0});

  CHECK((sphere_retract(e1, v, 0.0).x - e1.x).norm() == 0.0);

  const double s = 0.7;
  const Vec expected = make_vec({1.0, s}) / std::sqrt(1.0 + s * s);
  CHECK((sphere_retract(e1, v, s).x - expected).norm() <= 1e-15);

  // derivative at 0 equals v (finite differences, h = 1e-4)
  const double h = 1e-4;
  const Vec d = (sphere_retract(e1, v, h).x - sphere_retract(e1, v, -h).x) / (2.0 * h);
  CHECK((d - v).norm() <= 1e-6);

  CHECK(std::abs(sphere_retract(e1, v, 3.0).x.norm() - 1.0) <= 1e-15);
}

TEST_CASE("square map and sqrt lift") {
  const double s = 1.0 / std::sqrt(2.0);
  const auto half = square_map(SphericalPoint::make(make_vec({s, s})));
  CHECK(half.t(0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(half.t(1) == doctest::Approx(0.5).epsilon(1e-14));

  const auto vertex = square_map(SphericalPoint::make(make_vec({1.0, 0.0})));
  CHECK(vertex.t(0) == doctest::Approx(1.0));
  CHECK(vertex.t(1) == doctest::Approx(0.0));

  const auto p = square_map(SphericalPoint::make(make_vec({0.6, 0.8})));
  CHECK(p.t(0) == doctest::Approx(0.36).epsilon(1e-14));
  CHECK(p.t(1) == doctest::Approx(0.64).epsilon(1e-14));

  const auto lifted = sqrt_lift(SimplexPoint::make(make_vec({0.36, 0.64})));
  CHECK(lifted.x(0) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(lifted.x(1) == doctest::Approx(0.8).epsilon(1e-14));

  CHECK((sqrt_lift(SimplexPoint::make(make_vec({1.0, 0.0}))).x - make_vec({1.0, 0.0})).norm() ==
        0.0);

  CHECK_THROWS_AS(sqrt_lift(SimplexPoint{make_vec({-0.2, 1.2})}), std::invalid_argument);

  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    Vec raw(4);
    for (int i = 0; i < 4; ++i) raw(i) = std::abs(rng.normal()) + 0.01;
    const auto x = SphericalPoint::make(raw.normalized());
    CHECK((sqrt_lift(square_map(x)).x - x.x).norm() <= 1e-12);
  }
}

TEST_CASE("fisher-rao pairing") {
  const auto mid = SimplexPoint::make(make_vec({0.5, 0.5}));
  const Vec a = make_vec({1.0, -1.0});
  CHECK(fisher_rao_eval(mid, a, a) == doctest::Approx(4.0));
  CHECK(fisher_rao_eval(mid, make_vec({0.0, 0.0}), a) == 0.0);

  const auto quarter = SimplexPoint::make(make_vec({0.25, 0.75}));
  CHECK(fisher_rao_eval(quarter, a, a) == doctest::Approx(16.0 / 3.0).epsilon(1e-14));

  CHECK_THROWS_AS(fisher_rao_eval(SimplexPoint::make(make_vec({1.0, 0.0})), a, a),
                  std::invalid_argument);
}

TEST_CASE("fisher-rao pullback is exactly four times euclidean") {
  const auto x = SphericalPoint::make(make_vec({std::cos(0.3), std::sin(0.3)}));
  const Vec v = make_vec({-std::sin(0.3), std::cos(0.3)});
  CHECK(fr_pullback_residual(x, v) <= 1e-10);
  const Vec dt = 2.0 * x.x.array() * v.array();
  CHECK(fisher_rao_eval(square_map(x), dt, dt) == doctest::Approx(4.0).epsilon(1e-12));

  CHECK(fr_pullback_residual(x, make_vec({0.0, 0.0})) == 0.0);

  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    Vec raw(5), w(5);
    for (int i = 0; i < 5; ++i) {
      raw(i) = std::abs(rng.normal()) + 0.05;
      w(i) = rng.normal();
    }
    const auto p = SphericalPoint::make(raw.normalized());
    Vec v5 = tangent_project(p, w);
    if (v5.norm() > 1e-12) v5.normalize();
    CHECK(fr_pullback_residual(p, v5) <= 1e-10);
  }

  CHECK_THROWS_AS(fr_pullback_residual(SphericalPoint::make(make_vec({1.0, 0.0})),
                                       make_vec({0.0, 1.0})),
                  std::invalid_argument);
}

TEST_CASE("quadratic invisibility") {
  const auto [d1, d2] = quadratic_invisibility(3.0);
  CHECK(std::abs(d1) <= 1e-8);
  CHECK(d2 == doctest::Approx(18.0).epsilon(1e-9));

  const auto [z1, z2] = quadratic_invisibility(0.0);
  CHECK(z1 == 0.0);
  CHECK(z2 == 0.0);

  const auto [h1, h2] = quadratic_invisibility(1.5);
  CHECK(std::abs(h1) <= 1e-8);
  CHECK(h2 == doctest::Approx(4.5).epsilon(1e-9));
}

TEST_CASE("point validation") {
  CHECK_THROWS_AS(SphericalPoint::make(make_vec({0.5, 0.5})), std::invalid_argument);
  CHECK_THROWS_AS(SimplexPoint::make(make_vec({0.5, 0.6})), std::invalid_argument);
  CHECK_THROWS_AS(SimplexPoint::make(make_vec({-0.1, 1.1})), std::invalid_argument);
}
