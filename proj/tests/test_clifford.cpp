#include <doctest.h>

#include <cmath>

#include "milnor/clifford.hpp"

using namespace milnor;

namespace {

Vec make_vec(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

Frame euclidean_frame(int r) {
  Frame f;
  f.vectors = RealMat::Identity(r, r);
  f.metric = RealMat::Identity(r, r);
  f.signature.assign(static_cast<std::size_t>(r), 1);
  return f;
}

}  // namespace

TEST_CASE("gamma generators satisfy the defining relation") {
  const CliffordRep r1 = gamma_generators(1);
  CHECK(r1.gammas[0].rows() == 2);
  CHECK((r1.gammas[0] * r1.gammas[0] + Mat::Identity(2, 2)).norm() <= 1e-14);

  const CliffordRep r2 = gamma_generators(2);
  CHECK(r2.gammas[0].rows() == 2);
  CHECK(clifford_relation_residual(r2) <= 1e-14);

  // Mixed signature: the flipped axis squares to +Id.
  const CliffordRep mixed = gamma_generators(3, {1, 1, -1});
  const Eigen::Index d = mixed.gammas[2].rows();
  CHECK((mixed.gammas[2] * mixed.gammas[2] - Mat::Identity(d, d)).norm() <= 1e-14);
  CHECK(clifford_relation_residual(mixed) <= 1e-12);

  for (int r = 1; r <= 10; ++r) {
    const CliffordRep rep = gamma_generators(r);
    CHECK(rep.gammas.size() == static_cast<std::size_t>(r));
    CHECK(rep.gammas[0].rows() == (1 << ((r + 1) / 2)));
    CHECK(clifford_relation_residual(rep) <= 1e-12);
  }

  CHECK_THROWS_AS(gamma_generators(11), std::invalid_argument);
  CHECK_THROWS_AS(gamma_generators(0), std::invalid_argument);
  CHECK_THROWS_AS(gamma_generators(2, {1}), std::invalid_argument);
}

TEST_CASE("clifford multiplication by vectors") {
  const int r = 4;
  const CliffordRep rep = gamma_generators(r);
  const Frame frame = euclidean_frame(r);

  Vec e1 = Vec::Zero(r);
  e1(0) = 1.0;
  CHECK((clifford_of_vector(rep, frame, e1) - rep.gammas[0]).norm() <= 1e-14);
  CHECK(clifford_of_vector(rep, frame, Vec::Zero(r)).norm() == 0.0);

  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    Vec v(r);
    for (int i = 0; i < r; ++i) v(i) = rng.normal();
    const Mat c = clifford_of_vector(rep, frame, v);
    CHECK((c * c + v.squaredNorm() * Mat::Identity(c.rows(), c.cols())).norm() <= 1e-10);
  }

  Frame crooked = frame;
  crooked.vectors(0, 0) = 2.0;
  CHECK_THROWS_AS(clifford_of_vector(rep, crooked, e1), std::invalid_argument);
}

TEST_CASE("clifford multiplication in a non-euclidean metric") {
  Rng rng(11);
  const int d = 3;
  RealMat a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = rng.normal();
  const RealMat metric = a.transpose() * a + RealMat::Identity(d, d);

  // Gram-Schmidt against the metric.
  Frame frame;
  frame.metric = metric;
  frame.signature.assign(d, 1);
  frame.vectors = RealMat::Identity(d, d);
  for (int c = 0; c < d; ++c) {
    Vec v = frame.vectors.col(c);
    for (int p = 0; p < c; ++p)
      v -= frame.vectors.col(p).dot(metric * v) * frame.vectors.col(p);
    frame.vectors.col(c) = v / std::sqrt(v.dot(metric * v));
  }
  require_frame(frame);

  const CliffordRep rep = gamma_generators(d);
  for (int t = 0; t < 10; ++t) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = rng.normal();
    const Mat c = clifford_of_vector(rep, frame, v);
    const double vv = v.dot(metric * v);
    CHECK((c * c + vv * Mat::Identity(c.rows(), c.cols())).norm() <= 1e-10);
  }
}

TEST_CASE("frame independence of the dirac contraction") {
  const int r = 4;
  const CliffordRep rep = gamma_generators(r);
  const Frame frame = euclidean_frame(r);
  Rng rng(7);

  Vec xi(r);
  for (int i = 0; i < r; ++i) xi(i) = rng.normal();

  CHECK(frame_independence_residual(rep, frame, frame, xi) == 0.0);

  // Swapping two axes is orthogonal.
  Frame swapped = frame;
  swapped.vectors.col(0).swap(swapped.vectors.col(1));
  CHECK(frame_independence_residual(rep, frame, swapped, xi) <= 1e-12);

  for (int t = 0; t < 100; ++t) {
    RealMat noise(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) noise(i, j) = rng.normal();
    const RealMat q = Eigen::HouseholderQR<RealMat>(noise).householderQ();
    Frame rotated = frame;
    rotated.vectors = frame.vectors * q;
    Vec covector(r);
    for (int i = 0; i < r; ++i) covector(i) = rng.normal();
    CHECK(frame_independence_residual(rep, frame, rotated, covector) <= 1e-10);
  }

  // Frames orthonormal for different metrics are not comparable: the change
  // matrix fails orthogonality and the comparison is rejected.
  Frame other = frame;
  other.metric = RealMat::Identity(r, r);
  other.metric(0, 0) = 4.0;
  other.vectors(0, 0) = 0.5;  // orthonormal for its own metric
  require_frame(other);
  CHECK_THROWS_AS(frame_independence_residual(rep, frame, other, xi), std::invalid_argument);
}

TEST_CASE("dirac symbol squares to the metric symbol") {
  const int r = 4;
  const CliffordRep rep = gamma_generators(r);
  const Frame frame = euclidean_frame(r);

  CHECK(dirac_square_symbol_check(rep, frame, Vec::Zero(r)) == 0.0);

  Vec e1 = Vec::Zero(r);
  e1(0) = 1.0;
  CHECK(dirac_square_symbol_check(rep, frame, e1) <= 1e-14);

  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    Vec xi(r);
    for (int i = 0; i < r; ++i) xi(i) = rng.normal();
    CHECK(dirac_square_symbol_check(rep, frame, xi) <= 1e-10);
  }
}

TEST_CASE("warped frames") {
  const auto so3 = make_spec(LieFamily::SpecialOrthogonal, 3);
  const auto frame = orthonormal_algebra_frame(so3);
  Rng rng(17);

  // Single node of weight one: the fiber frame is unchanged.
  const MilnorPoint vertex = canonicalize(so3, {{2, 1.0, random_group(so3, rng)}});
  const auto wf1 = warped_frame(vertex, frame);
  REQUIRE(wf1.size() == frame.size());
  for (std::size_t a = 0; a < frame.size(); ++a)
    CHECK((wf1[a].groups.at(2) - frame[a]).norm() <= 1e-12);
  CHECK((tangent_gram(vertex, wf1) - RealMat::Identity(3, 3)).norm() <= 1e-10);

  // Two equal weights 1/sqrt(2): fiber frames scale by sqrt(2), gram is Id.
  const double s = 1.0 / std::sqrt(2.0);
  const MilnorPoint two = canonicalize(
      so3, {{0, s, random_group(so3, rng)}, {1, s, random_group(so3, rng)}});
  const auto wf2 = warped_frame(two, frame);
  REQUIRE(wf2.size() == 2 * frame.size());
  CHECK((wf2[0].groups.at(0) - std::sqrt(2.0) * frame[0]).norm() <= 1e-12);
  CHECK((tangent_gram(two, wf2) - RealMat::Identity(6, 6)).norm() <= 1e-10);

  // Guard: active weight below 0.05.
  const MilnorPoint thin = canonicalize(
      so3, {{0, 0.01, random_group(so3, rng)}, {1, std::sqrt(1.0 - 1e-4), random_group(so3, rng)}});
  CHECK_THROWS_AS(warped_frame(thin, frame), std::runtime_error);

  // Random points over the families with positive definite natural kinds.
  for (const auto& spec :
       {so3, make_spec(LieFamily::SpecialUnitary, 2), make_spec(LieFamily::Lorentz, 2)}) {
    const auto af = orthonormal_algebra_frame(spec);
    for (int t = 0; t < 5; ++t) {
      const MilnorPoint p = random_point(spec, rng, 3, 6);
      const auto wf = warped_frame(p, af);
      const RealMat gram = tangent_gram(p, wf);
      CHECK((gram - RealMat::Identity(gram.rows(), gram.cols())).norm() <= 1e-8);
    }
  }
}
