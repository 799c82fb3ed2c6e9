#include "milnor/clifford.hpp"

#include <cmath>
#include <stdexcept>

namespace milnor {

namespace {

constexpr double kWeightGuard = 0.05;

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Hermitian anticommuting generators with square +Id (Pauli tower).
std::vector<Mat> euclidean_generators(int rank) {
  Mat s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, Complex(0, -1), Complex(0, 1), 0;
  s3 << 1, 0, 0, -1;
  std::vector<Mat> gen;
  if (rank >= 1) gen.push_back(s1);
  if (rank >= 2) gen.push_back(s2);
  int built = 2;
  while (built < rank) {
    const Eigen::Index d = gen.front().rows();
    const Mat id = Mat::Identity(d, d);
    std::vector<Mat> next;
    for (const auto& g : gen) next.push_back(kron(s1, g));
    next.push_back(kron(s2, id));
    next.push_back(kron(s3, id));
    gen = std::move(next);
    built += 2;
  }
  gen.resize(static_cast<std::size_t>(rank));
  return gen;
}

}  // namespace

CliffordRep gamma_generators(int rank, std::vector<int> signature) {
  if (rank < 1) throw std::invalid_argument("gamma_generators: rank must be >= 1");
  if (rank > 10) throw std::invalid_argument("gamma_generators: rank above cap of 10");
  if (signature.empty()) signature.assign(static_cast<std::size_t>(rank), 1);
  if (signature.size() != static_cast<std::size_t>(rank))
    throw std::invalid_argument("gamma_generators: signature length mismatch");
  for (int s : signature)
    if (s != 1 && s != -1)
      throw std::invalid_argument("gamma_generators: signature entries must be +1 or -1");

  CliffordRep rep;
  rep.rank = rank;
  rep.signature = signature;
  rep.gammas = euclidean_generators(rank);
  const Complex i(0.0, 1.0);
  for (int a = 0; a < rank; ++a) {
    rep.gammas[static_cast<std::size_t>(a)] *= i;  // gamma^2 = -Id
    if (signature[static_cast<std::size_t>(a)] == -1)
      rep.gammas[static_cast<std::size_t>(a)] *= i;  // flipped axes square to +Id
  }
  return rep;
}

double clifford_relation_residual(const CliffordRep& rep) {
  const Eigen::Index d = rep.gammas.front().rows();
  const Mat id = Mat::Identity(d, d);
  double worst = 0.0;
  for (int a = 0; a < rep.rank; ++a) {
    for (int b = 0; b < rep.rank; ++b) {
      const Mat anti = rep.gammas[static_cast<std::size_t>(a)] * rep.gammas[static_cast<std::size_t>(b)] +
                       rep.gammas[static_cast<std::size_t>(b)] * rep.gammas[static_cast<std::size_t>(a)];
      const double target = a == b ? -2.0 * rep.signature[static_cast<std::size_t>(a)] : 0.0;
      worst = std::max(worst, (anti - target * id).norm());
    }
  }
  return worst;
}

double frame_gram_residual(const Frame& frame) {
  const RealMat gram = frame.vectors.transpose() * frame.metric * frame.vectors;
  RealMat target = RealMat::Zero(frame.rank(), frame.rank());
  for (int a = 0; a < frame.rank(); ++a)
    target(a, a) = frame.signature[static_cast<std::size_t>(a)];
  return (gram - target).norm();
}

void require_frame(const Frame& frame, double tol) {
  if (frame.signature.size() != static_cast<std::size_t>(frame.rank()))
    throw std::invalid_argument("frame: signature length mismatch");
  const double r = frame_gram_residual(frame);
  if (!(r <= tol))
    throw std::invalid_argument("frame is not orthonormal for the metric (residual " +
                                std::to_string(r) + ")");
}

Mat clifford_of_vector(const CliffordRep& rep, const Frame& frame, const Vec& v) {
  if (frame.rank() != rep.rank)
    throw std::invalid_argument("clifford_of_vector: frame rank does not match the rep");
  require_frame(frame);
  if (v.size() != frame.vectors.rows())
    throw std::invalid_argument("clifford_of_vector: dimension mismatch");
  const Eigen::Index d = rep.gammas.front().rows();
  Mat out = Mat::Zero(d, d);
  const Vec mv = frame.metric * v;
  for (int a = 0; a < rep.rank; ++a) {
    const double coeff =
        frame.signature[static_cast<std::size_t>(a)] * frame.vectors.col(a).dot(mv);
    out += coeff * rep.gammas[static_cast<std::size_t>(a)];
  }
  return out;
}

double frame_independence_residual(const CliffordRep& rep, const Frame& frame_a,
                                   const Frame& frame_b, const Vec& xi) {
  require_frame(frame_a);
  require_frame(frame_b);
  if (frame_a.rank() != rep.rank || frame_b.rank() != rep.rank)
    throw std::invalid_argument("frame_independence_residual: rank mismatch");
  for (int s : frame_a.signature)
    if (s != 1)
      throw std::invalid_argument(
          "frame_independence_residual: only positive signature frames are comparable");

  const int r = rep.rank;
  // Change-of-frame matrix in metric pairing; must be orthogonal.
  RealMat a(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      a(i, j) = frame_b.vectors.col(i).dot(frame_a.metric * frame_a.vectors.col(j));
  if ((a * a.transpose() - RealMat::Identity(r, r)).norm() > 1e-6)
    throw std::invalid_argument(
        "frame_independence_residual: frames are not related by an orthogonal map");

  const Eigen::Index d = rep.gammas.front().rows();
  Mat sum_a = Mat::Zero(d, d);
  Mat sum_b = Mat::Zero(d, d);
  for (int i = 0; i < r; ++i) {
    sum_a += xi.dot(frame_a.vectors.col(i)) * rep.gammas[static_cast<std::size_t>(i)];
    Mat cb = Mat::Zero(d, d);
    for (int j = 0; j < r; ++j) cb += a(i, j) * rep.gammas[static_cast<std::size_t>(j)];
    sum_b += xi.dot(frame_b.vectors.col(i)) * cb;
  }
  return (sum_a - sum_b).norm();
}

double dirac_square_symbol_check(const CliffordRep& rep, const Frame& frame, const Vec& xi) {
  const RealMat minv = frame.metric.ldlt().solve(RealMat::Identity(
      static_cast<int>(frame.metric.rows()), static_cast<int>(frame.metric.cols())));
  const Vec sharp = minv * xi;
  const Mat c = clifford_of_vector(rep, frame, sharp);
  const double norm2 = xi.dot(sharp);
  const Eigen::Index d = c.rows();
  return (c * c + norm2 * Mat::Identity(d, d)).norm();
}

std::vector<MilnorTangent> warped_frame(const MilnorPoint& p,
                                        const std::vector<Mat>& algebra_frame) {
  InnerProduct ip(p.spec, natural_kind(p.spec.family));
  for (std::size_t a = 0; a < algebra_frame.size(); ++a) {
    require_algebra(p.spec, algebra_frame[a], 1e-6);
    for (std::size_t b = 0; b < algebra_frame.size(); ++b) {
      const double target = a == b ? 1.0 : 0.0;
      if (std::abs(ip(algebra_frame[a], algebra_frame[b]) - target) > 1e-6)
        throw std::invalid_argument("warped_frame: algebra frame is not orthonormal");
    }
  }
  for (const auto& e : p.entries)
    if (std::abs(e.weight) < kWeightGuard)
      throw std::runtime_error(
          "warped_frame: active weight below guard, fiber frame degenerates");

  std::vector<MilnorTangent> frame;
  for (const auto& e : p.entries) {
    for (const auto& x : algebra_frame) {
      MilnorTangent v{p, {}, {}};
      v.groups[e.index] = x / e.weight;
      frame.push_back(std::move(v));
    }
  }
  return frame;
}

RealMat tangent_gram(const MilnorPoint& p, const std::vector<MilnorTangent>& frame) {
  const int r = static_cast<int>(frame.size());
  RealMat gram(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j) {
      gram(i, j) = metric_eval(p, frame[static_cast<std::size_t>(i)],
                               frame[static_cast<std::size_t>(j)]);
      gram(j, i) = gram(i, j);
    }
  return gram;
}

std::vector<Mat> orthonormal_algebra_frame(const LieGroupSpec& spec) {
  const auto basis = algebra_basis(spec);
  InnerProduct ip(spec, natural_kind(spec.family));
  std::vector<Mat> frame;
  for (const auto& b : basis) {
    Mat v = b;
    for (const auto& f : frame) v -= ip(f, v) * f;
    const double n = std::sqrt(ip(v, v));
    if (n < 1e-12) throw std::runtime_error("orthonormal_algebra_frame: degenerate basis");
    frame.push_back(v / n);
  }
  return frame;
}

}  // namespace milnor
