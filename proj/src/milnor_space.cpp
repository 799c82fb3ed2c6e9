#include "milnor/milnor_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace milnor {

namespace {

void check_ambient(const MilnorPoint& p, const std::vector<std::size_t>& ambient) {
  for (const auto& e : p.entries)
    if (std::find(ambient.begin(), ambient.end(), e.index) == ambient.end())
      throw std::invalid_argument("ambient index set does not contain the support");
}

}  // namespace

std::vector<std::size_t> MilnorPoint::support() const {
  std::vector<std::size_t> s;
  s.reserve(entries.size());
  for (const auto& e : entries) s.push_back(e.index);
  return s;
}

bool MilnorPoint::has_index(std::size_t i) const {
  for (const auto& e : entries)
    if (e.index == i) return true;
  return false;
}

double MilnorPoint::weight_at(std::size_t i) const {
  for (const auto& e : entries)
    if (e.index == i) return e.weight;
  return 0.0;
}

const Mat* MilnorPoint::group_at(std::size_t i) const {
  for (const auto& e : entries)
    if (e.index == i) return &e.group;
  return nullptr;
}

Vec MilnorPoint::weights_on(const std::vector<std::size_t>& ambient) const {
  Vec w = Vec::Zero(static_cast<Eigen::Index>(ambient.size()));
  for (std::size_t k = 0; k < ambient.size(); ++k) w(static_cast<Eigen::Index>(k)) = weight_at(ambient[k]);
  return w;
}

MilnorPoint canonicalize(const LieGroupSpec& spec, std::vector<MilnorEntry> raw, double tol) {
  double norm2 = 0.0;
  for (const auto& e : raw) norm2 += e.weight * e.weight;
  if (std::abs(norm2 - 1.0) > 1e-6)
    throw std::invalid_argument("canonicalize: weights are not normalized (|sum x^2 - 1| = " +
                                std::to_string(std::abs(norm2 - 1.0)) + ")");

  std::vector<MilnorEntry> kept;
  for (auto& e : raw) {
    if (std::abs(e.weight) <= tol) continue;
    if (e.group.rows() != spec.matrix_size() || e.group.cols() != spec.matrix_size())
      throw std::invalid_argument("canonicalize: group matrix size mismatch");
    kept.push_back(std::move(e));
  }
  if (kept.empty()) throw std::invalid_argument("canonicalize: all weights below tolerance");

  std::sort(kept.begin(), kept.end(),
            [](const MilnorEntry& a, const MilnorEntry& b) { return a.index < b.index; });
  for (std::size_t k = 0; k + 1 < kept.size(); ++k)
    if (kept[k].index == kept[k + 1].index)
      throw std::invalid_argument("canonicalize: duplicate index");

  double kept2 = 0.0;
  for (const auto& e : kept) kept2 += e.weight * e.weight;
  const double scale = 1.0 / std::sqrt(kept2);
  for (auto& e : kept) e.weight *= scale;
  return MilnorPoint{spec, std::move(kept)};
}

std::vector<std::size_t> support(const MilnorPoint& p) { return p.support(); }

double tangent_constraint_residual(const MilnorTangent& v) {
  double s = 0.0;
  for (const auto& e : v.base.entries) {
    const auto it = v.sphericals.find(e.index);
    if (it != v.sphericals.end()) s += e.weight * it->second;
  }
  return std::abs(s);
}

std::vector<MilnorTangent> tangent_basis(const MilnorPoint& p,
                                         const std::vector<std::size_t>& ambient) {
  check_ambient(p, ambient);
  const int m = static_cast<int>(ambient.size());

  // Constraint functional over the ambient set: c_i = x_i (zero off-support).
  Vec c = p.weights_on(ambient);

  // Orthonormal basis of c-perp via Householder completion.
  Eigen::HouseholderQR<RealMat> qr(c);
  const RealMat q = qr.householderQ();

  std::vector<MilnorTangent> basis;
  for (int col = 1; col < m; ++col) {
    MilnorTangent v{p, {}, {}};
    for (int row = 0; row < m; ++row) {
      const double val = q(row, col);
      if (val != 0.0) v.sphericals[ambient[static_cast<std::size_t>(row)]] = val;
    }
    basis.push_back(std::move(v));
  }

  const auto alg = algebra_basis(p.spec);
  for (const auto& e : p.entries) {
    for (const auto& X : alg) {
      MilnorTangent v{p, {}, {}};
      v.groups[e.index] = X;
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

std::vector<std::pair<std::size_t, Mat>> kernel_basis(
    const MilnorPoint& p, const std::vector<std::size_t>& ambient) {
  check_ambient(p, ambient);
  const auto alg = algebra_basis(p.spec);
  std::vector<std::pair<std::size_t, Mat>> gens;
  for (std::size_t i : ambient) {
    if (p.has_index(i)) continue;
    for (const auto& X : alg) gens.emplace_back(i, X);
  }
  return gens;
}

MilnorTangent kernel_tangent(const MilnorPoint& p, std::size_t index, const Mat& xi) {
  if (p.has_index(index))
    throw std::invalid_argument("kernel_tangent: index is active at the base point");
  MilnorTangent v{p, {}, {}};
  v.groups[index] = xi;
  return v;
}

MilnorPoint group_act(const Mat& h, const MilnorPoint& p) {
  require_group(p.spec, h, 1e-6);
  MilnorPoint out = p;
  for (auto& e : out.entries) e.group = h * e.group;
  return out;
}

MilnorPoint z2_act(int eps, const MilnorPoint& p) {
  if (eps != 1 && eps != -1) throw std::invalid_argument("z2_act: sign must be +1 or -1");
  MilnorPoint out = p;
  if (eps == -1)
    for (auto& e : out.entries) e.weight = -e.weight;
  return out;
}

MilnorPoint embed_simplicial(const SimplexPoint& t, const std::vector<Mat>& groups,
                             const LieGroupSpec& spec) {
  if (static_cast<std::size_t>(t.t.size()) != groups.size())
    throw std::invalid_argument("embed_simplicial: length mismatch");
  std::vector<MilnorEntry> raw;
  for (Eigen::Index i = 0; i < t.t.size(); ++i) {
    if (t.t(i) < -1e-12) throw std::invalid_argument("embed_simplicial: negative weight");
    raw.push_back({static_cast<std::size_t>(i), std::sqrt(std::max(t.t(i), 0.0)),
                   groups[static_cast<std::size_t>(i)]});
  }
  return canonicalize(spec, std::move(raw));
}

MilnorPoint shift(const MilnorPoint& p) {
  MilnorPoint out = p;
  for (auto& e : out.entries) e.index += 1;
  return out;
}

double shift_denominator(const MilnorPoint& p, double t) {
  // || (1-t) x + t Sx ||^2 over the union of supports.
  double norm2 = 0.0;
  std::vector<std::size_t> indices = p.support();
  for (auto i : p.support()) indices.push_back(i + 1);
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  for (std::size_t i : indices) {
    const double prev = i == 0 ? 0.0 : p.weight_at(i - 1);
    const double w = (1.0 - t) * p.weight_at(i) + t * prev;
    norm2 += w * w;
  }
  return std::sqrt(norm2);
}

MilnorPoint shift_contraction(const MilnorPoint& p, double t, int stage) {
  if (t < 0.0 || t > 1.0) throw std::invalid_argument("shift_contraction: t outside [0,1]");
  if (stage != 1 && stage != 2)
    throw std::invalid_argument("shift_contraction: stage must be 1 or 2");
  const int m = p.spec.matrix_size();

  if (stage == 1) {
    if (t == 0.0) return p;
    if (t == 1.0) return shift(p);
    const double denom = shift_denominator(p, t);
    if (denom < 1e-6)
      throw std::runtime_error("shift_contraction: interpolant norm below guard");
    std::vector<std::size_t> indices = p.support();
    for (auto i : p.support()) indices.push_back(i + 1);
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());

    std::vector<MilnorEntry> raw;
    for (std::size_t i : indices) {
      const double prev = i == 0 ? 0.0 : p.weight_at(i - 1);
      const double w = ((1.0 - t) * p.weight_at(i) + t * prev) / denom;
      // Overlapping indices keep the original group coordinate; indices
      // reached only by the shift take the shifted-in one.
      const Mat* g = p.group_at(i);
      if (g == nullptr && i > 0) g = p.group_at(i - 1);
      raw.push_back({i, w, g != nullptr ? *g : Mat::Identity(m, m)});
    }
    return canonicalize(p.spec, std::move(raw));
  }

  // Stage 2: the shifted point has no weight at index 0, so it is orthogonal
  // to the target e_0 and the denominator is bounded below by 1/sqrt(2).
  if (t == 1.0) {
    std::vector<MilnorEntry> base{{0, 1.0, Mat::Identity(m, m)}};
    return MilnorPoint{p.spec, std::move(base)};
  }
  const MilnorPoint sp = shift(p);
  const double denom = std::sqrt((1.0 - t) * (1.0 - t) + t * t);
  std::vector<MilnorEntry> raw;
  raw.push_back({0, t / denom, Mat::Identity(m, m)});
  for (const auto& e : sp.entries) raw.push_back({e.index, (1.0 - t) * e.weight / denom, e.group});
  return canonicalize(p.spec, std::move(raw));
}

std::string to_text(const MilnorPoint& p) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& e : p.entries) {
    os << e.index << " " << e.weight;
    for (Eigen::Index r = 0; r < e.group.rows(); ++r)
      for (Eigen::Index c = 0; c < e.group.cols(); ++c) {
        os << " " << e.group(r, c).real();
        if (p.spec.is_complex()) os << " " << e.group(r, c).imag();
      }
    os << "\n";
  }
  return os.str();
}

MilnorPoint from_text(const LieGroupSpec& spec, const std::string& text) {
  std::istringstream is(text);
  const int m = spec.matrix_size();
  std::vector<MilnorEntry> raw;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    MilnorEntry e;
    e.group = Mat::Zero(m, m);
    if (!(ls >> e.index >> e.weight)) throw std::invalid_argument("from_text: bad record");
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) {
        double re = 0.0, im = 0.0;
        if (!(ls >> re)) throw std::invalid_argument("from_text: truncated matrix");
        if (spec.is_complex() && !(ls >> im))
          throw std::invalid_argument("from_text: truncated matrix");
        e.group(r, c) = Complex(re, im);
      }
    raw.push_back(std::move(e));
  }
  return canonicalize(spec, std::move(raw));
}

MilnorPoint random_point(const LieGroupSpec& spec, Rng& rng, std::size_t max_support,
                         std::size_t max_index) {
  const std::size_t count = 1 + rng.integer(max_support);
  std::vector<std::size_t> indices;
  while (indices.size() < count) {
    const std::size_t i = rng.integer(max_index);
    if (std::find(indices.begin(), indices.end(), i) == indices.end()) indices.push_back(i);
  }
  std::vector<MilnorEntry> raw;
  Vec w(static_cast<Eigen::Index>(count));
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    double v = rng.normal();
    while (std::abs(v) < 0.05) v = rng.normal();
    w(k) = v;
  }
  w.normalize();
  for (std::size_t k = 0; k < count; ++k)
    raw.push_back({indices[k], w(static_cast<Eigen::Index>(k)), random_group(spec, rng)});
  return canonicalize(spec, std::move(raw));
}

}  // namespace milnor
