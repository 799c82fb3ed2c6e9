#include "milnor/circle.hpp"

#include <cmath>
#include <stdexcept>

namespace milnor {

namespace {

constexpr double kTwoPi = 6.2831853071795864769252867665590;

void check_size(int n) {
  if (n < 16 || n % 2 != 0)
    throw std::invalid_argument("circle operators need an even grid size >= 16");
}

Mat modal_operator(int n, bool twisted, const std::function<double(double)>& eigenvalue) {
  // The admissible plane waves have integer frequencies (sawtooth assigned
  // to +n/2) or half-integer ones in the twisted case. The operator is
  // assembled from its first column, so it is an exact (anti-)circulant:
  // grid translations conjugate it without any rounding defect. Crossing
  // the seam in the twisted case picks up the -1 transition function.
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n);
  const Complex i(0.0, 1.0);
  for (int col = 0; col < n; ++col) {
    const double freq = twisted ? (col - n / 2 + 0.5) : static_cast<double>(col - n / 2 + 1);
    const double lambda = eigenvalue(freq);
    for (int m = 0; m < n; ++m)
      c(m) += lambda * std::exp(i * (freq * kTwoPi * m / n)) / static_cast<double>(n);
  }
  Mat out(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      if (j >= l)
        out(j, l) = c(j - l);
      else
        out(j, l) = twisted ? -c(j - l + n) : c(j - l + n);
    }
  out = 0.5 * (out + out.adjoint()).eval();
  return out;
}

}  // namespace

double OperatorMatrix::node(int j) const { return kTwoPi * j / n; }

double OperatorMatrix::hermiticity_residual() const {
  return (entries - entries.adjoint()).norm();
}

OperatorMatrix circle_dirac(int n, bool twisted) {
  check_size(n);
  OperatorMatrix op;
  op.n = n;
  op.antiperiodic = twisted;
  op.entries = modal_operator(n, twisted, [](double k) { return -k; });
  return op;
}

OperatorMatrix circle_laplacian(int n) {
  check_size(n);
  OperatorMatrix op;
  op.n = n;
  op.antiperiodic = false;
  op.entries = modal_operator(n, false, [](double k) { return -k * k; });
  return op;
}

Vec sorted_eigenvalues(const OperatorMatrix& op) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(op.entries);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("sorted_eigenvalues: eigensolver failed");
  return solver.eigenvalues();
}

RealMat real_derivative_matrix(int n) {
  check_size(n);
  RealMat d = RealMat::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      if (j == l) continue;
      const double sign = (j - l) % 2 == 0 ? 1.0 : -1.0;
      d(j, l) = 0.5 * sign / std::tan(kTwoPi * (j - l) / (2.0 * n));
    }
  return d;
}

namespace {

/// Rows of the real trigonometric basis 1, cos m t, sin m t, cos (n/2) t
/// evaluated at the given angles.
RealMat trig_basis(int n, const Vec& angles) {
  RealMat b(angles.size(), n);
  for (Eigen::Index r = 0; r < angles.size(); ++r) {
    const double t = angles(r);
    int c = 0;
    b(r, c++) = 1.0;
    for (int m = 1; m <= n / 2 - 1; ++m) {
      b(r, c++) = std::cos(m * t);
      b(r, c++) = std::sin(m * t);
    }
    b(r, c++) = std::cos((n / 2) * t);
  }
  return b;
}

}  // namespace

namespace {

struct PullbackBuild {
  RealMat p;
  bool invertible = false;  // permutation or well-conditioned trigonometric path
};

PullbackBuild build_pullback(int n, const std::function<double(double)>& phi) {
  check_size(n);
  Vec grid(n), mapped(n);
  for (int j = 0; j < n; ++j) {
    grid(j) = kTwoPi * j / n;
    mapped(j) = phi(grid(j));
  }
  for (int j = 0; j + 1 < n; ++j)
    if (!(mapped(j + 1) > mapped(j)))
      throw std::invalid_argument("pullback_matrix: phi is not strictly increasing");
  if (!(phi(kTwoPi) > mapped(n - 1)))
    throw std::invalid_argument("pullback_matrix: phi does not wind once around the circle");

  // Grid-aligned maps (identity, grid rotations) pull back by an exact
  // permutation; no interpolation error enters.
  const double spacing = kTwoPi / n;
  bool aligned = true;
  std::vector<int> target(static_cast<std::size_t>(n), 0);
  for (int j = 0; j < n && aligned; ++j) {
    const double steps = mapped(j) / spacing;
    const double nearest = std::round(steps);
    if (std::abs(steps - nearest) < 1e-12)
      target[static_cast<std::size_t>(j)] = static_cast<int>(nearest) % n;
    else
      aligned = false;
  }
  if (aligned) {
    RealMat p = RealMat::Zero(n, n);
    for (int j = 0; j < n; ++j)
      p(j, (target[static_cast<std::size_t>(j)] % n + n) % n) = 1.0;
    return {p, true};
  }

  const RealMat b_grid = trig_basis(n, grid);
  const RealMat b_mapped = trig_basis(n, mapped);
  const RealMat p = b_mapped * b_grid.partialPivLu().solve(RealMat::Identity(n, n));

  const Eigen::BDCSVD<RealMat> svd(p);
  const double cond = svd.singularValues()(0) / svd.singularValues()(n - 1);
  if (cond < 1e6) return {p, true};

  // Trigonometric interpolation amplifies high frequencies exponentially
  // once the mapped nodes are strongly non-uniform; fall back to local
  // polynomial interpolation of order 8 (forward application only).
  RealMat q = RealMat::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const double t = mapped(j);
    const int base = static_cast<int>(std::floor(t / spacing));
    for (int a = -3; a <= 4; ++a) {
      const int node = base + a;
      double w = 1.0;
      for (int b = -3; b <= 4; ++b) {
        if (b == a) continue;
        const double xa = (base + a) * spacing;
        const double xb = (base + b) * spacing;
        w *= (t - xb) / (xa - xb);
      }
      q(j, ((node % n) + n) % n) += w;
    }
  }
  return {q, false};
}

}  // namespace

RealMat pullback_matrix(int n, const std::function<double(double)>& phi) {
  return build_pullback(n, phi).p;
}

std::function<double(double)> invert_circle_map(const std::function<double(double)>& phi) {
  return [phi](double y) {
    double lo = y - 1.0, hi = y + 1.0;
    for (int grow = 0; grow < 40 && phi(lo) > y; ++grow) lo -= 1.0;
    for (int grow = 0; grow < 40 && phi(hi) < y; ++grow) hi += 1.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (phi(mid) < y)
        lo = mid;
      else
        hi = mid;
      if (hi - lo < 1e-15) break;
    }
    return 0.5 * (lo + hi);
  };
}

DefectResult defect_operator(const OperatorMatrix& op,
                             const std::function<double(double)>& phi) {
  const PullbackBuild fwd = build_pullback(op.n, phi);
  const Mat p = fwd.p.cast<Complex>();
  Mat conjugated;
  if (fwd.invertible) {
    conjugated = p * op.entries * p.partialPivLu().inverse();
  } else {
    // On the fallback path the literal matrix inverse is ill-posed wherever
    // phi stretches the grid; the pullback of the numerically inverted map
    // is the stable stand-in for P^{-1}.
    const Mat p_back = pullback_matrix(op.n, invert_circle_map(phi)).cast<Complex>();
    conjugated = p * op.entries * p_back;
  }
  DefectResult out;
  out.defect = conjugated - op.entries;
  out.norm = Eigen::BDCSVD<Mat>(out.defect).singularValues()(0);
  return out;
}

DefectResult infinitesimal_defect(const OperatorMatrix& op,
                                  const std::function<double(double)>& field) {
  const int n = op.n;
  Mat lie = real_derivative_matrix(n).cast<Complex>();
  for (int j = 0; j < n; ++j) lie.row(j) *= field(kTwoPi * j / n);
  DefectResult out;
  out.defect = lie * op.entries - op.entries * lie;
  out.norm = Eigen::BDCSVD<Mat>(out.defect).singularValues()(0);
  return out;
}

}  // namespace milnor
