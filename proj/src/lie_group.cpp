#include "milnor/lie_group.hpp"

#include <cmath>
#include <stdexcept>

namespace milnor {

namespace {

const Complex kI(0.0, 1.0);

Mat unit_matrix(int size, int r, int c) {
  Mat e = Mat::Zero(size, size);
  e(r, c) = 1.0;
  return e;
}

}  // namespace

std::string family_name(LieFamily family) {
  switch (family) {
    case LieFamily::Orthogonal: return "O(n)";
    case LieFamily::SpecialOrthogonal: return "SO(n)";
    case LieFamily::SpecialUnitary: return "SU(n)";
    case LieFamily::Lorentz: return "SO(1,n)";
  }
  return "?";
}

std::string kind_name(InnerProductKind kind) {
  switch (kind) {
    case InnerProductKind::TraceForm: return "trace";
    case InnerProductKind::ReTraceForm: return "re-trace";
    case InnerProductKind::Killing: return "killing";
    case InnerProductKind::Cartan: return "cartan";
  }
  return "?";
}

int LieGroupSpec::algebra_dim() const {
  switch (family) {
    case LieFamily::Orthogonal:
    case LieFamily::SpecialOrthogonal:
      return n * (n - 1) / 2;
    case LieFamily::SpecialUnitary:
      return n * n - 1;
    case LieFamily::Lorentz:
      return n * (n + 1) / 2;
  }
  return 0;
}

RealMat LieGroupSpec::defining_form() const {
  const int m = matrix_size();
  RealMat eta = RealMat::Identity(m, m);
  if (family == LieFamily::Lorentz) eta(0, 0) = -1.0;
  return eta;
}

LieGroupSpec make_spec(LieFamily family, int n) {
  if (n < 1) throw std::invalid_argument("lie group size parameter must be >= 1");
  return LieGroupSpec{family, n};
}

std::vector<Mat> algebra_basis(const LieGroupSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("lie group size parameter must be >= 1");
  const int m = spec.matrix_size();
  std::vector<Mat> basis;
  basis.reserve(static_cast<std::size_t>(spec.algebra_dim()));

  switch (spec.family) {
    case LieFamily::Orthogonal:
    case LieFamily::SpecialOrthogonal: {
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
          basis.push_back(unit_matrix(m, i, j) - unit_matrix(m, j, i));
      break;
    }
    case LieFamily::SpecialUnitary: {
      for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
          basis.push_back(unit_matrix(m, i, j) - unit_matrix(m, j, i));
          basis.push_back(kI * (unit_matrix(m, i, j) + unit_matrix(m, j, i)));
        }
      }
      for (int k = 0; k + 1 < m; ++k)
        basis.push_back(kI * (unit_matrix(m, k, k) - unit_matrix(m, k + 1, k + 1)));
      break;
    }
    case LieFamily::Lorentz: {
      for (int i = 1; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
          basis.push_back(unit_matrix(m, i, j) - unit_matrix(m, j, i));
      for (int i = 1; i < m; ++i)
        basis.push_back(unit_matrix(m, 0, i) + unit_matrix(m, i, 0));
      break;
    }
  }
  return basis;
}

double algebra_residual(const LieGroupSpec& spec, const Mat& X) {
  if (X.rows() != spec.matrix_size() || X.cols() != spec.matrix_size())
    throw std::invalid_argument("algebra_residual: size mismatch");
  switch (spec.family) {
    case LieFamily::Orthogonal:
    case LieFamily::SpecialOrthogonal:
      return (X.transpose() + X).norm() + X.imag().norm();
    case LieFamily::SpecialUnitary:
      return (X.adjoint() + X).norm() + std::abs(X.trace());
    case LieFamily::Lorentz: {
      const Mat eta = spec.defining_form().cast<Complex>();
      return (X.transpose() * eta + eta * X).norm() + X.imag().norm();
    }
  }
  return 0.0;
}

double group_residual(const LieGroupSpec& spec, const Mat& M) {
  if (M.rows() != spec.matrix_size() || M.cols() != spec.matrix_size())
    throw std::invalid_argument("group_residual: size mismatch");
  const int m = spec.matrix_size();
  const Mat id = Mat::Identity(m, m);
  switch (spec.family) {
    case LieFamily::Orthogonal:
      return (M.transpose() * M - id).norm() + M.imag().norm();
    case LieFamily::SpecialOrthogonal:
      return (M.transpose() * M - id).norm() + M.imag().norm() +
             std::abs(M.determinant() - 1.0);
    case LieFamily::SpecialUnitary:
      return (M.adjoint() * M - id).norm() + std::abs(M.determinant() - 1.0);
    case LieFamily::Lorentz: {
      const Mat eta = spec.defining_form().cast<Complex>();
      return (M.transpose() * eta * M - eta).norm() + M.imag().norm() +
             std::abs(M.determinant() - 1.0);
    }
  }
  return 0.0;
}

void require_algebra(const LieGroupSpec& spec, const Mat& X, double tol) {
  const double r = algebra_residual(spec, X);
  if (!(r <= tol))
    throw std::invalid_argument("matrix is not in the Lie algebra of " +
                                family_name(spec.family) + " (residual " +
                                std::to_string(r) + ")");
}

void require_group(const LieGroupSpec& spec, const Mat& M, double tol) {
  const double r = group_residual(spec, M);
  if (!(r <= tol))
    throw std::invalid_argument("matrix is not in the group " + family_name(spec.family) +
                                " (residual " + std::to_string(r) + ")");
}

Mat group_exp(const Mat& X) {
  if (X.rows() != X.cols()) throw std::invalid_argument("group_exp: square matrix required");
  const int m = static_cast<int>(X.rows());
  const double norm = X.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Mat scaled = X / std::pow(2.0, squarings);

  Mat term = Mat::Identity(m, m);
  Mat sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
    if (term.norm() < 1e-18 * (1.0 + sum.norm())) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

Mat maurer_cartan(const std::function<Mat(double)>& curve, double t0, double h) {
  if (h <= 0) throw std::invalid_argument("maurer_cartan: step must be positive");
  const Mat center = curve(t0);
  const Mat forward = curve(t0 + h);
  const Mat backward = curve(t0 - h);
  Eigen::FullPivLU<Mat> lu(center);
  if (!lu.isInvertible())
    throw std::invalid_argument("maurer_cartan: singular curve value");
  return lu.solve((forward - backward) / (2.0 * h));
}

Mat bracket(const Mat& X, const Mat& Y) { return X * Y - Y * X; }

Mat adjoint(const Mat& g, const Mat& X) {
  Eigen::FullPivLU<Mat> lu(g);
  if (!lu.isInvertible()) throw std::invalid_argument("adjoint: singular group element");
  return g * X * lu.inverse();
}

Mat cartan_involution(const Mat& X) { return -X.transpose(); }

Vec basis_coordinates(const std::vector<Mat>& basis, const Mat& X) {
  const int d = static_cast<int>(basis.size());
  RealMat gram(d, d);
  Vec rhs(d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j)
      gram(i, j) = (basis[i].adjoint() * basis[j]).trace().real();
    rhs(i) = (basis[i].adjoint() * X).trace().real();
  }
  return gram.ldlt().solve(rhs);
}

RealMat ad_matrix(const std::vector<Mat>& basis, const Mat& X) {
  const int d = static_cast<int>(basis.size());
  RealMat ad(d, d);
  for (int k = 0; k < d; ++k) ad.col(k) = basis_coordinates(basis, bracket(X, basis[k]));
  return ad;
}

bool kind_admissible(const LieGroupSpec& spec, InnerProductKind kind) {
  switch (kind) {
    case InnerProductKind::TraceForm:
      return spec.family == LieFamily::Orthogonal ||
             spec.family == LieFamily::SpecialOrthogonal;
    case InnerProductKind::ReTraceForm:
      return spec.family == LieFamily::SpecialUnitary;
    case InnerProductKind::Killing:
      return spec.algebra_dim() >= 1;
    case InnerProductKind::Cartan:
      return spec.family == LieFamily::Lorentz;
  }
  return false;
}

InnerProductKind natural_kind(LieFamily family) {
  switch (family) {
    case LieFamily::Orthogonal:
    case LieFamily::SpecialOrthogonal:
      return InnerProductKind::TraceForm;
    case LieFamily::SpecialUnitary:
      return InnerProductKind::ReTraceForm;
    case LieFamily::Lorentz:
      return InnerProductKind::Cartan;
  }
  return InnerProductKind::TraceForm;
}

namespace {

double killing_form(const LieGroupSpec& spec, const Mat& X, const Mat& Y) {
  const auto basis = algebra_basis(spec);
  // An abelian algebra has identically zero Killing form; reject it as a
  // degenerate metric rather than returning zeros.
  bool abelian = true;
  for (std::size_t i = 0; i < basis.size() && abelian; ++i)
    for (std::size_t j = i + 1; j < basis.size() && abelian; ++j)
      if (bracket(basis[i], basis[j]).norm() > 1e-12) abelian = false;
  if (abelian)
    throw std::invalid_argument("killing form is identically zero on an abelian algebra");
  return (ad_matrix(basis, X) * ad_matrix(basis, Y)).trace();
}

}  // namespace

double inner_product(const LieGroupSpec& spec, InnerProductKind kind, const Mat& X,
                     const Mat& Y) {
  if (!kind_admissible(spec, kind))
    throw std::invalid_argument(kind_name(kind) + " inner product is not admissible for " +
                                family_name(spec.family));
  require_algebra(spec, X, 1e-6);
  require_algebra(spec, Y, 1e-6);
  switch (kind) {
    case InnerProductKind::TraceForm:
      return -(X * Y).trace().real();
    case InnerProductKind::ReTraceForm:
      return -(X * Y).trace().real();
    case InnerProductKind::Killing:
      return killing_form(spec, X, Y);
    case InnerProductKind::Cartan:
      return -killing_form(spec, X, cartan_involution(Y));
  }
  return 0.0;
}

InnerProduct::InnerProduct(const LieGroupSpec& spec, InnerProductKind kind)
    : spec_(spec), kind_(kind) {
  if (!kind_admissible(spec, kind))
    throw std::invalid_argument(kind_name(kind) + " inner product is not admissible for " +
                                family_name(spec.family));
  if (kind == InnerProductKind::Killing || kind == InnerProductKind::Cartan) {
    basis_ = algebra_basis(spec);
    const int d = static_cast<int>(basis_.size());
    frobenius_gram_.resize(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        frobenius_gram_(i, j) = (basis_[i].adjoint() * basis_[j]).trace().real();
    RealMat killing(d, d);
    std::vector<RealMat> ads(basis_.size());
    for (int k = 0; k < d; ++k) ads[static_cast<std::size_t>(k)] = ad_matrix(basis_, basis_[k]);
    bool abelian = true;
    for (int k = 0; k < d && abelian; ++k)
      if (ads[static_cast<std::size_t>(k)].norm() > 1e-12) abelian = false;
    if (abelian)
      throw std::invalid_argument("killing form is identically zero on an abelian algebra");
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        killing(i, j) =
            (ads[static_cast<std::size_t>(i)] * ads[static_cast<std::size_t>(j)]).trace();
    if (kind == InnerProductKind::Killing) {
      form_ = killing;
    } else {
      // <X,Y>_theta = -kappa(X, theta Y); theta flips the sign of boost basis
      // coordinates (theta(X) = -X^T).
      RealMat theta = RealMat::Zero(d, d);
      for (int j = 0; j < d; ++j) {
        const Vec coords = basis_coordinates(basis_, cartan_involution(basis_[j]));
        theta.col(j) = coords;
      }
      form_ = -killing * theta;
      form_ = 0.5 * (form_ + form_.transpose()).eval();
    }
  }
}

double InnerProduct::operator()(const Mat& X, const Mat& Y) const {
  switch (kind_) {
    case InnerProductKind::TraceForm:
    case InnerProductKind::ReTraceForm:
      return -(X * Y).trace().real();
    case InnerProductKind::Killing:
    case InnerProductKind::Cartan: {
      const int d = static_cast<int>(basis_.size());
      Vec rx(d), ry(d);
      for (int i = 0; i < d; ++i) {
        rx(i) = (basis_[static_cast<std::size_t>(i)].adjoint() * X).trace().real();
        ry(i) = (basis_[static_cast<std::size_t>(i)].adjoint() * Y).trace().real();
      }
      const Eigen::LDLT<RealMat> solver(frobenius_gram_);
      const Vec cx = solver.solve(rx);
      const Vec cy = solver.solve(ry);
      return cx.dot(form_ * cy);
    }
  }
  return 0.0;
}

Mat random_algebra(const LieGroupSpec& spec, Rng& rng, double scale) {
  const auto basis = algebra_basis(spec);
  const int m = spec.matrix_size();
  Mat X = Mat::Zero(m, m);
  for (const auto& b : basis) X += rng.normal() * scale * b;
  return X;
}

Mat random_group(const LieGroupSpec& spec, Rng& rng, double scale) {
  return group_exp(random_algebra(spec, rng, scale));
}

}  // namespace milnor
