#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "milnor/rng.hpp"

namespace milnor {

using Mat = Eigen::MatrixXcd;
using RealMat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Complex = std::complex<double>;

/// Frobenius tolerance for "is in the group / algebra" predicates.
inline constexpr double kMembershipTol = 1e-9;

enum class LieFamily { Orthogonal, SpecialOrthogonal, SpecialUnitary, Lorentz };

enum class InnerProductKind { TraceForm, ReTraceForm, Killing, Cartan };

std::string family_name(LieFamily family);
std::string kind_name(InnerProductKind kind);

/// A matrix Lie group family. Lorentz means SO(1,n) acting on R^{1,n},
/// represented by (n+1)x(n+1) matrices preserving eta = diag(-1,1,...,1).
struct LieGroupSpec {
  LieFamily family = LieFamily::SpecialOrthogonal;
  int n = 2;

  int matrix_size() const { return family == LieFamily::Lorentz ? n + 1 : n; }
  int algebra_dim() const;
  bool is_complex() const { return family == LieFamily::SpecialUnitary; }

  /// Defining form eta for the Lorentz family; identity otherwise.
  RealMat defining_form() const;

  bool operator==(const LieGroupSpec&) const = default;
};

LieGroupSpec make_spec(LieFamily family, int n);

/// Ordered basis of the Lie algebra. so(n): E_ij - E_ji (i<j);
/// su(n): antisymmetric + i-symmetric off-diagonal pairs and traceless
/// i-diagonals; so(1,n): so(n) rotations plus boosts E_0i + E_i0.
std::vector<Mat> algebra_basis(const LieGroupSpec& spec);

/// Frobenius residual of the algebra membership relation
/// (X^T+X for so(n), X*+X plus |tr X| for su(n), X^T eta + eta X for so(1,n)).
double algebra_residual(const LieGroupSpec& spec, const Mat& X);

/// Frobenius residual of the group defining relation (A^T A = I plus det
/// where applicable, A^T eta A = eta for Lorentz).
double group_residual(const LieGroupSpec& spec, const Mat& M);

void require_algebra(const LieGroupSpec& spec, const Mat& X, double tol = kMembershipTol);
void require_group(const LieGroupSpec& spec, const Mat& M, double tol = kMembershipTol);

/// Matrix exponential by scaling-and-squaring over a Taylor kernel.
/// exp(0) = I exactly.
Mat group_exp(const Mat& X);

/// Left-logarithmic derivative g(t0)^{-1} g'(t0) of a group-valued curve,
/// by central differences. Residual against the algebra is O(h^2).
Mat maurer_cartan(const std::function<Mat(double)>& curve, double t0, double h);

Mat bracket(const Mat& X, const Mat& Y);

/// Ad_g X = g X g^{-1}.
Mat adjoint(const Mat& g, const Mat& X);

/// Cartan involution on so(1,n): theta(X) = -X^T. Its +1 eigenspace is the
/// so(n) rotation block.
Mat cartan_involution(const Mat& X);

/// Real coordinates of X in the given basis (Frobenius-Gram solve).
Vec basis_coordinates(const std::vector<Mat>& basis, const Mat& X);

/// Matrix of ad_X in the given basis.
RealMat ad_matrix(const std::vector<Mat>& basis, const Mat& X);

/// The invariant inner products of the four families.
///   TraceForm    -tr(XY)          (Orthogonal, SpecialOrthogonal)
///   ReTraceForm  -Re tr(XY)       (SpecialUnitary)
///   Killing      tr(ad_X ad_Y)    (any family with nonabelian algebra)
///   Cartan       -kappa(X, theta Y)  (Lorentz only; positive definite)
double inner_product(const LieGroupSpec& spec, InnerProductKind kind, const Mat& X,
                     const Mat& Y);

/// Precompiled inner product: Killing and Cartan assemble their ad-matrix
/// Gram once, trace forms evaluate directly.
class InnerProduct {
 public:
  InnerProduct(const LieGroupSpec& spec, InnerProductKind kind);
  double operator()(const Mat& X, const Mat& Y) const;
  const LieGroupSpec& spec() const { return spec_; }
  InnerProductKind kind() const { return kind_; }

 private:
  LieGroupSpec spec_;
  InnerProductKind kind_;
  std::vector<Mat> basis_;
  RealMat frobenius_gram_;
  RealMat form_;  // form matrix in basis coordinates (Killing/Cartan)
};

bool kind_admissible(const LieGroupSpec& spec, InnerProductKind kind);

/// The positive definite inner product each family is normally paired with.
InnerProductKind natural_kind(LieFamily family);

Mat random_algebra(const LieGroupSpec& spec, Rng& rng, double scale = 1.0);
Mat random_group(const LieGroupSpec& spec, Rng& rng, double scale = 1.0);

}  // namespace milnor
