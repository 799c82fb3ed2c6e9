#pragma once

#include <functional>

#include "milnor/lie_group.hpp"

namespace milnor {

/// Dense discretization of a differential operator on the uniform periodic
/// grid phi_j = 2 pi j / N on [0, 2 pi).
struct OperatorMatrix {
  int n = 0;
  Mat entries;
  bool antiperiodic = false;

  double node(int j) const;
  double hermiticity_residual() const;
};

/// i d/dphi as exact trigonometric differentiation. Untwisted: integer
/// spectrum with a one-dimensional kernel (the constant mode; the sawtooth
/// mode is assigned to frequency +N/2). Twisted: the -1 transition function
/// of the Moebius local system turns the admissible frequencies into
/// half-integers, so the spectrum is gapped around zero.
OperatorMatrix circle_dirac(int n, bool twisted);

/// d^2/dphi^2 (divergence form, spectrum -k^2).
OperatorMatrix circle_laplacian(int n);

Vec sorted_eigenvalues(const OperatorMatrix& op);

/// d/dphi of the real trigonometric interpolant at the nodes (the classical
/// cot matrix for even N).
RealMat real_derivative_matrix(int n);

/// Pullback matrix of a circle diffeomorphism: (P f)_j = f(phi(phi_j)).
/// phi must be strictly increasing with phi(x + 2 pi) = phi(x) + 2 pi.
/// Grid-aligned maps give exact permutations; otherwise trigonometric
/// interpolation, with an order-8 local polynomial fallback once the
/// trigonometric system becomes ill-conditioned.
RealMat pullback_matrix(int n, const std::function<double(double)>& phi);

/// Pointwise inverse of a monotone circle map (bisection).
std::function<double(double)> invert_circle_map(const std::function<double(double)>& phi);

struct DefectResult {
  Mat defect;
  double norm = 0.0;
};

/// Defect of invariance P op P^{-1} - op of an operator under a circle
/// diffeomorphism; vanishes exactly when phi preserves the operator.
DefectResult defect_operator(const OperatorMatrix& op,
                             const std::function<double(double)>& phi);

/// Infinitesimal defect [L_X, op] with L_X = X d/dphi on functions.
DefectResult infinitesimal_defect(const OperatorMatrix& op,
                                  const std::function<double(double)>& field);

}  // namespace milnor
