#pragma once

#include <vector>

#include "milnor/chart.hpp"
#include "milnor/milnor_space.hpp"

namespace milnor {

/// Generators of the Clifford algebra of rank r:
///   gamma_a gamma_b + gamma_b gamma_a = -2 sig_a delta_ab Id,
/// built recursively from 2x2 seeds; matrix size 2^ceil(r/2).
struct CliffordRep {
  int rank = 0;
  std::vector<int> signature;  // +1 / -1 per axis
  std::vector<Mat> gammas;
};

CliffordRep gamma_generators(int rank, std::vector<int> signature = {});

/// Largest violation of the defining relation over all generator pairs.
double clifford_relation_residual(const CliffordRep& rep);

/// Orthonormal frame for a constant metric: columns e_a with
/// e_a^T M e_b = sig_a delta_ab.
struct Frame {
  RealMat vectors;  // d x r, columns are the frame vectors
  RealMat metric;   // d x d symmetric
  std::vector<int> signature;

  int rank() const { return static_cast<int>(vectors.cols()); }
};

double frame_gram_residual(const Frame& frame);
void require_frame(const Frame& frame, double tol = 1e-8);

/// Clifford multiplication by a tangent vector expanded in the frame:
/// c(v) = sum_a sig_a <v, e_a> gamma_a, so c(v)^2 = -<v,v> Id.
Mat clifford_of_vector(const CliffordRep& rep, const Frame& frame, const Vec& v);

/// | sum_a c(e_a) xi(e_a) - sum_a c(e'_a) xi(e'_a) | with frame B expanded in
/// frame A coordinates; zero for orthogonal frame changes (the Dirac
/// contraction does not depend on the orthonormal frame).
double frame_independence_residual(const CliffordRep& rep, const Frame& frame_a,
                                   const Frame& frame_b, const Vec& xi);

/// c(xi_sharp)^2 + |xi|^2 Id residual: the principal symbol of D squares to
/// the metric symbol of the Laplacian.
double dirac_square_symbol_check(const CliffordRep& rep, const Frame& frame, const Vec& xi);

/// Fiber frame rescaled by the barycentric weights: at each active node j the
/// algebra frame is scaled by 1/x_j, so the barycentric Gram matrix is the
/// identity. Requires |x_j| >= 0.05 everywhere on the support.
std::vector<MilnorTangent> warped_frame(const MilnorPoint& p,
                                        const std::vector<Mat>& algebra_frame);

/// Gram matrix of tangents under metric_eval.
RealMat tangent_gram(const MilnorPoint& p, const std::vector<MilnorTangent>& frame);

/// Algebra frame orthonormal for the family's natural inner product
/// (Gram-Schmidt over the algebra basis).
std::vector<Mat> orthonormal_algebra_frame(const LieGroupSpec& spec);

}  // namespace milnor
