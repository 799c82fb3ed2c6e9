#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "milnor/lie_group.hpp"
#include "milnor/sphere.hpp"

namespace milnor {

/// Weights with |x_i| at or below this threshold are treated as zero and
/// dropped together with their group coordinate.
inline constexpr double kCanonicalTol = 1e-9;

struct MilnorEntry {
  std::size_t index = 0;
  double weight = 0.0;
  Mat group;
};

/// Finite-support point of the spherical Milnor space: sorted entries
/// (i, x_i, g_i) with sum x_i^2 = 1 and no zero weights (canonical form:
/// group coordinates at vanishing weights carry no information).
struct MilnorPoint {
  LieGroupSpec spec;
  std::vector<MilnorEntry> entries;

  std::vector<std::size_t> support() const;
  bool has_index(std::size_t i) const;
  double weight_at(std::size_t i) const;       // 0 if absent
  const Mat* group_at(std::size_t i) const;    // nullptr if absent
  Vec weights_on(const std::vector<std::size_t>& ambient) const;
};

/// Tangent datum at a point: a finitely supported spherical variation over
/// an ambient index set plus algebra components. Canonical (first-order)
/// tangents carry group components only at active indices and satisfy
/// sum_{j in supp} x_j v_j = 0; kernel directions are represented by group
/// components at inactive indices.
struct MilnorTangent {
  MilnorPoint base;
  std::map<std::size_t, double> sphericals;
  std::map<std::size_t, Mat> groups;
};

/// Drops weights below tol, renormalizes to unit norm, sorts by index.
MilnorPoint canonicalize(const LieGroupSpec& spec, std::vector<MilnorEntry> raw,
                         double tol = kCanonicalTol);

std::vector<std::size_t> support(const MilnorPoint& p);

/// Spherical constraint residual |sum_J x_j v_j| of a tangent.
double tangent_constraint_residual(const MilnorTangent& v);

/// Basis of the tangent space over an ambient index set I containing supp(p):
/// (|I| - 1) spherical directions spanning {v : sum_J x_j v_j = 0} plus the
/// algebra basis at each active index.
std::vector<MilnorTangent> tangent_basis(const MilnorPoint& p,
                                         const std::vector<std::size_t>& ambient);

/// Generators of the metric kernel: one (inactive index, algebra element)
/// pair per basis element of the algebra, (|I| - |J|) * dim g in total.
std::vector<std::pair<std::size_t, Mat>> kernel_basis(
    const MilnorPoint& p, const std::vector<std::size_t>& ambient);

/// Lift of a kernel generator to a tangent datum (pure group direction at an
/// inactive index).
MilnorTangent kernel_tangent(const MilnorPoint& p, std::size_t index, const Mat& xi);

/// Left action h.(x_i, g_i) = (x_i, h g_i).
MilnorPoint group_act(const Mat& h, const MilnorPoint& p);

/// Sign action eps.(x_i, g_i) = (eps x_i, g_i), eps in {+1, -1}.
MilnorPoint z2_act(int eps, const MilnorPoint& p);

/// (t_i, g_i) -> (sqrt(t_i), g_i), canonicalized.
MilnorPoint embed_simplicial(const SimplexPoint& t, const std::vector<Mat>& groups,
                             const LieGroupSpec& spec);

/// Index shift i -> i+1 (freed slot would carry the identity and weight 0,
/// hence is absent from the canonical form).
MilnorPoint shift(const MilnorPoint& p);

/// Norm of the stage-1 interpolant (1-t) x + t Sx; positive for every unit
/// x because Sx = -x has no solution.
double shift_denominator(const MilnorPoint& p, double t);

/// Two-stage contraction: stage 1 moves p to its shifted copy along
/// normalized linear interpolation, stage 2 moves the shifted point to the
/// base point (index 0, weight 1, identity).
MilnorPoint shift_contraction(const MilnorPoint& p, double t, int stage);

/// Text record: one line per entry, "i x_i <group entries row-major>"
/// (re/im pairs for complex groups).
std::string to_text(const MilnorPoint& p);
MilnorPoint from_text(const LieGroupSpec& spec, const std::string& text);

MilnorPoint random_point(const LieGroupSpec& spec, Rng& rng, std::size_t max_support = 4,
                         std::size_t max_index = 12);

}  // namespace milnor
