#pragma once

// Cones, dual cones and the affine monoids of the local toric models.
//
// Local model coordinates: M = M' ⊕ Z^{q+1}, a lattice point is written
// (m_1, …, m_r, a_0, …, a_q) with r = rank M'. The monoid is
//
//     P = { (m, a) : a_i ≥ ψ_i(m) for 0 ≤ i ≤ q },  ψ_i(m) = −min_{n ∈ Δ_i} <n, m>,
//
// and K ⊂ N is generated by the lifted vertices (n, e_i*) for n ∈ Δ_i.
// Every monoid computation is a bounded enumeration in the box
// [−bound, bound]^rank that fails loudly when the box is shown too small.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "realkn/exact_linalg.hpp"

namespace realkn {

inline constexpr std::size_t kMaxConeRank = 4;

class RationalCone {
 public:
  RationalCone() = default;
  // Generators are made primitive, sorted and deduplicated. Throws
  // InvalidInput for a zero generator or a length different from `ambient`.
  RationalCone(std::size_t ambient, std::vector<IntVector> generators);

  std::size_t ambient() const noexcept { return ambient_; }
  const std::vector<IntVector>& generators() const noexcept { return generators_; }

  friend bool operator==(const RationalCone&, const RationalCone&) = default;

 private:
  std::size_t ambient_ = 0;
  std::vector<IntVector> generators_;
};

// Generators of {x : <x, k> ≥ 0 for all generators k}, computed by the
// double description method. A lineality space L contributes ±(basis of L).
// Throws RankTooLarge above kMaxConeRank.
RationalCone dual_cone(const RationalCone& k);

// Membership test backed by an inequality description of the cone.
class ConeMembership {
 public:
  explicit ConeMembership(const RationalCone& cone);

  bool contains(const IntVector& x) const;
  // Normals h with h·x ≥ 0 on the cone; they generate the dual cone.
  const std::vector<IntVector>& inequalities() const noexcept { return inequalities_; }
  // The cone contains no line.
  bool pointed() const noexcept { return pointed_; }

 private:
  std::vector<IntVector> inequalities_;
  bool pointed_ = false;
};

// Primitive generators of the extreme rays of a pointed cone.
std::vector<IntVector> extreme_rays(const RationalCone& cone);

struct ToricMonoid {
  std::size_t rank = 0;
  std::vector<IntVector> generators;
  // The cone spanned by the monoid, whose lattice points the monoid is.
  std::optional<RationalCone> cone;
};

// Primitive basis of the rational relation space among the generators: each
// vector c satisfies Σ c_j g_j = 0.
std::vector<IntVector> relation_basis(const ToricMonoid& p);

// Lattice points of K as a monoid: the minimal generating set found in the
// box. Throws NotStrictlyConvex, BoundInsufficient, RankTooLarge.
ToricMonoid monoid_generators(const RationalCone& k, Int bound);

struct LocalModelSpec {
  std::size_t mprime_rank = 0;
  // Maximal cones of the complete fan Σ in M', each by its ray generators.
  std::vector<std::vector<IntVector>> fan;
  // Δ_0, …, Δ_q ⊂ N' by vertex lists.
  std::vector<std::vector<IntVector>> polytopes;

  std::size_t q() const noexcept { return polytopes.empty() ? 0 : polytopes.size() - 1; }
  std::size_t lattice_rank() const noexcept { return mprime_rank + polytopes.size(); }

  friend bool operator==(const LocalModelSpec&, const LocalModelSpec&) = default;
};

// ψ(m) = −min over the vertices of <n, m>.
Int support_psi(const std::vector<IntVector>& polytope, const IntVector& m);

// Empty when the local-model data satisfies its invariants.
std::vector<std::string> check_local_model_spec(const LocalModelSpec& spec);

// True iff the lattice points of conv(vertices) are exactly the vertices and
// the vertices are affinely independent. A single point counts.
bool is_elementary_simplex(const std::vector<IntVector>& vertices);

struct LocalModel {
  ToricMonoid monoid;
  RationalCone k;
  // P agrees with dual_cone(K) ∩ M at every point of the box.
  bool consistent = false;
  // Coordinate index of e_0 (the degeneration parameter t).
  std::size_t e0_index = 0;
};

// Throws InvalidSpec, BoundInsufficient, NotStrictlyConvex, RankTooLarge.
LocalModel build_local_model(const LocalModelSpec& spec, Int bound);

// The focus-focus model: M' = Z, Σ = {R≤0, 0, R≥0}, Δ_0 = Δ_1 = [0, 1].
LocalModelSpec focus_focus_spec();

struct MonodromyCone {
  RationalCone kbar;
  // Lifted vertex set is affinely independent.
  bool is_simplex = true;
  // Additionally unimodular: a standard simplex.
  bool is_standard = true;
};

// Cone over ⋃_{i≥1} Δ_i × {e_i*}. Only shape errors raise InvalidSpec;
// non-elementary polytopes are reported through the flags.
MonodromyCone monodromy_cone(const LocalModelSpec& spec);

struct GhostRank {
  std::size_t rank = 0;
  std::uint64_t real_fiber = 1;  // 2^rank
};

// r = rank P^gp − rank F^gp for the face F generated by `face_generators`.
// Throws NotAFace.
GhostRank ghost_rank(const ToricMonoid& p, const std::vector<IntVector>& face_generators);

// Generators of P lying in the smallest face containing v.
std::vector<IntVector> minimal_face(const ToricMonoid& p, const IntVector& v);

struct FaceQuotient {
  // Minimal generators of P/F in coordinates given by the facets through F.
  std::vector<IntVector> generators;
  bool free = false;
};

FaceQuotient quotient_by_face(const ToricMonoid& p, const std::vector<IntVector>& face_generators);

}  // namespace realkn
