#pragma once

// Permutation action of π1 on the real points of the torus fibre.
//
// Over a base point the real points of the fibre over the sign μ are the
// 2^n elements φ of (Z/2)^n. A loop γ acts by
//
//     φ ↦ φ·T_γ + [μ = −1]·(λ_γ mod 2) + θ_γ.
//
// Fibre points are encoded by index: bit i of the index is entry i of φ, so
// u0..u3 = (0,0), (1,0), (0,1), (1,1) have indices 0..3.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "realkn/monodromy.hpp"

namespace realkn {

enum class FiberSign { Positive, Negative };

std::string to_string(FiberSign mu);
// Accepts "+1", "1", "-1".
FiberSign parse_fiber_sign(const std::string& s);

// images[p] is the image of fibre point p.
using Permutation = std::vector<std::uint32_t>;

// Cycle lengths, sorted descending, over the points in `domain` (which must
// be a union of cycles).
std::vector<std::size_t> cycle_type(const Permutation& p, const std::vector<std::uint32_t>& domain);

inline constexpr std::size_t kMaxFiberRank = 20;

class RealCoverAction {
 public:
  RealCoverAction() = default;
  // Throws InvalidInput if some map is not a bijection of 2^rank points.
  RealCoverAction(std::size_t rank, FiberSign mu, std::vector<std::string> generators,
                  std::vector<Permutation> permutations);

  std::size_t rank() const noexcept { return rank_; }
  FiberSign fiber() const noexcept { return mu_; }
  std::size_t point_count() const noexcept { return std::size_t{1} << rank_; }
  const std::vector<std::string>& generators() const noexcept { return generators_; }
  const std::vector<Permutation>& permutations() const noexcept { return permutations_; }
  const Permutation& permutation(std::size_t i) const { return permutations_.at(i); }

  friend bool operator==(const RealCoverAction&, const RealCoverAction&) = default;

 private:
  std::size_t rank_ = 0;
  FiberSign mu_ = FiberSign::Positive;
  std::vector<std::string> generators_;
  std::vector<Permutation> permutations_;
};

// Permutation of one affine element on the fibre over μ.
Permutation fiber_permutation(const AffineElement& e, FiberSign mu);

// Throws RankMismatch if rank exceeds kMaxFiberRank.
RealCoverAction build_action(const AffineMonodromyRep& rep, FiberSign mu);

// Orbits of the generated group, each sorted, ordered by smallest member.
std::vector<std::vector<std::uint32_t>> orbits(const RealCoverAction& action);

// Action built from θ'_γ = θ_γ + φ·T_γ + φ. It equals the original action
// conjugated by translation by φ.
RealCoverAction theta_shift(const AffineMonodromyRep& rep, FiberSign mu, const GF2Vector& phi);

struct BranchCycles {
  std::string generator;
  std::vector<std::size_t> cycles;  // descending, summing to the degree
  bool ramified() const;

  friend bool operator==(const BranchCycles&, const BranchCycles&) = default;
};

struct Component {
  std::size_t degree = 0;
  std::vector<std::uint32_t> points;
  std::vector<BranchCycles> branch_points;
  Int euler_characteristic = 0;
  std::optional<Int> genus;

  friend bool operator==(const Component&, const Component&) = default;
};

struct ComponentReport {
  std::size_t rank = 0;
  FiberSign fiber = FiberSign::Positive;
  Int base_euler = 2;
  std::vector<Component> components;
  // The genus assumes each component is a closed orientable surface.
  bool orientability_assumed = false;

  friend bool operator==(const ComponentReport&, const ComponentReport&) = default;
};

// Components of the cover over the fibre μ with Riemann–Hurwitz data.
// χ = degree·χ(base) − Σ_branch Σ_cycles (length − 1). The genus is filled in
// for rank 2 over a sphere when χ is even and at most 2. Throws
// UnknownGenerator for a branch point name that is not a generator.
ComponentReport classify(const AffineMonodromyRep& rep, FiberSign mu,
                         const std::vector<std::string>& branch_points, Int base_euler = 2);

}  // namespace realkn
