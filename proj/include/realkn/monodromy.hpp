#pragma once

// Fundamental-group presentations and affine monodromy representations.
//
// Composition convention: the loop γ1·γ2 runs through γ2 FIRST. Hence for an
// element stored as a triple (T, λ, θ)
//
//     T(γ1γ2) = T(γ2) · T(γ1)
//     λ(γ1γ2) = λ(γ2) · T(γ1) + λ(γ1)        (row vector times matrix)
//     θ(γ1γ2) = θ(γ2) · T(γ1) + θ(γ1)        (mod 2)
//
// Every worked example in the tests and builtins relies on this order.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "realkn/exact_linalg.hpp"

namespace realkn {

struct Letter {
  std::size_t generator = 0;
  int exponent = 1;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);

class Presentation {
 public:
  Presentation() = default;
  Presentation(std::size_t rank, std::vector<std::string> generators,
               std::vector<Word> relations, bool partial = false);

  std::size_t rank() const noexcept { return rank_; }
  std::size_t generator_count() const noexcept { return generators_.size(); }
  const std::vector<std::string>& generators() const noexcept { return generators_; }
  const std::vector<Word>& relations() const noexcept { return relations_; }
  bool partial() const noexcept { return partial_; }

  // Throws UnknownGenerator.
  std::size_t index_of(const std::string& name) const;
  std::optional<std::size_t> find(const std::string& name) const;

  // Tokens "g" or "g^-1" (also "g^1", "g^+1").
  Word parse_word(const std::vector<std::string>& tokens) const;
  std::vector<std::string> format_word(const Word& w) const;

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<std::string> generators_;
  std::vector<Word> relations_;
  bool partial_ = false;
};

// Generators g1..gN and the single relation g1·g2·…·gN (omitted when N = 0).
Presentation sphere_presentation(std::size_t branch_count, std::size_t rank);

// One group element of the affine monodromy: linear part, translational
// twisted homomorphism, and sign twist.
struct AffineElement {
  IntMatrix linear;
  IntVector translation;
  GF2Vector sign;

  static AffineElement identity(std::size_t n);
  std::size_t rank() const noexcept { return linear.rows(); }
  bool is_identity() const;

  friend bool operator==(const AffineElement&, const AffineElement&) = default;
};

// Element of the loop a·b (b traversed first).
AffineElement then(const AffineElement& a, const AffineElement& b);
// (T⁻¹, −λ·T⁻¹, θ·T⁻¹). Throws NotUnimodular.
AffineElement inverse(const AffineElement& e);

class AffineMonodromyRep {
 public:
  AffineMonodromyRep() = default;
  // Throws RankMismatch if a generator's data has the wrong size or the
  // counts disagree with the presentation.
  AffineMonodromyRep(Presentation presentation, std::vector<AffineElement> generators);

  const Presentation& presentation() const noexcept { return presentation_; }
  const std::vector<AffineElement>& generators() const noexcept { return generators_; }
  const AffineElement& generator(std::size_t i) const { return generators_[i]; }
  std::size_t rank() const noexcept { return presentation_.rank(); }

  // Same linear and translational parts, replaced sign twists.
  AffineMonodromyRep with_theta(const std::vector<GF2Vector>& theta) const;

  friend bool operator==(const AffineMonodromyRep&, const AffineMonodromyRep&) = default;

 private:
  Presentation presentation_;
  std::vector<AffineElement> generators_;
};

// T = I + dᵀ·conormal, i.e. v ↦ v + <conormal, v>·d on column vectors.
// Throws NotPrimitive / NotOrthogonal / RankMismatch.
IntMatrix focus_focus_shear(const IntVector& direction, const IntVector& conormal);

// Composite (T, λ, θ) along a word. Throws UnknownGenerator for an index out
// of range, NotUnimodular when an inverse letter has no integral inverse.
AffineElement compose(const AffineMonodromyRep& rep, const Word& word);

struct VerifyFailure {
  ErrorCode code;
  std::string message;
};

struct VerifyReport {
  bool relations_checked = false;
  std::vector<VerifyFailure> failures;
  std::vector<std::string> notices;

  bool ok() const noexcept { return failures.empty(); }
};

VerifyReport verify(const AffineMonodromyRep& rep);

// Coboundary of φ: γ ↦ φ·T_γ + φ (mod 2).
std::vector<GF2Vector> coboundary(const AffineMonodromyRep& rep, const GF2Vector& phi);

// True iff the sign twists satisfy every relation, i.e. each relation word
// composes to a zero θ.
bool satisfies_relations(const AffineMonodromyRep& rep, const std::vector<GF2Vector>& theta);

struct H1Result {
  std::size_t cocycle_dimension = 0;
  std::size_t coboundary_dimension = 0;
  std::size_t dimension = 0;
  // Complement of the coboundaries inside the cocycles; each entry is one θ
  // assignment (a GF2Vector per generator).
  std::vector<std::vector<GF2Vector>> basis;
  // One θ assignment per class, the zero class first, at most `class_cap`.
  std::vector<std::vector<GF2Vector>> representatives;
  bool truncated = false;
};

inline constexpr std::size_t kDefaultClassCap = 64;

// First group cohomology with (Z/2)^n coefficients, the module structure
// coming from the linear parts T_γ. Throws PartialPresentation.
H1Result h1_theta(const AffineMonodromyRep& rep, std::size_t class_cap = kDefaultClassCap);

// Sum of the H1Result::basis vectors flagged in `selection`.
std::vector<GF2Vector> combine_classes(const H1Result& h1, const std::vector<bool>& selection,
                                       std::size_t rank, std::size_t generator_count);

// Standard 2x2 matrices used throughout the K3 examples.
IntMatrix shear_t1();  // [[1,0],[1,1]]
IntMatrix shear_t2();  // [[2,-1],[1,0]]
IntMatrix shear_t3();  // [[1,-1],[0,1]]

// 24 generators with linear parts alternating T3 (odd index) and T1 (even
// index), λ = θ = 0, and the sphere relation g1·…·g24.
AffineMonodromyRep livne_moishezon_rep();

}  // namespace realkn
