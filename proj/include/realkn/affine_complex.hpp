#pragma once

// The intersection complex (B, P) as combinatorial data: cells by dimension
// (already identified, so a closed B is listed once), one fan of primitive
// ray generators per vertex chart, kinks on codimension-one cells, and the
// focus-focus points sitting on edges.

#include <cstddef>
#include <string>
#include <vector>

#include "realkn/exact_linalg.hpp"
#include "realkn/monodromy.hpp"

namespace realkn {

struct Cell {
  // Indices into the cells of one dimension lower; empty for vertices.
  std::vector<std::size_t> boundary;

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct FanRay {
  std::size_t edge = 0;
  IntVector ray;

  friend bool operator==(const FanRay&, const FanRay&) = default;
};

struct VertexFan {
  std::size_t vertex = 0;
  std::vector<FanRay> rays;

  friend bool operator==(const VertexFan&, const VertexFan&) = default;
};

class PolyhedralComplex {
 public:
  PolyhedralComplex() = default;
  // cells[k] lists the k-cells, k = 0..dimension. Throws InvalidInput when an
  // incidence index is out of range, an edge does not have two endpoints, a
  // codimension-one cell has more than two maximal cofaces, or a fan ray is
  // not primitive / not attached to an edge at its vertex.
  PolyhedralComplex(std::size_t dimension, std::vector<std::vector<Cell>> cells,
                    std::vector<VertexFan> vertex_fans);

  std::size_t dimension() const noexcept { return dimension_; }
  const std::vector<std::vector<Cell>>& cells() const noexcept { return cells_; }
  const std::vector<Cell>& cells_of_dimension(std::size_t k) const;
  std::size_t count(std::size_t k) const { return k < cells_.size() ? cells_[k].size() : 0; }
  const std::vector<VertexFan>& vertex_fans() const noexcept { return vertex_fans_; }

  // Number of maximal cells having codimension-one cell `rho` as a face.
  std::size_t maximal_cofaces(std::size_t rho) const;

  friend bool operator==(const PolyhedralComplex&, const PolyhedralComplex&) = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<std::vector<Cell>> cells_;
  std::vector<VertexFan> vertex_fans_;
};

// Kinks κ_ρ, one non-negative integer per codimension-one cell.
class MPLFunction {
 public:
  MPLFunction() = default;
  explicit MPLFunction(std::vector<Int> kinks);

  const std::vector<Int>& kinks() const noexcept { return kinks_; }
  Int kink(std::size_t rho) const { return kinks_.at(rho); }
  // Strictly positive everywhere (required where a log structure is claimed).
  bool is_positive() const noexcept;

  friend bool operator==(const MPLFunction&, const MPLFunction&) = default;

 private:
  std::vector<Int> kinks_;
};

struct SingularPointSpec {
  std::size_t edge = 0;
  std::size_t ordinal = 0;
  IntVector direction;
  IntVector conormal;
  bool slab_sign_change = true;

  friend bool operator==(const SingularPointSpec&, const SingularPointSpec&) = default;
};

// Empty when the point is well formed; otherwise human-readable problems.
std::vector<std::string> check_singular_point(const PolyhedralComplex& complex,
                                              const SingularPointSpec& point);

struct BalancingViolation {
  std::size_t vertex = 0;
  IntVector defect;

  friend bool operator==(const BalancingViolation&, const BalancingViolation&) = default;
};

// For every vertex fan, Σ κ_e · m_e over the rays; a nonzero sum is a
// violation. Only surfaces are supported: throws UnsupportedDimension for
// n != 2, DimensionMismatch if the kink count differs from the edge count.
std::vector<BalancingViolation> validate_balancing(const PolyhedralComplex& complex,
                                                   const MPLFunction& mpl);

struct QuarticK3 {
  PolyhedralComplex complex;
  MPLFunction mpl;
  std::vector<SingularPointSpec> singular_points;
  // One generator per singular point, all in the chart at vertex 0. The
  // first three are the loops gamma1, gamma2, gamma3 with linear parts
  // T1, T2, T3. Relations are not known, so the presentation is partial.
  AffineMonodromyRep monodromy;
  std::vector<std::string> branch_points;
};

// Boundary of a tetrahedron, every vertex carrying the fan of P^2, κ = 1 on
// all six edges and four focus-focus points on each edge.
QuarticK3 builtin_quartic_k3();

}  // namespace realkn
