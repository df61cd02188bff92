#include "realkn/affine_complex.hpp"

#include <algorithm>
#include <array>

namespace realkn {

PolyhedralComplex::PolyhedralComplex(std::size_t dimension, std::vector<std::vector<Cell>> cells,
                                     std::vector<VertexFan> vertex_fans)
    : dimension_(dimension), cells_(std::move(cells)), vertex_fans_(std::move(vertex_fans)) {
  if (dimension_ == 0) throw Error(ErrorCode::InvalidInput, "complex dimension must be positive");
  if (cells_.size() > dimension_ + 1)
    throw Error(ErrorCode::InvalidInput, "cells listed beyond the complex dimension");
  cells_.resize(dimension_ + 1);

  for (const auto& v : cells_[0])
    if (!v.boundary.empty()) throw Error(ErrorCode::InvalidInput, "vertices have no boundary");
  for (std::size_t k = 1; k <= dimension_; ++k)
    for (std::size_t c = 0; c < cells_[k].size(); ++c) {
      const auto& b = cells_[k][c].boundary;
      if (b.empty())
        throw Error(ErrorCode::InvalidInput,
                    std::to_string(k) + "-cell #" + std::to_string(c) + " has empty boundary");
      for (auto f : b)
        if (f >= cells_[k - 1].size())
          throw Error(ErrorCode::InvalidInput,
                      std::to_string(k) + "-cell #" + std::to_string(c) + " refers to missing face");
    }
  for (std::size_t e = 0; e < cells_[1].size(); ++e)
    if (cells_[1][e].boundary.size() != 2)
      throw Error(ErrorCode::InvalidInput, "edge #" + std::to_string(e) + " needs two endpoints");

  for (std::size_t rho = 0; rho < cells_[dimension_ - 1].size(); ++rho)
    if (maximal_cofaces(rho) > 2)
      throw Error(ErrorCode::InvalidInput, "codimension-one cell #" + std::to_string(rho) +
                                               " has more than two maximal cofaces");

  for (const auto& fan : vertex_fans_) {
    if (fan.vertex >= cells_[0].size())
      throw Error(ErrorCode::InvalidInput, "fan attached to missing vertex");
    for (const auto& r : fan.rays) {
      if (r.edge >= cells_[1].size())
        throw Error(ErrorCode::InvalidInput, "fan ray refers to missing edge");
      const auto& ends = cells_[1][r.edge].boundary;
      if (std::find(ends.begin(), ends.end(), fan.vertex) == ends.end())
        throw Error(ErrorCode::InvalidInput, "fan ray at vertex #" + std::to_string(fan.vertex) +
                                                 " uses edge #" + std::to_string(r.edge) +
                                                 " not incident to it");
      if (r.ray.size() != dimension_)
        throw Error(ErrorCode::InvalidInput, "fan ray has wrong length");
      if (!is_primitive(r.ray)) throw Error(ErrorCode::InvalidInput, "fan ray is not primitive");
    }
  }
}

const std::vector<Cell>& PolyhedralComplex::cells_of_dimension(std::size_t k) const {
  if (k >= cells_.size()) throw Error(ErrorCode::DimensionMismatch, "no cells of that dimension");
  return cells_[k];
}

std::size_t PolyhedralComplex::maximal_cofaces(std::size_t rho) const {
  std::size_t n = 0;
  for (const auto& sigma : cells_[dimension_])
    n += std::count(sigma.boundary.begin(), sigma.boundary.end(), rho) > 0 ? 1 : 0;
  return n;
}

MPLFunction::MPLFunction(std::vector<Int> kinks) : kinks_(std::move(kinks)) {
  for (Int k : kinks_)
    if (k < 0) throw Error(ErrorCode::InvalidInput, "kinks must be non-negative");
}

bool MPLFunction::is_positive() const noexcept {
  return std::all_of(kinks_.begin(), kinks_.end(), [](Int k) { return k > 0; });
}

std::vector<std::string> check_singular_point(const PolyhedralComplex& complex,
                                              const SingularPointSpec& point) {
  std::vector<std::string> problems;
  if (point.edge >= complex.count(1)) problems.push_back("host edge does not exist");
  if (point.direction.size() != complex.dimension() || point.conormal.size() != complex.dimension()) {
    problems.push_back("direction/conormal length differs from the dimension");
    return problems;
  }
  if (!is_primitive(point.direction)) problems.push_back("direction is not primitive");
  if (!is_primitive(point.conormal)) problems.push_back("conormal is not primitive");
  if (dot(point.direction, point.conormal) != 0)
    problems.push_back("conormal is not orthogonal to the direction");
  return problems;
}

std::vector<BalancingViolation> validate_balancing(const PolyhedralComplex& complex,
                                                   const MPLFunction& mpl) {
  if (complex.dimension() != 2)
    throw Error(ErrorCode::UnsupportedDimension,
                "balancing is implemented for surfaces only, got dimension " +
                    std::to_string(complex.dimension()));
  if (mpl.kinks().size() != complex.count(1))
    throw Error(ErrorCode::DimensionMismatch, std::to_string(mpl.kinks().size()) +
                                                  " kinks for " + std::to_string(complex.count(1)) +
                                                  " edges");
  std::vector<BalancingViolation> out;
  for (const auto& fan : complex.vertex_fans()) {
    IntVector sum(2);
    for (const auto& r : fan.rays) sum = sum + mpl.kink(r.edge) * r.ray;
    if (!sum.is_zero()) out.push_back({fan.vertex, sum});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.vertex < b.vertex; });
  return out;
}

QuarticK3 builtin_quartic_k3() {
  // Vertices v0..v3; edges in lexicographic order of their endpoints.
  const std::array<std::array<std::size_t, 2>, 6> edges{
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  const std::array<std::array<std::size_t, 3>, 4> triangles{
      {{0, 1, 3}, {0, 2, 4}, {1, 2, 5}, {3, 4, 5}}};

  std::vector<std::vector<Cell>> cells(3);
  cells[0].resize(4);
  for (const auto& e : edges) cells[1].push_back({{e[0], e[1]}});
  for (const auto& t : triangles) cells[2].push_back({{t[0], t[1], t[2]}});

  // Each vertex carries the fan of P^2 on its three edges.
  const std::array<IntVector, 3> p2_rays{IntVector{1, 0}, IntVector{0, 1}, IntVector{-1, -1}};
  std::vector<VertexFan> fans;
  for (std::size_t v = 0; v < 4; ++v) {
    VertexFan fan{v, {}};
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (edges[e][0] == v || edges[e][1] == v) fan.rays.push_back({e, p2_rays[fan.rays.size()]});
    fans.push_back(std::move(fan));
  }

  // Edge directions in the chart at v0, where v1 = (1,0), v2 = (0,1),
  // v3 = (-1,-1). The conormal is the direction rotated by -90 degrees.
  const std::array<IntVector, 6> direction{IntVector{1, 0},  IntVector{0, 1}, IntVector{1, 1},
                                           IntVector{1, -1}, IntVector{2, 1}, IntVector{1, 2}};

  QuarticK3 k3;
  k3.complex = PolyhedralComplex(2, std::move(cells), std::move(fans));
  k3.mpl = MPLFunction(std::vector<Int>(6, 1));

  std::vector<std::string> names;
  std::vector<AffineElement> gens;
  auto add_point = [&](std::size_t e, std::size_t k, std::string name) {
    const IntVector& d = direction[e];
    IntVector n{d[1], -d[0]};
    k3.singular_points.push_back({e, k, d, n, true});
    names.push_back(std::move(name));
    gens.push_back({focus_focus_shear(d, n), IntVector(2), GF2Vector(2)});
  };

  // gamma1, gamma2, gamma3 encircle the first point on the edges towards v2,
  // v3 and v1: linear parts T1, T2, T3.
  add_point(1, 0, "gamma1");
  add_point(2, 0, "gamma2");
  add_point(0, 0, "gamma3");
  for (std::size_t e = 0; e < edges.size(); ++e)
    for (std::size_t k = 0; k < 4; ++k) {
      if (k == 0 && e <= 2) continue;
      add_point(e, k,
                "s" + std::to_string(edges[e][0]) + std::to_string(edges[e][1]) + "_" +
                    std::to_string(k + 1));
    }

  k3.branch_points = names;
  k3.monodromy = AffineMonodromyRep(Presentation(2, std::move(names), {}, true), std::move(gens));
  return k3;
}

}  // namespace realkn
