#include "realkn/toric_monoid.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace realkn {

// --- cones ------------------------------------------------------------------

RationalCone::RationalCone(std::size_t ambient, std::vector<IntVector> generators)
    : ambient_(ambient) {
  for (auto& g : generators) {
    if (g.size() != ambient_) throw Error(ErrorCode::InvalidInput, "cone generator has wrong length");
    if (g.is_zero()) throw Error(ErrorCode::InvalidInput, "zero cone generator");
    generators_.push_back(primitive_part(g));
  }
  std::sort(generators_.begin(), generators_.end());
  generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());
}

namespace {

using Support = std::vector<bool>;

Support tight_set(const std::vector<IntVector>& constraints, const IntVector& x) {
  Support s(constraints.size());
  for (std::size_t j = 0; j < constraints.size(); ++j) s[j] = dot(constraints[j], x) == 0;
  return s;
}

std::size_t tight_rank(const std::vector<IntVector>& constraints, const Support& s,
                       std::size_t ambient) {
  std::vector<IntVector> rows;
  for (std::size_t j = 0; j < constraints.size(); ++j)
    if (s[j]) rows.push_back(constraints[j]);
  return rank(rows, ambient);
}

// Double description of {x : A x ≥ 0}. Returns (lineality basis, extreme
// rays modulo the lineality space).
std::pair<std::vector<IntVector>, std::vector<IntVector>> double_description(
    const std::vector<IntVector>& constraints, std::size_t d) {
  std::vector<IntVector> lineality;
  for (std::size_t i = 0; i < d; ++i) {
    IntVector e(d);
    e[i] = 1;
    lineality.push_back(e);
  }
  std::vector<IntVector> rays;
  std::vector<IntVector> processed;

  for (const auto& a : constraints) {
    auto pivot = std::find_if(lineality.begin(), lineality.end(),
                              [&](const IntVector& l) { return dot(a, l) != 0; });
    if (pivot != lineality.end()) {
      IntVector l0 = *pivot;
      if (dot(a, l0) < 0) l0 = -l0;
      const Int al0 = dot(a, l0);
      std::vector<IntVector> next_lin;
      for (auto it = lineality.begin(); it != lineality.end(); ++it) {
        if (it == pivot) continue;
        IntVector v = al0 * *it - dot(a, *it) * l0;
        if (!v.is_zero()) next_lin.push_back(primitive_part(v));
      }
      std::vector<IntVector> next_rays;
      for (const auto& r : rays) {
        IntVector v = al0 * r - dot(a, r) * l0;
        if (!v.is_zero()) next_rays.push_back(primitive_part(v));
      }
      next_rays.push_back(primitive_part(l0));
      lineality = std::move(next_lin);
      rays = std::move(next_rays);
      processed.push_back(a);
      continue;
    }

    processed.push_back(a);
    std::vector<IntVector> pos, neg, next;
    for (const auto& r : rays) {
      Int s = dot(a, r);
      if (s > 0) pos.push_back(r);
      else if (s < 0) neg.push_back(r);
      else next.push_back(r);
    }
    next.insert(next.end(), pos.begin(), pos.end());
    // Adjacent pairs: tight constraints (before adding a) of rank d - dimL - 2.
    std::vector<IntVector> before(processed.begin(), processed.end() - 1);
    const std::size_t target = d - lineality.size();
    for (const auto& p : pos)
      for (const auto& n : neg) {
        Support sp = tight_set(before, p), sn = tight_set(before, n);
        Support both(before.size());
        for (std::size_t j = 0; j < before.size(); ++j) both[j] = sp[j] && sn[j];
        if (target < 2 || tight_rank(before, both, d) != target - 2) continue;
        IntVector v = dot(a, p) * n - dot(a, n) * p;
        if (!v.is_zero()) next.push_back(primitive_part(v));
      }
    rays = std::move(next);

    // Keep only extreme rays, one per tight set.
    std::vector<IntVector> kept;
    std::set<Support> seen;
    const std::size_t extreme_rank = d - lineality.size() - 1;
    for (const auto& r : rays) {
      Support s = tight_set(processed, r);
      if (tight_rank(processed, s, d) != extreme_rank) continue;
      if (!seen.insert(s).second) continue;
      kept.push_back(r);
    }
    rays = std::move(kept);
  }
  return {lineality, rays};
}

}  // namespace

RationalCone dual_cone(const RationalCone& k) {
  const std::size_t d = k.ambient();
  if (d > kMaxConeRank)
    throw Error(ErrorCode::RankTooLarge, "ambient rank " + std::to_string(d) + " exceeds " +
                                             std::to_string(kMaxConeRank));
  auto [lineality, rays] = double_description(k.generators(), d);
  std::vector<IntVector> gens = rays;
  for (const auto& l : lineality) {
    gens.push_back(l);
    gens.push_back(-l);
  }
  return RationalCone(d, std::move(gens));
}

ConeMembership::ConeMembership(const RationalCone& cone) {
  inequalities_ = dual_cone(cone).generators();
  pointed_ = rank(inequalities_, cone.ambient()) == cone.ambient();
}

bool ConeMembership::contains(const IntVector& x) const {
  return std::all_of(inequalities_.begin(), inequalities_.end(),
                     [&](const IntVector& h) { return dot(h, x) >= 0; });
}

std::vector<IntVector> extreme_rays(const RationalCone& cone) {
  ConeMembership m(cone);
  if (!m.pointed()) throw Error(ErrorCode::NotStrictlyConvex, "cone contains a line");
  return dual_cone(RationalCone(cone.ambient(), m.inequalities())).generators();
}

std::vector<IntVector> relation_basis(const ToricMonoid& p) {
  if (p.generators.empty()) return {};
  IntMatrix a(p.rank, p.generators.size());
  for (std::size_t j = 0; j < p.generators.size(); ++j)
    for (std::size_t i = 0; i < p.rank; ++i) a(i, j) = p.generators[j][i];
  return integer_kernel(a);
}

namespace {

void for_each_box_point(std::size_t d, Int bound, const std::function<void(const IntVector&)>& f) {
  IntVector x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = -bound;
  while (true) {
    f(x);
    std::size_t i = 0;
    while (i < d && x[i] == bound) x[i++] = -bound;
    if (i == d) return;
    ++x[i];
  }
}

// Membership of x in the monoid generated by `gens`, inside a pointed monoid
// described by `contains`, using a positive grading to guarantee descent.
class GenerationSearch {
 public:
  GenerationSearch(const std::vector<IntVector>& gens,
                   const std::function<bool(const IntVector&)>& contains)
      : gens_(gens), contains_(contains) {}

  bool generated(const IntVector& x) {
    if (x.is_zero()) return true;
    if (auto it = memo_.find(x); it != memo_.end()) return it->second;
    bool ok = false;
    for (const auto& g : gens_) {
      IntVector y = x - g;
      if (contains_(y) && generated(y)) {
        ok = true;
        break;
      }
    }
    memo_.emplace(x, ok);
    return ok;
  }

 private:
  const std::vector<IntVector>& gens_;
  const std::function<bool(const IntVector&)>& contains_;
  std::map<IntVector, bool> memo_;
};

// Minimal generators of a pointed saturated monoid from its box points.
std::vector<IntVector> minimal_generators(std::vector<IntVector> points,
                                          const std::function<bool(const IntVector&)>& contains,
                                          const IntVector& grading) {
  std::erase_if(points, [](const IntVector& p) { return p.is_zero(); });
  std::sort(points.begin(), points.end(), [&](const IntVector& a, const IntVector& b) {
    Int da = dot(grading, a), db = dot(grading, b);
    return da != db ? da < db : a < b;
  });

  std::vector<IntVector> candidates;
  for (const auto& p : points) {
    bool reducible = std::any_of(candidates.begin(), candidates.end(), [&](const IntVector& g) {
      IntVector rest = p - g;
      return !rest.is_zero() && contains(rest);
    });
    if (!reducible) candidates.push_back(p);
  }

  GenerationSearch search(candidates, contains);
  for (const auto& p : points)
    if (!search.generated(p)) {
      std::ostringstream os;
      os << "box point " << p << " is not generated by the elements found in the box";
      throw Error(ErrorCode::BoundInsufficient, os.str());
    }

  // A candidate may still decompose through points outside the box.
  for (std::size_t i = 0; i < candidates.size();) {
    std::vector<IntVector> others = candidates;
    others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
    GenerationSearch s(others, contains);
    if (s.generated(candidates[i])) candidates = std::move(others);
    else ++i;
  }
  return candidates;
}

// An irreducible element is an extreme ray or lies in the half-open
// parallelepiped of d linearly independent rays, so each coordinate is below
// the sum of the d largest |entries| of that coordinate over the rays.
Int hilbert_box(const std::vector<IntVector>& rays, std::size_t ambient) {
  const std::size_t d = rank(rays, ambient);
  Int need = 0;
  for (std::size_t k = 0; k < ambient; ++k) {
    std::vector<Int> mags;
    for (const auto& r : rays) mags.push_back(r[k] < 0 ? checked_neg(r[k]) : r[k]);
    std::sort(mags.rbegin(), mags.rend());
    Int sum = 0;
    for (std::size_t i = 0; i < d && i < mags.size(); ++i) sum = checked_add(sum, mags[i]);
    need = std::max(need, sum);
  }
  return need;
}

void require_hilbert_box(const std::vector<IntVector>& rays, std::size_t ambient, Int bound) {
  const Int need = hilbert_box(rays, ambient);
  if (bound < need)
    throw Error(ErrorCode::BoundInsufficient, "bound " + std::to_string(bound) +
                                                  " may miss generators; the rays require " +
                                                  std::to_string(need));
}

IntVector sum_of(const std::vector<IntVector>& vs, std::size_t d) {
  IntVector s(d);
  for (const auto& v : vs) s = s + v;
  return s;
}

}  // namespace

ToricMonoid monoid_generators(const RationalCone& k, Int bound) {
  if (bound <= 0) throw Error(ErrorCode::InvalidInput, "bound must be positive");
  const std::size_t d = k.ambient();
  ConeMembership member(k);
  if (!member.pointed()) throw Error(ErrorCode::NotStrictlyConvex, "cone contains a line");
  require_hilbert_box(extreme_rays(k), d, bound);

  std::vector<IntVector> points;
  for_each_box_point(d, bound, [&](const IntVector& x) {
    if (member.contains(x)) points.push_back(x);
  });
  std::function<bool(const IntVector&)> contains = [&](const IntVector& x) {
    return member.contains(x);
  };
  ToricMonoid p;
  p.rank = d;
  p.generators = minimal_generators(std::move(points), contains, sum_of(member.inequalities(), d));
  p.cone = k;
  return p;
}

// --- local models -----------------------------------------------------------

Int support_psi(const std::vector<IntVector>& polytope, const IntVector& m) {
  if (polytope.empty()) throw Error(ErrorCode::InvalidSpec, "empty polytope");
  Int best = dot(polytope.front(), m);
  for (const auto& n : polytope) best = std::min(best, dot(n, m));
  return checked_neg(best);
}

bool is_elementary_simplex(const std::vector<IntVector>& vertices) {
  if (vertices.empty()) return false;
  const std::size_t r = vertices.front().size();
  std::vector<IntVector> edges;
  for (std::size_t j = 1; j < vertices.size(); ++j) edges.push_back(vertices[j] - vertices[0]);
  if (rank(edges, r) != edges.size()) return false;
  if (vertices.size() == 1) return true;

  // Lattice points of conv(V) are those p with (p, 1) in the cone over V × {1}.
  std::vector<IntVector> lifted;
  for (const auto& v : vertices) {
    std::vector<Int> x(v.begin(), v.end());
    x.push_back(1);
    lifted.emplace_back(std::move(x));
  }
  ConeMembership cone(RationalCone(r + 1, lifted));
  IntVector lo = vertices[0], hi = vertices[0];
  for (const auto& v : vertices)
    for (std::size_t i = 0; i < r; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  std::set<IntVector> verts(vertices.begin(), vertices.end());
  IntVector p = lo;
  while (true) {
    std::vector<Int> x(p.begin(), p.end());
    x.push_back(1);
    if (cone.contains(IntVector(std::move(x))) && !verts.count(p)) return false;
    std::size_t i = 0;
    while (i < r && p[i] == hi[i]) {
      p[i] = lo[i];
      ++i;
    }
    if (i == r) break;
    ++p[i];
  }
  return true;
}

namespace {

// Index of a vertex of `polytope` minimizing <·, ray> on every ray of the
// cone, if one exists (ψ is then linear on the cone).
std::optional<std::size_t> linear_vertex(const std::vector<IntVector>& polytope,
                                         const std::vector<IntVector>& cone_rays) {
  for (std::size_t v = 0; v < polytope.size(); ++v) {
    bool ok = std::all_of(cone_rays.begin(), cone_rays.end(), [&](const IntVector& r) {
      return dot(polytope[v], r) == -support_psi(polytope, r);
    });
    if (ok) return v;
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::string> check_local_model_spec(const LocalModelSpec& spec) {
  std::vector<std::string> problems;
  const std::size_t r = spec.mprime_rank;
  if (spec.polytopes.empty()) {
    problems.push_back("at least Δ_0 is required");
    return problems;
  }
  for (std::size_t i = 0; i < spec.polytopes.size(); ++i) {
    if (spec.polytopes[i].empty()) problems.push_back("Δ_" + std::to_string(i) + " is empty");
    for (const auto& v : spec.polytopes[i])
      if (v.size() != r) problems.push_back("Δ_" + std::to_string(i) + " vertex has wrong length");
  }
  for (const auto& cone : spec.fan)
    for (const auto& ray : cone)
      if (ray.size() != r || ray.is_zero()) problems.push_back("fan ray has wrong length or is zero");
  if (!problems.empty()) return problems;
  if (r + spec.polytopes.size() > kMaxConeRank) {
    problems.push_back("lattice rank exceeds " + std::to_string(kMaxConeRank));
    return problems;
  }

  if (r == 0) return problems;  // Σ = {0}; every polytope is a point.
  if (spec.fan.empty()) {
    problems.push_back("fan has no maximal cones");
    return problems;
  }

  // Completeness, sampled on the box [-2, 2]^r.
  std::vector<ConeMembership> cones;
  for (const auto& c : spec.fan) cones.emplace_back(RationalCone(r, c));
  bool complete = true;
  for_each_box_point(r, 2, [&](const IntVector& x) {
    if (std::none_of(cones.begin(), cones.end(), [&](const auto& c) { return c.contains(x); }))
      complete = false;
  });
  if (!complete) problems.push_back("fan is not complete");

  // ψ_0 strictly convex on Σ: one distinct vertex of Δ_0 per maximal cone.
  std::set<IntVector> used;
  for (std::size_t c = 0; c < spec.fan.size(); ++c) {
    auto v = linear_vertex(spec.polytopes[0], spec.fan[c]);
    if (!v) {
      problems.push_back("ψ_0 is not linear on maximal cone #" + std::to_string(c));
      continue;
    }
    if (!used.insert(spec.polytopes[0][*v]).second)
      problems.push_back("ψ_0 is not strictly convex across maximal cone #" + std::to_string(c));
  }
  for (std::size_t i = 1; i < spec.polytopes.size(); ++i) {
    for (std::size_t c = 0; c < spec.fan.size(); ++c)
      if (!linear_vertex(spec.polytopes[i], spec.fan[c]))
        problems.push_back("ψ_" + std::to_string(i) + " is not linear on maximal cone #" +
                           std::to_string(c));
    if (!is_elementary_simplex(spec.polytopes[i]))
      problems.push_back("Δ_" + std::to_string(i) + " is neither a point nor an elementary simplex");
  }
  return problems;
}

namespace {

IntVector lift(const IntVector& n, std::size_t slot, std::size_t q_plus_1) {
  std::vector<Int> x(n.begin(), n.end());
  for (std::size_t j = 0; j < q_plus_1; ++j) x.push_back(j == slot ? 1 : 0);
  return IntVector(std::move(x));
}

}  // namespace

LocalModel build_local_model(const LocalModelSpec& spec, Int bound) {
  if (bound <= 0) throw Error(ErrorCode::InvalidInput, "bound must be positive");
  if (auto problems = check_local_model_spec(spec); !problems.empty()) {
    std::string msg;
    for (const auto& p : problems) msg += (msg.empty() ? "" : "; ") + p;
    throw Error(ErrorCode::InvalidSpec, msg);
  }
  const std::size_t r = spec.mprime_rank;
  const std::size_t qp1 = spec.polytopes.size();
  const std::size_t d = r + qp1;

  std::vector<IntVector> kgens;
  for (std::size_t i = 0; i < qp1; ++i)
    for (const auto& n : spec.polytopes[i]) kgens.push_back(lift(n, i, qp1));
  RationalCone k(d, kgens);
  if (rank(k.generators(), d) != d)
    throw Error(ErrorCode::NotStrictlyConvex, "K is not full-dimensional, so P contains units");

  std::function<bool(const IntVector&)> in_p = [&](const IntVector& x) {
    IntVector m(std::vector<Int>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(r)));
    for (std::size_t i = 0; i < qp1; ++i)
      if (x[r + i] < support_psi(spec.polytopes[i], m)) return false;
    return true;
  };

  RationalCone p_cone = dual_cone(k);
  require_hilbert_box(p_cone.generators(), d, bound);
  ConeMembership p_member(p_cone);

  std::vector<IntVector> points;
  bool consistent = true;
  for_each_box_point(d, bound, [&](const IntVector& x) {
    bool direct = in_p(x);
    if (direct) points.push_back(x);
    if (direct != p_member.contains(x)) consistent = false;
  });

  LocalModel model;
  model.monoid.rank = d;
  model.monoid.generators = minimal_generators(std::move(points), in_p, sum_of(kgens, d));
  model.monoid.cone = p_cone;
  model.k = std::move(k);
  model.consistent = consistent;
  model.e0_index = r;
  return model;
}

LocalModelSpec focus_focus_spec() {
  LocalModelSpec s;
  s.mprime_rank = 1;
  s.fan = {{IntVector{-1}}, {IntVector{1}}};
  s.polytopes = {{IntVector{0}, IntVector{1}}, {IntVector{0}, IntVector{1}}};
  return s;
}

MonodromyCone monodromy_cone(const LocalModelSpec& spec) {
  const std::size_t r = spec.mprime_rank;
  const std::size_t qp1 = spec.polytopes.size();
  if (qp1 == 0) throw Error(ErrorCode::InvalidSpec, "at least Δ_0 is required");
  for (std::size_t i = 1; i < qp1; ++i) {
    if (spec.polytopes[i].empty())
      throw Error(ErrorCode::InvalidSpec, "Δ_" + std::to_string(i) + " is empty");
    for (const auto& v : spec.polytopes[i])
      if (v.size() != r)
        throw Error(ErrorCode::InvalidSpec, "Δ_" + std::to_string(i) + " vertex has wrong length");
  }

  const std::size_t d = r + qp1;
  std::vector<IntVector> lifted;
  for (std::size_t i = 1; i < qp1; ++i)
    for (const auto& n : spec.polytopes[i]) lifted.push_back(lift(n, i, qp1));
  std::sort(lifted.begin(), lifted.end());
  lifted.erase(std::unique(lifted.begin(), lifted.end()), lifted.end());

  MonodromyCone out;
  out.kbar = RationalCone(d, lifted);
  if (lifted.size() <= 1) return out;
  std::vector<IntVector> edges;
  for (std::size_t j = 1; j < lifted.size(); ++j) edges.push_back(lifted[j] - lifted[0]);
  out.is_simplex = rank(edges, d) == edges.size();
  out.is_standard = out.is_simplex && extends_to_lattice_basis(edges, d);
  return out;
}

// --- faces ------------------------------------------------------------------

namespace {

struct FaceData {
  std::vector<IntVector> facets_through;  // inequalities vanishing on F
  std::vector<IntVector> generators_in_face;
};

RationalCone spanned_cone(const ToricMonoid& p) {
  if (p.cone) return *p.cone;
  return RationalCone(p.rank, p.generators);
}

FaceData face_data(const ToricMonoid& p, const std::vector<IntVector>& face_generators) {
  ConeMembership member(spanned_cone(p));
  FaceData fd;
  for (const auto& h : member.inequalities())
    if (std::all_of(face_generators.begin(), face_generators.end(),
                    [&](const IntVector& f) { return dot(h, f) == 0; }))
      fd.facets_through.push_back(h);
  IntVector hsum = sum_of(fd.facets_through, p.rank);
  for (const auto& g : p.generators)
    if (dot(hsum, g) == 0) fd.generators_in_face.push_back(g);
  return fd;
}

}  // namespace

std::vector<IntVector> minimal_face(const ToricMonoid& p, const IntVector& v) {
  if (v.size() != p.rank) throw Error(ErrorCode::DimensionMismatch, "minimal_face: vector length");
  return face_data(p, {v}).generators_in_face;
}

GhostRank ghost_rank(const ToricMonoid& p, const std::vector<IntVector>& face_generators) {
  for (const auto& f : face_generators)
    if (f.size() != p.rank) throw Error(ErrorCode::DimensionMismatch, "face generator length");

  const RationalCone cone = spanned_cone(p);
  ConeMembership member(cone);
  for (const auto& f : face_generators)
    if (!member.contains(f)) {
      std::ostringstream os;
      os << f << " is not in P";
      throw Error(ErrorCode::NotAFace, os.str());
    }

  // F is a face iff it is the whole intersection of P with the smallest face
  // of the cone containing it; checked on the generators of P.
  FaceData fd = face_data(p, face_generators);
  std::function<bool(const IntVector&)> contains = [&](const IntVector& x) {
    return member.contains(x);
  };
  GenerationSearch search(face_generators, contains);
  for (const auto& g : fd.generators_in_face)
    if (!search.generated(g)) {
      std::ostringstream os;
      os << "generator " << g << " lies in the smallest face containing F but not in F";
      throw Error(ErrorCode::NotAFace, os.str());
    }

  GhostRank out;
  out.rank = rank(p.generators, p.rank) - rank(face_generators, p.rank);
  if (out.rank >= 64) throw Error(ErrorCode::Overflow, "ghost rank too large");
  out.real_fiber = std::uint64_t{1} << out.rank;
  return out;
}

FaceQuotient quotient_by_face(const ToricMonoid& p, const std::vector<IntVector>& face_generators) {
  FaceData fd = face_data(p, face_generators);
  const std::size_t k = fd.facets_through.size();

  std::set<IntVector> images;
  for (const auto& g : p.generators) {
    IntVector y(k);
    for (std::size_t j = 0; j < k; ++j) y[j] = dot(fd.facets_through[j], g);
    if (!y.is_zero()) images.insert(y);
  }
  std::vector<IntVector> gens(images.begin(), images.end());
  std::function<bool(const IntVector&)> nonneg = [](const IntVector& x) {
    return std::all_of(x.begin(), x.end(), [](Int v) { return v >= 0; });
  };
  for (std::size_t i = 0; i < gens.size();) {
    std::vector<IntVector> others = gens;
    others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
    GenerationSearch s(others, nonneg);
    if (s.generated(gens[i])) gens = std::move(others);
    else ++i;
  }
  FaceQuotient out;
  out.free = rank(gens, k) == gens.size();
  out.generators = std::move(gens);
  return out;
}

}  // namespace realkn
