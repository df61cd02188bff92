#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "realkn/toric_monoid.hpp"
#include "support.hpp"

using namespace realkn;
using testing_support::error_code_of;
using testing_support::uniform;

namespace {

using Vecs = std::vector<IntVector>;

Vecs sorted(Vecs v) {
  std::sort(v.begin(), v.end());
  return v;
}

Int det2(const IntVector& a, const IntVector& b) { return a[0] * b[1] - a[1] * b[0]; }

Int det3(const IntVector& a, const IntVector& b, const IntVector& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

Int det_cols(const Vecs& cols) { return cols.size() == 2 ? det2(cols[0], cols[1]) : det3(cols[0], cols[1], cols[2]); }

// Oracle for full-dimensional cones in rank 2 or 3: p lies in the cone iff it
// is a nonnegative combination of some basis among the generators (Cramer).
bool caratheodory_contains(const Vecs& gens, const IntVector& p) {
  const std::size_t d = p.size();
  const std::size_t m = gens.size();
  std::vector<std::size_t> idx(d);
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t from) -> bool {
    if (k == d) {
      Vecs cols;
      for (auto i : idx) cols.push_back(gens[i]);
      const Int det = det_cols(cols);
      if (det == 0) return false;
      for (std::size_t i = 0; i < d; ++i) {
        Vecs repl = cols;
        repl[i] = p;
        if (det_cols(repl) * (det > 0 ? 1 : -1) < 0) return false;
      }
      return true;
    }
    for (std::size_t i = from; i < m; ++i) {
      idx[k] = i;
      if (rec(k + 1, i + 1)) return true;
    }
    return false;
  };
  return p.is_zero() || rec(0, 0);
}

void for_box(std::size_t d, Int b, const std::function<void(const IntVector&)>& f) {
  IntVector x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = -b;
  while (true) {
    f(x);
    std::size_t i = 0;
    while (i < d && x[i] == b) x[i++] = -b;
    if (i == d) return;
    ++x[i];
  }
}

// Oracle: nonzero lattice points of the box that are not a sum of two
// nonzero lattice points of the cone lying in the box.
Vecs naive_irreducibles(const Vecs& gens, std::size_t d, Int b) {
  Vecs pts;
  for_box(d, b, [&](const IntVector& x) {
    if (!x.is_zero() && caratheodory_contains(gens, x)) pts.push_back(x);
  });
  Vecs out;
  for (const auto& p : pts) {
    bool reducible = std::any_of(pts.begin(), pts.end(), [&](const IntVector& a) {
      return a != p && caratheodory_contains(gens, p - a);
    });
    if (!reducible) out.push_back(p);
  }
  return sorted(out);
}

// P straight from a_i ≥ ψ_i(m).
bool in_p(const LocalModelSpec& s, const IntVector& x) {
  const std::size_t r = s.mprime_rank;
  IntVector m(std::vector<Int>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(r)));
  for (std::size_t i = 0; i < s.polytopes.size(); ++i) {
    Int mn = dot(s.polytopes[i][0], m);
    for (const auto& n : s.polytopes[i]) mn = std::min(mn, dot(n, m));
    if (x[r + i] < -mn) return false;
  }
  return true;
}

// Is x a nonnegative integer combination of gens, staying inside `member`.
bool generated_by(const Vecs& gens, const IntVector& x, const std::function<bool(const IntVector&)>& member,
                  std::map<IntVector, bool>& memo) {
  if (x.is_zero()) return true;
  if (auto it = memo.find(x); it != memo.end()) return it->second;
  bool ok = false;
  for (const auto& g : gens)
    if (member(x - g) && generated_by(gens, x - g, member, memo)) {
      ok = true;
      break;
    }
  return memo[x] = ok;
}

IntVector e(std::size_t d, std::size_t i) {
  IntVector v(d);
  v[i] = 1;
  return v;
}

}  // namespace

TEST_CASE("dual_cone examples") {
  CHECK(dual_cone(RationalCone(2, {{1, 0}, {0, 1}})).generators() == Vecs{{0, 1}, {1, 0}});
  CHECK(dual_cone(RationalCone(2, {{1, 0}, {1, 2}})).generators() == sorted({{0, 1}, {2, -1}}));
  CHECK(dual_cone(RationalCone(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).generators() ==
        sorted({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  // A ray's dual is a half-plane: one ray plus a line.
  CHECK(dual_cone(RationalCone(2, {{1, 0}})).generators() == sorted({{1, 0}, {0, 1}, {0, -1}}));
  CHECK(error_code_of([] { dual_cone(RationalCone(5, {{1, 0, 0, 0, 0}})); }) == ErrorCode::RankTooLarge);
  CHECK_THROWS_AS(RationalCone(2, {{0, 0}}), Error);
  CHECK(RationalCone(2, {{2, 4}, {1, 2}}).generators() == Vecs{{1, 2}});
}

TEST_CASE("dual cone agrees with the inequality oracle") {
  std::mt19937 rng(51);
  int tested = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = trial % 2 ? 2 : 3;
    Vecs gens;
    const auto count = static_cast<std::size_t>(uniform(rng, Int(d), Int(d) + 2));
    for (std::size_t k = 0; k < count; ++k) {
      IntVector g = testing_support::random_vector(rng, d, -3, 3);
      g[0] = uniform(rng, 1, 3);
      gens.push_back(g);
    }
    if (rank(gens, d) != d) continue;
    ++tested;
    RationalCone k(d, gens);
    RationalCone dual = dual_cone(k);
    for (const auto& h : dual.generators())
      for (const auto& g : gens) CHECK(dot(h, g) >= 0);
    // x ∈ K^∨ ⟺ x is in the cone spanned by the computed generators.
    for_box(d, 3, [&](const IntVector& x) {
      bool want = std::all_of(gens.begin(), gens.end(), [&](const IntVector& g) { return dot(x, g) >= 0; });
      CHECK(want == caratheodory_contains(dual.generators(), x));
    });
    // Involution: the double dual is spanned by the extreme rays of K.
    RationalCone dd = dual_cone(dual);
    for (const auto& r : dd.generators())
      CHECK(std::find(k.generators().begin(), k.generators().end(), r) != k.generators().end());
    for (const auto& g : gens) CHECK(caratheodory_contains(dd.generators(), g));
    CHECK(dd.generators() == sorted(extreme_rays(k)));
    CHECK(dual_cone(dual_cone(dd)) == dd);
  }
  CHECK(tested > 100);
}

TEST_CASE("membership and extreme rays") {
  ConeMembership m(RationalCone(2, {{1, 0}, {1, 2}}));
  CHECK(m.pointed());
  CHECK(m.contains(IntVector{1, 1}));
  CHECK_FALSE(m.contains(IntVector{0, 1}));
  CHECK(sorted(extreme_rays(RationalCone(2, {{1, 0}, {1, 1}, {1, 2}}))) == sorted({{1, 0}, {1, 2}}));
  CHECK(error_code_of([] { extreme_rays(RationalCone(2, {{1, 0}, {-1, 0}, {0, 1}})); }) ==
        ErrorCode::NotStrictlyConvex);
}

TEST_CASE("monoid_generators examples") {
  CHECK(sorted(monoid_generators(RationalCone(2, {{1, 0}, {0, 1}}), 3).generators) == sorted({{1, 0}, {0, 1}}));
  CHECK(sorted(monoid_generators(RationalCone(2, {{0, 1}, {2, -1}}), 4).generators) ==
        sorted({{0, 1}, {1, 0}, {2, -1}}));
  CHECK(sorted(monoid_generators(RationalCone(2, {{1, 0}, {1, 1}}), 3).generators) == sorted({{1, 0}, {1, 1}}));
  CHECK(error_code_of([] { monoid_generators(RationalCone(2, {{1, 0}, {1, 5}}), 2); }) ==
        ErrorCode::BoundInsufficient);
  CHECK(error_code_of([] { monoid_generators(RationalCone(2, {{1, 0}, {-1, 0}, {0, 1}}), 3); }) ==
        ErrorCode::NotStrictlyConvex);
  // The A_{k} cone (1,0),(1,k+1) needs every (1,j).
  auto ak = monoid_generators(RationalCone(2, {{1, 0}, {1, 4}}), 5);
  CHECK(sorted(ak.generators) == sorted({{1, 0}, {1, 1}, {1, 2}, {1, 3}, {1, 4}}));
}

TEST_CASE("monoid_generators agrees with the irreducible-element oracle") {
  std::mt19937 rng(52);
  int tested = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t d = trial % 4 == 0 ? 3 : 2;
    const Int spread = d == 3 ? 1 : 3;
    Vecs gens;
    for (std::size_t k = 0; k < d + 1; ++k) {
      IntVector g = testing_support::random_vector(rng, d, -spread, spread);
      g[0] = uniform(rng, 1, spread);
      gens.push_back(g);
    }
    if (rank(gens, d) != d) continue;
    const Int bound = d == 3 ? 3 : 6;
    ToricMonoid p = monoid_generators(RationalCone(d, gens), bound);
    ++tested;
    CHECK(sorted(p.generators) == naive_irreducibles(gens, d, bound));
    // Minimality: no generator is generated by the others.
    auto member = [&](const IntVector& x) { return caratheodory_contains(gens, x); };
    for (std::size_t i = 0; i < p.generators.size(); ++i) {
      Vecs others = p.generators;
      others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
      std::map<IntVector, bool> memo;
      CHECK_FALSE(generated_by(others, p.generators[i], member, memo));
    }
  }
  CHECK(tested > 40);
}

TEST_CASE("local model with point polytopes is free") {
  LocalModelSpec s;
  s.mprime_rank = 0;
  s.polytopes = {{IntVector(0)}, {IntVector(0)}, {IntVector(0)}};
  CHECK(check_local_model_spec(s).empty());
  LocalModel m = build_local_model(s, 2);
  CHECK(sorted(m.monoid.generators) == sorted({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  CHECK(m.consistent);
  CHECK(relation_basis(m.monoid).empty());
}

TEST_CASE("focus-focus local model") {
  LocalModelSpec s = focus_focus_spec();
  CHECK(check_local_model_spec(s).empty());
  LocalModel m = build_local_model(s, 4);
  const Vecs expected{{1, 0, 0}, {-1, 1, 1}, {0, 1, 0}, {0, 0, 1}};
  CHECK(sorted(m.monoid.generators) == sorted(expected));
  CHECK(m.consistent);
  CHECK(m.e0_index == 1);
  CHECK(sorted(m.k.generators()) == sorted({{0, 1, 0}, {1, 1, 0}, {0, 0, 1}, {1, 0, 1}}));

  ToricMonoid ordered{3, expected, m.monoid.cone};
  auto rel = relation_basis(ordered);
  REQUIRE(rel.size() == 1);
  IntVector want{1, 1, -1, -1};
  CHECK((rel[0] == want || rel[0] == -want));

  // Pointwise identity P = K^∨ ∩ M and generation of P, on the box.
  auto member = [&](const IntVector& x) { return in_p(s, x); };
  std::map<IntVector, bool> memo;
  for_box(3, 4, [&](const IntVector& x) {
    const bool dual = std::all_of(m.k.generators().begin(), m.k.generators().end(),
                                  [&](const IntVector& k) { return dot(x, k) >= 0; });
    CHECK(in_p(s, x) == dual);
    if (in_p(s, x)) CHECK(generated_by(m.monoid.generators, x, member, memo));
  });
}

TEST_CASE("local model data checks") {
  LocalModelSpec bad = focus_focus_spec();
  bad.polytopes[0] = {IntVector{0}};  // ψ_0 no longer strictly convex
  CHECK_FALSE(check_local_model_spec(bad).empty());
  CHECK(error_code_of([&] { build_local_model(bad, 4); }) == ErrorCode::InvalidSpec);

  LocalModelSpec incomplete = focus_focus_spec();
  incomplete.fan = {{IntVector{1}}};
  incomplete.polytopes[0] = {IntVector{0}};
  CHECK_FALSE(check_local_model_spec(incomplete).empty());

  LocalModelSpec fat = focus_focus_spec();
  fat.polytopes[1] = {IntVector{0}, IntVector{2}};
  CHECK_FALSE(check_local_model_spec(fat).empty());

  CHECK(is_elementary_simplex({IntVector{3}}));
  CHECK(is_elementary_simplex({IntVector{0}, IntVector{1}}));
  CHECK_FALSE(is_elementary_simplex({IntVector{0}, IntVector{2}}));
  CHECK(is_elementary_simplex({{0, 0}, {1, 0}, {0, 1}}));
  CHECK_FALSE(is_elementary_simplex({{0, 0}, {2, 0}, {0, 2}}));
  CHECK_FALSE(is_elementary_simplex({{0, 0}, {1, 0}, {2, 0}}));
  // Reeve tetrahedron: no extra lattice points, volume 3.
  CHECK(is_elementary_simplex({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 3}}));

  CHECK(support_psi({IntVector{0}, IntVector{1}}, IntVector{-2}) == 2);
  CHECK(support_psi({IntVector{0}, IntVector{1}}, IntVector{2}) == 0);
}

TEST_CASE("monodromy cone") {
  LocalModelSpec s = focus_focus_spec();
  MonodromyCone unit = monodromy_cone(s);
  CHECK(unit.is_standard);
  CHECK(sorted(unit.kbar.generators()) == sorted({{0, 0, 1}, {1, 0, 1}}));

  s.polytopes[1] = {IntVector{0}, IntVector{2}};
  MonodromyCone wide = monodromy_cone(s);
  CHECK(wide.is_simplex);
  CHECK_FALSE(wide.is_standard);

  LocalModelSpec q0;
  q0.mprime_rank = 1;
  q0.fan = {{IntVector{-1}}, {IntVector{1}}};
  q0.polytopes = {{IntVector{0}, IntVector{1}}};
  MonodromyCone empty = monodromy_cone(q0);
  CHECK(empty.kbar.generators().empty());
  CHECK(empty.is_standard);

  LocalModelSpec reeve;
  reeve.mprime_rank = 3;
  reeve.polytopes = {{{0, 0, 0}}, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 3}}};
  MonodromyCone r = monodromy_cone(reeve);
  CHECK(r.is_simplex);
  CHECK_FALSE(r.is_standard);

  LocalModelSpec shape = focus_focus_spec();
  shape.polytopes[1] = {IntVector{0, 0}};
  CHECK(error_code_of([&] { monodromy_cone(shape); }) == ErrorCode::InvalidSpec);
}

TEST_CASE("ghost rank and faces") {
  ToricMonoid n1{1, {{1}}, RationalCone(1, {{1}})};
  GhostRank vertex = ghost_rank(n1, {});
  CHECK(vertex.rank == 1);
  CHECK(vertex.real_fiber == 2);
  GhostRank generic = ghost_rank(n1, {{1}});
  CHECK(generic.rank == 0);
  CHECK(generic.real_fiber == 1);

  ToricMonoid n2{2, {{1, 0}, {0, 1}}, std::nullopt};
  CHECK(ghost_rank(n2, {{1, 0}}).rank == 1);
  CHECK(error_code_of([&] { ghost_rank(n2, {{1, 1}}); }) == ErrorCode::NotAFace);
  CHECK(error_code_of([&] { ghost_rank(n2, {{-1, 0}}); }) == ErrorCode::NotAFace);
  CHECK(sorted(minimal_face(n2, {1, 1})) == sorted({{1, 0}, {0, 1}}));
  CHECK(minimal_face(n2, {0, 3}) == Vecs{{0, 1}});
  CHECK(minimal_face(n2, {0, 0}).empty());

  LocalModel ff = build_local_model(focus_focus_spec(), 4);
  Vecs face = minimal_face(ff.monoid, e(3, ff.e0_index));
  CHECK(face == Vecs{{0, 1, 0}});
  GhostRank g = ghost_rank(ff.monoid, face);
  CHECK(g.rank == 2);
  CHECK(g.real_fiber == 4);
  FaceQuotient q = quotient_by_face(ff.monoid, face);
  CHECK(q.free);
  CHECK(q.generators.size() == 2);

  // Adjacent generators span edges; the diagonal pairs of the square do not.
  CHECK(ghost_rank(ff.monoid, {{1, 0, 0}, {0, 1, 0}}).rank == 1);
  CHECK(ghost_rank(ff.monoid, {{1, 0, 0}, {0, 0, 1}}).rank == 1);
  CHECK(error_code_of([&] { ghost_rank(ff.monoid, {{0, 1, 0}, {0, 0, 1}}); }) == ErrorCode::NotAFace);
  CHECK(error_code_of([&] { ghost_rank(ff.monoid, {{1, 0, 0}, {-1, 1, 1}}); }) == ErrorCode::NotAFace);

  // The A_1 cone modulo its vertex is not free.
  ToricMonoid a1 = monoid_generators(RationalCone(2, {{0, 1}, {2, -1}}), 4);
  CHECK_FALSE(quotient_by_face(a1, {}).free);
  CHECK(quotient_by_face(a1, {{0, 1}}).free);
}

TEST_CASE("standard monodromy cone implies free quotients") {
  std::mt19937 rng(53);
  int standard = 0, nonstandard = 0;
  for (int trial = 0; trial < 60; ++trial) {
    LocalModelSpec s;
    s.mprime_rank = 1;
    s.fan = {{IntVector{-1}}, {IntVector{1}}};
    const Int a = uniform(rng, -1, 0);
    s.polytopes.push_back({IntVector{a}, IntVector{a + uniform(rng, 1, 2)}});
    const auto q = static_cast<std::size_t>(uniform(rng, 1, 2));
    for (std::size_t i = 0; i < q; ++i) {
      const Int c = uniform(rng, -1, 1);
      switch (uniform(rng, 0, 2)) {
        case 0: s.polytopes.push_back({IntVector{c}}); break;
        case 1: s.polytopes.push_back({IntVector{c}, IntVector{c + 1}}); break;
        default: s.polytopes.push_back({IntVector{c}, IntVector{c + 2}}); break;
      }
    }
    MonodromyCone kbar = monodromy_cone(s);
    if (!kbar.is_standard) {
      ++nonstandard;
      continue;
    }
    if (!check_local_model_spec(s).empty()) continue;
    LocalModel m = build_local_model(s, 6);
    CHECK(m.consistent);
    Vecs face = minimal_face(m.monoid, e(m.monoid.rank, m.e0_index));
    FaceQuotient quotient = quotient_by_face(m.monoid, face);
    CHECK(quotient.free);
    CHECK(ghost_rank(m.monoid, face).rank == quotient.generators.size());
    ++standard;
  }
  CHECK(standard > 10);
  CHECK(nonstandard > 5);
}
