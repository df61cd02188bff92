#include "realkn/real_cover.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace realkn {

std::string to_string(FiberSign mu) { return mu == FiberSign::Positive ? "+1" : "-1"; }

FiberSign parse_fiber_sign(const std::string& s) {
  if (s == "+1" || s == "1") return FiberSign::Positive;
  if (s == "-1") return FiberSign::Negative;
  throw Error(ErrorCode::InvalidInput, "fiber sign must be +1 or -1, got '" + s + "'");
}

std::vector<std::size_t> cycle_type(const Permutation& p, const std::vector<std::uint32_t>& domain) {
  std::vector<bool> seen(p.size(), false);
  std::vector<std::size_t> out;
  for (auto start : domain) {
    if (seen[start]) continue;
    std::size_t len = 0;
    for (auto x = start; !seen[x]; x = p[x]) {
      seen[x] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

RealCoverAction::RealCoverAction(std::size_t rank, FiberSign mu, std::vector<std::string> generators,
                                 std::vector<Permutation> permutations)
    : rank_(rank), mu_(mu), generators_(std::move(generators)), permutations_(std::move(permutations)) {
  if (rank_ > kMaxFiberRank) throw Error(ErrorCode::RankMismatch, "fiber rank too large");
  if (generators_.size() != permutations_.size())
    throw Error(ErrorCode::InvalidInput, "one permutation per generator required");
  const std::size_t n = point_count();
  for (const auto& p : permutations_) {
    if (p.size() != n) throw Error(ErrorCode::InvalidInput, "permutation of the wrong degree");
    std::vector<bool> hit(n, false);
    for (auto x : p) {
      if (x >= n || hit[x]) throw Error(ErrorCode::InvalidInput, "map is not a bijection");
      hit[x] = true;
    }
  }
}

Permutation fiber_permutation(const AffineElement& e, FiberSign mu) {
  const std::size_t n = e.rank();
  if (n > kMaxFiberRank) throw Error(ErrorCode::RankMismatch, "fiber rank too large");
  const GF2Matrix t = GF2Matrix::reduce(e.linear);
  GF2Vector shift = e.sign;
  if (mu == FiberSign::Negative) shift += GF2Vector::reduce(e.translation);

  Permutation p(std::size_t{1} << n);
  for (std::size_t idx = 0; idx < p.size(); ++idx) {
    GF2Vector phi = GF2Vector::from_index(idx, n);
    p[idx] = static_cast<std::uint32_t>((vec_mat(phi, t) + shift).to_index());
  }
  return p;
}

RealCoverAction build_action(const AffineMonodromyRep& rep, FiberSign mu) {
  std::vector<Permutation> perms;
  perms.reserve(rep.generators().size());
  for (const auto& g : rep.generators()) perms.push_back(fiber_permutation(g, mu));
  return RealCoverAction(rep.rank(), mu, rep.presentation().generators(), std::move(perms));
}

std::vector<std::vector<std::uint32_t>> orbits(const RealCoverAction& action) {
  const std::size_t n = action.point_count();
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  std::function<std::uint32_t(std::uint32_t)> root = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& p : action.permutations())
    for (std::uint32_t x = 0; x < n; ++x) {
      auto a = root(x), b = root(p[x]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::size_t> slot(n, SIZE_MAX);
  for (std::uint32_t x = 0; x < n; ++x) {
    auto r = root(x);
    if (slot[r] == SIZE_MAX) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(x);
  }
  return out;
}

RealCoverAction theta_shift(const AffineMonodromyRep& rep, FiberSign mu, const GF2Vector& phi) {
  if (phi.size() != rep.rank()) throw Error(ErrorCode::RankMismatch, "φ has the wrong length");
  auto shift = coboundary(rep, phi);
  std::vector<GF2Vector> theta;
  for (std::size_t i = 0; i < rep.generators().size(); ++i)
    theta.push_back(rep.generator(i).sign + shift[i]);
  return build_action(rep.with_theta(theta), mu);
}

bool BranchCycles::ramified() const {
  return std::any_of(cycles.begin(), cycles.end(), [](std::size_t c) { return c > 1; });
}

ComponentReport classify(const AffineMonodromyRep& rep, FiberSign mu,
                         const std::vector<std::string>& branch_points, Int base_euler) {
  std::vector<std::size_t> branch_index;
  for (const auto& name : branch_points) branch_index.push_back(rep.presentation().index_of(name));

  const RealCoverAction action = build_action(rep, mu);
  ComponentReport report;
  report.rank = rep.rank();
  report.fiber = mu;
  report.base_euler = base_euler;

  const bool surface_over_sphere = rep.rank() == 2 && base_euler == 2;
  for (auto& orbit : orbits(action)) {
    Component c;
    c.degree = orbit.size();
    Int chi = checked_mul(static_cast<Int>(c.degree), base_euler);
    for (std::size_t b = 0; b < branch_index.size(); ++b) {
      BranchCycles bc{branch_points[b], cycle_type(action.permutation(branch_index[b]), orbit)};
      for (auto len : bc.cycles) chi = checked_sub(chi, static_cast<Int>(len) - 1);
      c.branch_points.push_back(std::move(bc));
    }
    c.euler_characteristic = chi;
    if (surface_over_sphere && chi % 2 == 0 && chi <= 2) {
      c.genus = (2 - chi) / 2;
      report.orientability_assumed = true;
    }
    c.points = std::move(orbit);
    report.components.push_back(std::move(c));
  }
  return report;
}

}  // namespace realkn
