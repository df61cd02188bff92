#include "realkn/monodromy.hpp"

#include <algorithm>
#include <sstream>

namespace realkn {

Word inverse(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (auto& l : r) l.exponent = -l.exponent;
  return r;
}

Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

// --- Presentation -----------------------------------------------------------

Presentation::Presentation(std::size_t rank, std::vector<std::string> generators,
                           std::vector<Word> relations, bool partial)
    : rank_(rank),
      generators_(std::move(generators)),
      relations_(std::move(relations)),
      partial_(partial) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].empty()) throw Error(ErrorCode::InvalidInput, "empty generator name");
    for (std::size_t j = 0; j < i; ++j)
      if (generators_[i] == generators_[j])
        throw Error(ErrorCode::InvalidInput, "duplicate generator name '" + generators_[i] + "'");
  }
  for (const auto& rel : relations_)
    for (const auto& l : rel) {
      if (l.generator >= generators_.size())
        throw Error(ErrorCode::UnknownGenerator,
                    "relation refers to generator #" + std::to_string(l.generator));
      if (l.exponent != 1 && l.exponent != -1)
        throw Error(ErrorCode::InvalidInput, "exponents must be +1 or -1");
    }
}

std::optional<std::size_t> Presentation::find(const std::string& name) const {
  auto it = std::find(generators_.begin(), generators_.end(), name);
  if (it == generators_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - generators_.begin());
}

std::size_t Presentation::index_of(const std::string& name) const {
  auto i = find(name);
  if (!i) throw Error(ErrorCode::UnknownGenerator, "'" + name + "'");
  return *i;
}

Word Presentation::parse_word(const std::vector<std::string>& tokens) const {
  Word w;
  for (const auto& tok : tokens) {
    std::string name = tok;
    int exponent = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      name = tok.substr(0, caret);
      std::string e = tok.substr(caret + 1);
      if (e == "-1") {
        exponent = -1;
      } else if (e != "1" && e != "+1") {
        throw Error(ErrorCode::InvalidInput, "bad exponent in '" + tok + "'");
      }
    }
    w.push_back({index_of(name), exponent});
  }
  return w;
}

std::vector<std::string> Presentation::format_word(const Word& w) const {
  std::vector<std::string> out;
  for (const auto& l : w) out.push_back(generators_.at(l.generator) + (l.exponent < 0 ? "^-1" : ""));
  return out;
}

Presentation sphere_presentation(std::size_t branch_count, std::size_t rank) {
  std::vector<std::string> names;
  Word relation;
  for (std::size_t i = 0; i < branch_count; ++i) {
    names.push_back("g" + std::to_string(i + 1));
    relation.push_back({i, 1});
  }
  std::vector<Word> relations;
  if (branch_count > 0) relations.push_back(std::move(relation));
  return Presentation(rank, std::move(names), std::move(relations));
}

// --- AffineElement ----------------------------------------------------------

AffineElement AffineElement::identity(std::size_t n) {
  return {IntMatrix::identity(n), IntVector(n), GF2Vector(n)};
}

bool AffineElement::is_identity() const {
  return linear == IntMatrix::identity(rank()) && translation.is_zero() && sign.is_zero();
}

AffineElement then(const AffineElement& a, const AffineElement& b) {
  if (a.rank() != b.rank()) throw Error(ErrorCode::RankMismatch, "composing elements of different rank");
  const GF2Matrix a_mod2 = GF2Matrix::reduce(a.linear);
  return {mat_mul(b.linear, a.linear), vec_mat(b.translation, a.linear) + a.translation,
          vec_mat(b.sign, a_mod2) + a.sign};
}

AffineElement inverse(const AffineElement& e) {
  IntMatrix inv = unimodular_inverse(e.linear);
  return {inv, -vec_mat(e.translation, inv), vec_mat(e.sign, GF2Matrix::reduce(inv))};
}

// --- AffineMonodromyRep -----------------------------------------------------

AffineMonodromyRep::AffineMonodromyRep(Presentation presentation,
                                       std::vector<AffineElement> generators)
    : presentation_(std::move(presentation)), generators_(std::move(generators)) {
  if (generators_.size() != presentation_.generator_count())
    throw Error(ErrorCode::RankMismatch, std::to_string(generators_.size()) +
                                             " generator triples for " +
                                             std::to_string(presentation_.generator_count()) +
                                             " generators");
  const std::size_t n = presentation_.rank();
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& g = generators_[i];
    if (g.linear.rows() != n || g.linear.cols() != n || g.translation.size() != n ||
        g.sign.size() != n)
      throw Error(ErrorCode::RankMismatch,
                  "generator '" + presentation_.generators()[i] + "' does not have rank " +
                      std::to_string(n));
  }
}

AffineMonodromyRep AffineMonodromyRep::with_theta(const std::vector<GF2Vector>& theta) const {
  if (theta.size() != generators_.size())
    throw Error(ErrorCode::RankMismatch, "θ assignment has wrong number of generators");
  auto gens = generators_;
  for (std::size_t i = 0; i < gens.size(); ++i) gens[i].sign = theta[i];
  return AffineMonodromyRep(presentation_, std::move(gens));
}

IntMatrix focus_focus_shear(const IntVector& direction, const IntVector& conormal) {
  if (direction.size() != conormal.size())
    throw Error(ErrorCode::RankMismatch, "direction and conormal differ in length");
  if (!is_primitive(direction)) throw Error(ErrorCode::NotPrimitive, "invariant direction");
  if (!is_primitive(conormal)) throw Error(ErrorCode::NotPrimitive, "conormal");
  if (dot(direction, conormal) != 0)
    throw Error(ErrorCode::NotOrthogonal, "<conormal, direction> must vanish");
  const std::size_t n = direction.size();
  IntMatrix t = IntMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t(i, j) = checked_add(t(i, j), checked_mul(direction[i], conormal[j]));
  return t;
}

AffineElement compose(const AffineMonodromyRep& rep, const Word& word) {
  AffineElement acc = AffineElement::identity(rep.rank());
  for (const auto& l : word) {
    if (l.generator >= rep.generators().size())
      throw Error(ErrorCode::UnknownGenerator, "generator #" + std::to_string(l.generator));
    const auto& g = rep.generator(l.generator);
    acc = then(acc, l.exponent > 0 ? g : inverse(g));
  }
  return acc;
}

VerifyReport verify(const AffineMonodromyRep& rep) {
  VerifyReport report;
  const auto& names = rep.presentation().generators();
  bool all_unimodular = true;
  for (std::size_t i = 0; i < rep.generators().size(); ++i) {
    Int det = determinant(rep.generator(i).linear);
    if (det != 1 && det != -1) {
      all_unimodular = false;
      report.failures.push_back({ErrorCode::NotUnimodular,
                                 "generator '" + names[i] + "' has det " + std::to_string(det)});
    }
  }
  if (rep.presentation().partial()) {
    report.notices.push_back("partial presentation: relations skipped");
    return report;
  }
  if (!all_unimodular) {
    report.notices.push_back("relations skipped: non-unimodular generators");
    return report;
  }
  report.relations_checked = true;
  const auto& rels = rep.presentation().relations();
  for (std::size_t r = 0; r < rels.size(); ++r) {
    AffineElement e = compose(rep, rels[r]);
    if (!e.is_identity()) {
      std::ostringstream os;
      os << "relation #" << r << " composes to T=" << e.linear << " λ=" << e.translation
         << " θ=" << e.sign;
      report.failures.push_back({ErrorCode::InvalidInput, os.str()});
    }
  }
  return report;
}

std::vector<GF2Vector> coboundary(const AffineMonodromyRep& rep, const GF2Vector& phi) {
  if (phi.size() != rep.rank()) throw Error(ErrorCode::RankMismatch, "coboundary φ length");
  std::vector<GF2Vector> out;
  for (const auto& g : rep.generators()) out.push_back(vec_mat(phi, GF2Matrix::reduce(g.linear)) + phi);
  return out;
}

bool satisfies_relations(const AffineMonodromyRep& rep, const std::vector<GF2Vector>& theta) {
  AffineMonodromyRep r = rep.with_theta(theta);
  for (const auto& rel : r.presentation().relations())
    if (!compose(r, rel).sign.is_zero()) return false;
  return true;
}

namespace {

// Linear system whose kernel is the space of θ-cocycles. Unknown (g, i) sits
// in column g*n + i. For a relation x1 x2 … xk the composite sign is
// Σ_j θ'_{x_j} · T(x1…x_{j-1}), where θ'_{x} = θ_x for a positive letter and
// θ_x · T_x⁻¹ for an inverse one.
GF2Matrix cocycle_system(const AffineMonodromyRep& rep) {
  const std::size_t n = rep.rank();
  const auto& rels = rep.presentation().relations();
  const std::size_t unknowns = rep.generators().size() * n;
  GF2Matrix a(rels.size() * n, unknowns);

  std::vector<GF2Matrix> inv_mod2;
  for (const auto& g : rep.generators()) inv_mod2.push_back(GF2Matrix::reduce(unimodular_inverse(g.linear)));

  for (std::size_t r = 0; r < rels.size(); ++r) {
    IntMatrix prefix = IntMatrix::identity(n);
    for (const auto& l : rels[r]) {
      const auto& g = rep.generator(l.generator);
      GF2Matrix m = GF2Matrix::reduce(prefix);
      if (l.exponent < 0) {
        // θ_x · T_x⁻¹ · T_prefix
        GF2Matrix mm(n, n);
        for (std::size_t i = 0; i < n; ++i) {
          GF2Vector row = vec_mat(inv_mod2[l.generator].row(i), m);
          for (std::size_t j = 0; j < n; ++j) mm.set(i, j, row[j]);
        }
        m = mm;
      }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < n; ++c)
          if (m(i, c)) a.flip(r * n + c, l.generator * n + i);
      IntMatrix step = l.exponent > 0 ? g.linear : unimodular_inverse(g.linear);
      prefix = mat_mul(step, prefix);
    }
  }
  return a;
}

GF2Vector flatten(const std::vector<GF2Vector>& theta, std::size_t n) {
  GF2Vector v(theta.size() * n);
  for (std::size_t g = 0; g < theta.size(); ++g)
    for (std::size_t i = 0; i < n; ++i) v.set(g * n + i, theta[g][i]);
  return v;
}

std::vector<GF2Vector> unflatten(const GF2Vector& v, std::size_t n, std::size_t count) {
  std::vector<GF2Vector> theta(count, GF2Vector(n));
  for (std::size_t g = 0; g < count; ++g)
    for (std::size_t i = 0; i < n; ++i) theta[g].set(i, v[g * n + i]);
  return theta;
}

}  // namespace

std::vector<GF2Vector> combine_classes(const H1Result& h1, const std::vector<bool>& selection,
                                       std::size_t rank, std::size_t generator_count) {
  GF2Vector acc(rank * generator_count);
  for (std::size_t k = 0; k < h1.basis.size() && k < selection.size(); ++k)
    if (selection[k]) acc += flatten(h1.basis[k], rank);
  return unflatten(acc, rank, generator_count);
}

H1Result h1_theta(const AffineMonodromyRep& rep, std::size_t class_cap) {
  if (rep.presentation().partial())
    throw Error(ErrorCode::PartialPresentation, "h1 needs the full set of relations");
  for (std::size_t i = 0; i < rep.generators().size(); ++i)
    if (!is_unimodular(rep.generator(i).linear))
      throw Error(ErrorCode::NotUnimodular,
                  "generator '" + rep.presentation().generators()[i] + "'");

  const std::size_t n = rep.rank();
  const std::size_t count = rep.generators().size();
  const std::size_t unknowns = n * count;

  H1Result out;
  if (unknowns == 0) {
    out.representatives.push_back(std::vector<GF2Vector>(count, GF2Vector(n)));
    return out;
  }

  GF2Matrix system = cocycle_system(rep);
  auto solved = gf2_solve(system, GF2Vector(system.rows()));
  // The homogeneous system is always consistent.
  const auto& cocycles = solved->nullspace_basis;
  out.cocycle_dimension = cocycles.size();

  GF2Echelon span(unknowns);
  for (std::size_t k = 0; k < n; ++k) {
    GF2Vector phi(n);
    phi.set(k, true);
    span.insert(flatten(coboundary(rep, phi), n));
  }
  out.coboundary_dimension = span.dimension();

  for (const auto& z : cocycles)
    if (span.insert(z)) out.basis.push_back(unflatten(z, n, count));
  out.dimension = out.basis.size();

  // Classes enumerated by binary counting over the complement basis.
  const std::uint64_t total =
      out.dimension >= 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << out.dimension);
  const std::uint64_t limit = std::min<std::uint64_t>(total, class_cap);
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    std::vector<bool> selection(out.dimension, false);
    for (std::size_t k = 0; k < out.dimension && k < 64; ++k) selection[k] = (mask >> k) & 1u;
    out.representatives.push_back(combine_classes(out, selection, n, count));
  }
  out.truncated = limit < total;
  return out;
}

IntMatrix shear_t1() { return {{1, 0}, {1, 1}}; }
IntMatrix shear_t2() { return {{2, -1}, {1, 0}}; }
IntMatrix shear_t3() { return {{1, -1}, {0, 1}}; }

AffineMonodromyRep livne_moishezon_rep() {
  Presentation p = sphere_presentation(24, 2);
  std::vector<AffineElement> gens;
  for (std::size_t i = 1; i <= 24; ++i)
    gens.push_back({i % 2 == 1 ? shear_t3() : shear_t1(), IntVector(2), GF2Vector(2)});
  return AffineMonodromyRep(std::move(p), std::move(gens));
}

}  // namespace realkn
