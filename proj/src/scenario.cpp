#include "realkn/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace realkn {

using json = nlohmann::ordered_json;

std::string to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Monodromy: return "monodromy";
    case ScenarioKind::LocalModel: return "local_model";
    case ScenarioKind::Complex: return "complex";
  }
  return "?";
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where + ": missing \"" + key + "\"");
  return *it;
}

Int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where + ": expected an integer");
  return j.get<Int>();
}

std::size_t as_index(const json& j, const std::string& where) {
  Int v = as_int(j, where);
  if (v < 0) bad(where + ": expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

const json& as_array(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where + ": expected an array");
  return j;
}

IntVector int_vector(const json& j, const std::string& where) {
  std::vector<Int> out;
  for (const auto& x : as_array(j, where)) out.push_back(as_int(x, where));
  return IntVector(std::move(out));
}

std::vector<IntVector> int_vectors(const json& j, const std::string& where) {
  std::vector<IntVector> out;
  for (const auto& x : as_array(j, where)) out.push_back(int_vector(x, where));
  return out;
}

json to_json(const IntVector& v) { return json(v.values()); }

json to_json(const std::vector<IntVector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

json to_json(const GF2Vector& v) { return to_json(v.to_int()); }

json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(to_json(m.row(i)));
  return rows;
}

IntMatrix int_matrix(const json& j, std::size_t n, const std::string& where) {
  as_array(j, where);
  IntMatrix m(n, n);
  if (!j.empty() && j.front().is_array()) {
    if (j.size() != n) bad(where + ": expected " + std::to_string(n) + " rows");
    for (std::size_t i = 0; i < n; ++i) {
      IntVector row = int_vector(j[i], where);
      if (row.size() != n) bad(where + ": row of length " + std::to_string(row.size()));
      for (std::size_t k = 0; k < n; ++k) m(i, k) = row[k];
    }
  } else {
    IntVector flat = int_vector(j, where);
    if (flat.size() != n * n) bad(where + ": expected " + std::to_string(n * n) + " entries");
    for (std::size_t i = 0; i < n * n; ++i) m(i / n, i % n) = flat[i];
  }
  return m;
}

GF2Vector bit_vector(const json& j, std::size_t n, const std::string& where) {
  IntVector v = int_vector(j, where);
  if (v.size() != n) bad(where + ": expected length " + std::to_string(n));
  GF2Vector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] != 0 && v[i] != 1) bad(where + ": entries must be 0 or 1");
    out.set(i, v[i] == 1);
  }
  return out;
}

// --- monodromy --------------------------------------------------------------

MonodromySection monodromy_from_json(const json& j) {
  const std::string where = "monodromy";
  const std::size_t n = as_index(field(j, "rank", where), where + ".rank");
  if (n == 0) bad("monodromy.rank must be positive");
  const bool partial = j.contains("partial") ? j["partial"].get<bool>() : false;

  std::vector<std::string> names;
  std::vector<AffineElement> elems;
  for (const auto& g : as_array(field(j, "generators", where), where + ".generators")) {
    const std::string gw = where + ".generators";
    const json& name = field(g, "name", gw);
    if (!name.is_string()) bad(gw + ".name: expected a string");
    names.push_back(name.get<std::string>());
    const std::string ew = gw + "[" + names.back() + "]";
    AffineElement e;
    e.linear = int_matrix(field(g, "T", ew), n, ew + ".T");
    e.translation = g.contains("lambda") ? int_vector(g["lambda"], ew + ".lambda") : IntVector(n);
    if (e.translation.size() != n) bad(ew + ".lambda: expected length " + std::to_string(n));
    e.sign = g.contains("theta") ? bit_vector(g["theta"], n, ew + ".theta") : GF2Vector(n);
    elems.push_back(std::move(e));
  }

  // Relations reference names, so parse them against a relation-free copy.
  Presentation names_only(n, names, {}, partial);
  std::vector<Word> relations;
  if (j.contains("relations"))
    for (const auto& r : as_array(j["relations"], where + ".relations")) {
      std::vector<std::string> tokens;
      for (const auto& t : as_array(r, where + ".relations")) {
        if (!t.is_string()) bad(where + ".relations: expected generator names");
        tokens.push_back(t.get<std::string>());
      }
      relations.push_back(names_only.parse_word(tokens));
    }

  MonodromySection s;
  s.rep = AffineMonodromyRep(Presentation(n, std::move(names), std::move(relations), partial),
                             std::move(elems));
  if (j.contains("branch_points"))
    for (const auto& b : as_array(j["branch_points"], where + ".branch_points")) {
      if (!b.is_string()) bad(where + ".branch_points: expected generator names");
      s.branch_points.push_back(b.get<std::string>());
      s.rep.presentation().index_of(s.branch_points.back());
    }
  if (j.contains("base_euler")) s.base_euler = as_int(j["base_euler"], where + ".base_euler");
  return s;
}

json to_json(const MonodromySection& s) {
  const auto& p = s.rep.presentation();
  json j;
  j["rank"] = p.rank();
  j["partial"] = p.partial();
  j["base_euler"] = s.base_euler;
  json gens = json::array();
  for (std::size_t i = 0; i < p.generator_count(); ++i) {
    const auto& e = s.rep.generator(i);
    json g;
    g["name"] = p.generators()[i];
    g["T"] = to_json(e.linear);
    g["lambda"] = to_json(e.translation);
    g["theta"] = to_json(e.sign);
    gens.push_back(std::move(g));
  }
  j["generators"] = std::move(gens);
  json rels = json::array();
  for (const auto& w : p.relations()) rels.push_back(p.format_word(w));
  j["relations"] = std::move(rels);
  j["branch_points"] = s.branch_points;
  return j;
}

// --- complex ----------------------------------------------------------------

ComplexSection complex_from_json(const json& j) {
  const std::string where = "complex";
  const std::size_t dim = as_index(field(j, "dimension", where), where + ".dimension");
  std::vector<std::vector<Cell>> cells;
  for (const auto& level : as_array(field(j, "cells", where), where + ".cells")) {
    std::vector<Cell> row;
    for (const auto& c : as_array(level, where + ".cells")) {
      Cell cell;
      for (const auto& b : as_array(c, where + ".cells")) cell.boundary.push_back(as_index(b, where + ".cells"));
      row.push_back(std::move(cell));
    }
    cells.push_back(std::move(row));
  }
  std::vector<VertexFan> fans;
  if (j.contains("vertex_fans"))
    for (const auto& f : as_array(j["vertex_fans"], where + ".vertex_fans")) {
      const std::string fw = where + ".vertex_fans";
      VertexFan fan;
      fan.vertex = as_index(field(f, "vertex", fw), fw + ".vertex");
      for (const auto& r : as_array(field(f, "rays", fw), fw + ".rays"))
        fan.rays.push_back({as_index(field(r, "edge", fw), fw + ".edge"),
                            int_vector(field(r, "ray", fw), fw + ".ray")});
      fans.push_back(std::move(fan));
    }

  ComplexSection s;
  s.complex = PolyhedralComplex(dim, std::move(cells), std::move(fans));
  std::vector<Int> kinks;
  if (j.contains("kinks")) kinks = int_vector(j["kinks"], where + ".kinks").values();
  else kinks.assign(s.complex.count(1), 1);
  s.mpl = MPLFunction(std::move(kinks));

  if (j.contains("singular_points"))
    for (const auto& p : as_array(j["singular_points"], where + ".singular_points")) {
      const std::string pw = where + ".singular_points";
      SingularPointSpec sp;
      sp.edge = as_index(field(p, "edge", pw), pw + ".edge");
      sp.ordinal = p.contains("ordinal") ? as_index(p["ordinal"], pw + ".ordinal") : 0;
      sp.direction = int_vector(field(p, "direction", pw), pw + ".direction");
      sp.conormal = int_vector(field(p, "conormal", pw), pw + ".conormal");
      sp.slab_sign_change = p.contains("slab_sign_change") ? p["slab_sign_change"].get<bool>() : true;
      s.singular_points.push_back(std::move(sp));
    }
  return s;
}

json to_json(const ComplexSection& s) {
  json j;
  j["dimension"] = s.complex.dimension();
  json cells = json::array();
  for (const auto& level : s.complex.cells()) {
    json row = json::array();
    for (const auto& c : level) row.push_back(c.boundary);
    cells.push_back(std::move(row));
  }
  j["cells"] = std::move(cells);
  json fans = json::array();
  for (const auto& f : s.complex.vertex_fans()) {
    json rays = json::array();
    for (const auto& r : f.rays) rays.push_back(json{{"edge", r.edge}, {"ray", to_json(r.ray)}});
    fans.push_back(json{{"vertex", f.vertex}, {"rays", std::move(rays)}});
  }
  j["vertex_fans"] = std::move(fans);
  j["kinks"] = s.mpl.kinks();
  json pts = json::array();
  for (const auto& p : s.singular_points)
    pts.push_back(json{{"edge", p.edge},
                       {"ordinal", p.ordinal},
                       {"direction", to_json(p.direction)},
                       {"conormal", to_json(p.conormal)},
                       {"slab_sign_change", p.slab_sign_change}});
  j["singular_points"] = std::move(pts);
  return j;
}

// --- local model ------------------------------------------------------------

LocalModelSection local_model_from_json(const json& j) {
  const std::string where = "local_model";
  LocalModelSection s;
  s.spec.mprime_rank = as_index(field(j, "mprime_rank", where), where + ".mprime_rank");
  if (j.contains("fan"))
    for (const auto& c : as_array(j["fan"], where + ".fan"))
      s.spec.fan.push_back(int_vectors(c, where + ".fan"));
  for (const auto& p : as_array(field(j, "polytopes", where), where + ".polytopes"))
    s.spec.polytopes.push_back(int_vectors(p, where + ".polytopes"));
  if (j.contains("bound")) s.bound = as_int(j["bound"], where + ".bound");
  if (j.contains("face") && !j["face"].is_null()) s.face = int_vectors(j["face"], where + ".face");
  return s;
}

json to_json(const LocalModelSection& s) {
  json j;
  j["mprime_rank"] = s.spec.mprime_rank;
  json fan = json::array();
  for (const auto& c : s.spec.fan) fan.push_back(to_json(c));
  j["fan"] = std::move(fan);
  json polys = json::array();
  for (const auto& p : s.spec.polytopes) polys.push_back(to_json(p));
  j["polytopes"] = std::move(polys);
  j["bound"] = s.bound;
  if (s.face) j["face"] = to_json(*s.face);
  return j;
}

ScenarioKind parse_kind(const json& j) {
  if (!j.is_string()) bad("kind: expected a string");
  const auto k = j.get<std::string>();
  if (k == "monodromy") return ScenarioKind::Monodromy;
  if (k == "local_model") return ScenarioKind::LocalModel;
  if (k == "complex") return ScenarioKind::Complex;
  bad("kind: unknown value '" + k + "'");
}

}  // namespace

Scenario scenario_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  try {
    Scenario s;
    s.kind = parse_kind(field(j, "kind", "scenario"));
    if (j.contains("name")) s.name = j["name"].get<std::string>();
    if (j.contains("monodromy")) s.monodromy = monodromy_from_json(j["monodromy"]);
    if (j.contains("complex")) s.complex = complex_from_json(j["complex"]);
    if (j.contains("local_model")) s.local_model = local_model_from_json(j["local_model"]);
    const bool has = (s.kind == ScenarioKind::Monodromy && s.monodromy) ||
                     (s.kind == ScenarioKind::Complex && s.complex) ||
                     (s.kind == ScenarioKind::LocalModel && s.local_model);
    if (!has) bad("scenario of kind " + to_string(s.kind) + " lacks its section");
    return s;
  } catch (const json::exception& e) {
    bad(std::string("schema: ") + e.what());
  }
}

std::string scenario_to_json_text(const Scenario& s) {
  json j;
  j["kind"] = to_string(s.kind);
  if (!s.name.empty()) j["name"] = s.name;
  if (s.monodromy) j["monodromy"] = to_json(*s.monodromy);
  if (s.complex) j["complex"] = to_json(*s.complex);
  if (s.local_model) j["local_model"] = to_json(*s.local_model);
  return j.dump(2) + "\n";
}

Scenario load_scenario(const std::string& source) {
  constexpr std::string_view prefix = "example:";
  if (source.starts_with(prefix)) return builtin_scenario(source.substr(prefix.size()));
  std::ifstream in(source, std::ios::binary);
  if (!in) bad("cannot read '" + source + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json_text(buf.str());
}

std::vector<std::string> builtin_names() { return {"quartic-k3", "simple-k3", "focus-focus"}; }

Scenario builtin_scenario(const std::string& name) {
  Scenario s;
  s.name = name;
  if (name == "quartic-k3") {
    QuarticK3 k3 = builtin_quartic_k3();
    s.kind = ScenarioKind::Monodromy;
    s.monodromy = MonodromySection{k3.monodromy, k3.branch_points, 2};
    s.complex = ComplexSection{k3.complex, k3.mpl, k3.singular_points};
  } else if (name == "simple-k3") {
    AffineMonodromyRep rep = livne_moishezon_rep();
    s.kind = ScenarioKind::Monodromy;
    s.monodromy = MonodromySection{rep, rep.presentation().generators(), 2};
  } else if (name == "focus-focus") {
    s.kind = ScenarioKind::LocalModel;
    s.local_model = LocalModelSection{focus_focus_spec(), 4, std::nullopt};
  } else {
    std::string known;
    for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
    bad("unknown example '" + name + "' (known: " + known + ")");
  }
  return s;
}

}  // namespace realkn
