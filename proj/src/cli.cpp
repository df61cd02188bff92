#include "realkn/cli.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "realkn/real_cover.hpp"
#include "realkn/scenario.hpp"

namespace realkn::cli {

namespace {

using json = nlohmann::ordered_json;

// Input problems that are not schema errors (wrong section for a command).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json to_json(const IntVector& v) { return json(v.values()); }

json to_json(const std::vector<IntVector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

json to_json(const std::vector<GF2Vector>& theta) {
  json a = json::array();
  for (const auto& t : theta) a.push_back(to_json(t.to_int()));
  return a;
}

std::string show(const IntVector& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string show_point(std::uint32_t index, std::size_t rank) {
  return show(GF2Vector::from_index(index, rank).to_int());
}

template <class T>
std::string join(const std::vector<T>& items, const std::string& sep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < items.size(); ++i) os << (i ? sep : "") << items[i];
  return os.str();
}

MonodromySection& need_monodromy(Scenario& s) {
  if (!s.monodromy) throw InputError("scenario has no monodromy section");
  return *s.monodromy;
}

// --theta: "file" keeps the scenario's θ, "zero" clears it, "nonzero" takes
// the first nonzero H¹ class, an integer k takes the k-th class.
void apply_theta(MonodromySection& m, const std::string& mode) {
  if (mode == "file") return;
  const std::size_t count = m.rep.generators().size();
  if (mode == "zero") {
    m.rep = m.rep.with_theta(std::vector<GF2Vector>(count, GF2Vector(m.rep.rank())));
    return;
  }
  std::size_t k = 1;
  if (mode != "nonzero") {
    auto [ptr, ec] = std::from_chars(mode.data(), mode.data() + mode.size(), k);
    if (ec != std::errc() || ptr != mode.data() + mode.size())
      throw InputError("--theta expects file, zero, nonzero or a class index");
  }
  H1Result h1 = h1_theta(m.rep, k + 1);
  if (k >= h1.representatives.size())
    throw Error(ErrorCode::InvalidInput, "H^1 has only " + std::to_string(h1.representatives.size()) +
                                             " class(es); index " + std::to_string(k) + " requested");
  m.rep = m.rep.with_theta(h1.representatives[k]);
}

// --- validate ---------------------------------------------------------------

int cmd_validate(const Scenario& s, bool as_json, std::ostream& out) {
  json report;
  report["command"] = "validate";
  report["scenario"] = s.name;
  bool ok = true;
  std::ostringstream text;

  if (s.monodromy) {
    VerifyReport v = verify(s.monodromy->rep);
    json failures = json::array();
    for (const auto& f : v.failures)
      failures.push_back(json{{"code", std::string(to_string(f.code))}, {"message", f.message}});
    report["monodromy"] = json{{"ok", v.ok()},
                               {"relations_checked", v.relations_checked},
                               {"failures", failures},
                               {"notices", v.notices}};
    ok = ok && v.ok();
    text << "monodromy: " << (v.ok() ? "ok" : "FAILED") << "\n";
    for (const auto& f : v.failures) text << "  " << to_string(f.code) << ": " << f.message << "\n";
    for (const auto& n : v.notices) text << "  note: " << n << "\n";
  }

  if (s.complex) {
    auto violations = validate_balancing(s.complex->complex, s.complex->mpl);
    json bal = json::array();
    for (const auto& b : violations) bal.push_back(json{{"vertex", b.vertex}, {"defect", to_json(b.defect)}});
    json points = json::array();
    std::size_t bad_points = 0;
    for (std::size_t i = 0; i < s.complex->singular_points.size(); ++i) {
      auto problems = check_singular_point(s.complex->complex, s.complex->singular_points[i]);
      if (problems.empty()) continue;
      ++bad_points;
      points.push_back(json{{"index", i}, {"problems", problems}});
    }
    const bool cok = violations.empty() && bad_points == 0;
    report["complex"] = json{{"ok", cok},
                             {"cells", {s.complex->complex.count(0), s.complex->complex.count(1),
                                        s.complex->complex.count(2)}},
                             {"singular_points", s.complex->singular_points.size()},
                             {"kinks_positive", s.complex->mpl.is_positive()},
                             {"balancing_violations", bal},
                             {"singular_point_problems", points}};
    ok = ok && cok;
    text << "complex: " << (cok ? "ok" : "FAILED") << "\n";
    for (const auto& b : violations)
      text << "  vertex " << b.vertex << " unbalanced, defect " << show(b.defect) << "\n";
    for (const auto& p : points) text << "  singular point " << p["index"].get<std::size_t>() << ": "
                                      << join(p["problems"].get<std::vector<std::string>>(), "; ") << "\n";
  }

  if (s.local_model) {
    auto problems = check_local_model_spec(s.local_model->spec);
    report["local_model"] = json{{"ok", problems.empty()}, {"problems", problems}};
    ok = ok && problems.empty();
    text << "local model: " << (problems.empty() ? "ok" : "FAILED") << "\n";
    for (const auto& p : problems) text << "  " << p << "\n";
  }

  report["ok"] = ok;
  if (as_json) out << report.dump(2) << "\n";
  else out << text.str();
  return ok ? kExitOk : kExitFailure;
}

// --- classify ---------------------------------------------------------------

int cmd_classify(Scenario& s, FiberSign mu, const std::string& theta, bool as_json, std::ostream& out) {
  MonodromySection& m = need_monodromy(s);
  apply_theta(m, theta);
  ComponentReport r = classify(m.rep, mu, m.branch_points, m.base_euler);

  if (as_json) {
    json comps = json::array();
    for (const auto& c : r.components) {
      json pts = json::array();
      for (auto p : c.points) pts.push_back(to_json(GF2Vector::from_index(p, r.rank).to_int()));
      json branches = json::array();
      for (const auto& b : c.branch_points)
        branches.push_back(json{{"generator", b.generator}, {"cycles", b.cycles}});
      json jc;
      jc["degree"] = c.degree;
      jc["points"] = std::move(pts);
      jc["euler_characteristic"] = c.euler_characteristic;
      jc["genus"] = c.genus ? json(*c.genus) : json(nullptr);
      jc["ramified_branch_points"] =
          std::count_if(c.branch_points.begin(), c.branch_points.end(), [](const auto& b) { return b.ramified(); });
      jc["branch_points"] = std::move(branches);
      comps.push_back(std::move(jc));
    }
    json report;
    report["command"] = "classify";
    report["scenario"] = s.name;
    report["fiber"] = to_string(mu);
    report["rank"] = r.rank;
    report["fiber_points"] = std::size_t{1} << r.rank;
    report["base_euler"] = r.base_euler;
    report["orientability_assumed"] = r.orientability_assumed;
    report["theta"] = to_json([&] {
      std::vector<GF2Vector> t;
      for (const auto& g : m.rep.generators()) t.push_back(g.sign);
      return t;
    }());
    report["components"] = std::move(comps);
    out << report.dump(2) << "\n";
    return kExitOk;
  }

  out << "fiber " << to_string(mu) << ": " << r.components.size() << " component(s), "
      << (std::size_t{1} << r.rank) << " points, base chi " << r.base_euler << "\n";
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    const auto& c = r.components[i];
    out << "  component " << i << ": degree " << c.degree << ", chi " << c.euler_characteristic;
    if (c.genus) out << ", genus " << *c.genus;
    std::vector<std::string> pts;
    for (auto p : c.points) pts.push_back(show_point(p, r.rank));
    out << ", points " << join(pts, " ") << "\n";
    std::map<std::string, std::size_t> types;
    std::size_t ramified = 0;
    for (const auto& b : c.branch_points) {
      if (b.ramified()) ++ramified;
      types[join(b.cycles, "+")]++;
    }
    out << "    " << ramified << " of " << c.branch_points.size() << " branch points ramified";
    for (const auto& [t, k] : types) out << "; " << t << " x" << k;
    out << "\n";
  }
  if (r.orientability_assumed) out << "  (genus assumes closed orientable components)\n";
  return kExitOk;
}

// --- h1 ---------------------------------------------------------------------

int cmd_h1(Scenario& s, std::size_t cap, bool as_json, std::ostream& out) {
  MonodromySection& m = need_monodromy(s);
  H1Result h = h1_theta(m.rep, cap);
  if (as_json) {
    json reps = json::array();
    for (const auto& r : h.representatives) reps.push_back(to_json(r));
    json report;
    report["command"] = "h1";
    report["scenario"] = s.name;
    report["generators"] = m.rep.presentation().generators();
    report["dimension"] = h.dimension;
    report["cocycle_dimension"] = h.cocycle_dimension;
    report["coboundary_dimension"] = h.coboundary_dimension;
    report["representatives"] = std::move(reps);
    report["truncated"] = h.truncated;
    out << report.dump(2) << "\n";
    return kExitOk;
  }
  out << "H1 dimension " << h.dimension << " (cocycles " << h.cocycle_dimension << ", coboundaries "
      << h.coboundary_dimension << ")\n";
  out << h.representatives.size() << " representative(s)" << (h.truncated ? ", truncated" : "") << "\n";
  for (std::size_t i = 0; i < h.representatives.size(); ++i) {
    std::vector<std::string> parts;
    for (const auto& t : h.representatives[i]) parts.push_back(show(t.to_int()));
    out << "  [" << i << "] " << join(parts, " ") << "\n";
  }
  return kExitOk;
}

// --- local-model ------------------------------------------------------------

int cmd_local_model(Scenario& s, std::optional<Int> bound, bool as_json, std::ostream& out) {
  if (!s.local_model) throw InputError("scenario has no local_model section");
  const LocalModelSection& lm = *s.local_model;
  const Int b = bound.value_or(lm.bound);
  LocalModel model = build_local_model(lm.spec, b);
  MonodromyCone kbar = monodromy_cone(lm.spec);

  std::vector<IntVector> face;
  if (lm.face) {
    face = *lm.face;
  } else {
    IntVector e0(model.monoid.rank);
    e0[model.e0_index] = 1;
    face = minimal_face(model.monoid, e0);
  }
  GhostRank ghost = ghost_rank(model.monoid, face);
  FaceQuotient quotient = quotient_by_face(model.monoid, face);
  auto relations = relation_basis(model.monoid);

  if (as_json) {
    json report;
    report["command"] = "local-model";
    report["scenario"] = s.name;
    report["bound"] = b;
    report["lattice_rank"] = model.monoid.rank;
    report["e0_index"] = model.e0_index;
    report["generators"] = to_json(model.monoid.generators);
    report["relations"] = to_json(relations);
    report["k_generators"] = to_json(model.k.generators());
    report["consistent"] = model.consistent;
    report["monodromy_cone"] = json{{"generators", to_json(kbar.kbar.generators())},
                                    {"is_simplex", kbar.is_simplex},
                                    {"is_standard", kbar.is_standard}};
    report["face"] = json{{"generators", to_json(face)},
                          {"ghost_rank", ghost.rank},
                          {"real_fiber", ghost.real_fiber}};
    report["quotient"] = json{{"generators", to_json(quotient.generators)}, {"free", quotient.free}};
    out << report.dump(2) << "\n";
  } else {
    std::vector<std::string> gens, rels, kg;
    for (const auto& g : model.monoid.generators) gens.push_back(show(g));
    for (const auto& r : relations) rels.push_back(show(r));
    for (const auto& g : kbar.kbar.generators()) kg.push_back(show(g));
    std::vector<std::string> fg;
    for (const auto& g : face) fg.push_back(show(g));
    out << "P: " << gens.size() << " generators " << join(gens, " ") << "\n";
    out << "relations: " << (rels.empty() ? "none" : join(rels, " ")) << "\n";
    out << "P = K^dual within bound " << b << ": " << (model.consistent ? "yes" : "NO") << "\n";
    out << "monodromy cone: " << (kg.empty() ? "empty" : join(kg, " ")) << ", simplex "
        << (kbar.is_simplex ? "yes" : "no") << ", standard " << (kbar.is_standard ? "yes" : "no") << "\n";
    out << "face " << (fg.empty() ? "{0}" : join(fg, " ")) << ": ghost rank " << ghost.rank << ", real fiber "
        << ghost.real_fiber << "\n";
    out << "P/F " << (quotient.free ? "free" : "not free") << " on " << quotient.generators.size()
        << " generator(s)\n";
  }
  return model.consistent ? kExitOk : kExitFailure;
}

// --- example ----------------------------------------------------------------

int cmd_example(const std::string& name, const std::string& theta, bool as_json, std::ostream& out) {
  Scenario s;
  try {
    s = builtin_scenario(name);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  if (theta != "file") apply_theta(need_monodromy(s), theta);
  if (as_json) {
    out << scenario_to_json_text(s);
    return kExitOk;
  }
  out << name << " (" << to_string(s.kind) << ")\n";
  if (s.monodromy) {
    const auto& p = s.monodromy->rep.presentation();
    out << "  monodromy: rank " << p.rank() << ", " << p.generator_count() << " generators, "
        << p.relations().size() << " relation(s)" << (p.partial() ? ", partial" : "") << "\n";
  }
  if (s.complex)
    out << "  complex: " << s.complex->complex.count(0) << " vertices, " << s.complex->complex.count(1)
        << " edges, " << s.complex->complex.count(2) << " faces, " << s.complex->singular_points.size()
        << " singular points\n";
  if (s.local_model)
    out << "  local model: rank M' " << s.local_model->spec.mprime_rank << ", q = " << s.local_model->spec.q()
        << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Affine monodromy, real covers and toric local models", "realkn"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  std::string scenario, theta = "file", fiber = "+1", example_name;
  std::size_t cap = kDefaultClassCap;
  std::optional<Int> bound;

  auto* validate = app.add_subcommand("validate", "Check relations, balancing and local-model invariants");
  validate->add_option("scenario", scenario, "Scenario file or example:<name>")->required();
  validate->add_option("--theta", theta, "file | zero | nonzero | <class index>");

  auto* cls = app.add_subcommand("classify", "Components of the real cover over one fibre sign");
  cls->add_option("scenario", scenario, "Scenario file or example:<name>")->required();
  cls->add_option("--fiber", fiber, "Fibre sign")->check(CLI::IsMember({"+1", "-1", "1"}))->capture_default_str();
  cls->add_option("--theta", theta, "file | zero | nonzero | <class index>");

  auto* h1 = app.add_subcommand("h1", "Z/2 cohomology classes of sign twists");
  h1->add_option("scenario", scenario, "Scenario file or example:<name>")->required();
  h1->add_option("--cap", cap, "Maximum number of class representatives")->capture_default_str();

  auto* lm = app.add_subcommand("local-model", "Build and check a local toric model");
  lm->add_option("scenario", scenario, "Scenario file or example:<name>")->required();
  lm->add_option("--bound", bound, "Enumeration box bound")->check(CLI::PositiveNumber);

  auto* ex = app.add_subcommand("example", "Emit a builtin scenario");
  ex->add_option("name", example_name, "quartic-k3 | simple-k3 | focus-focus")->required();
  ex->add_option("--theta", theta, "file | zero | nonzero | <class index>");

  for (auto* sub : {validate, cls, h1, lm, ex}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  const bool as_json = format == "json";

  Scenario s;
  if (!ex->parsed()) {
    try {
      s = load_scenario(scenario);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitInput;
    }
  }

  try {
    if (validate->parsed()) {
      if (theta != "file") apply_theta(need_monodromy(s), theta);
      return cmd_validate(s, as_json, out);
    }
    if (cls->parsed()) return cmd_classify(s, parse_fiber_sign(fiber), theta, as_json, out);
    if (h1->parsed()) return cmd_h1(s, cap, as_json, out);
    if (lm->parsed()) return cmd_local_model(s, bound, as_json, out);
    if (ex->parsed()) return cmd_example(example_name, theta, as_json, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitInput;
}

}  // namespace realkn::cli
