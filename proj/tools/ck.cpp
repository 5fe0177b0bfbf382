// Command-line front end.
//
//   ck validate ws.json
//   ck compose prof ws.json G F --show-witnesses
//   ck subst ws.json G F --max-arity 3
//   ck suite all --seed 7 --threads 4 --format json
//
// Exit codes: 0 success, 1 failed check or invalid input, 2 parse error,
// 3 enumeration bound exceeded.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ck/serialize.hpp"
#include "ck/suites.hpp"

using namespace ck;

namespace {

enum Exit { ok = 0, failed = 1, parse_error = 2, bound_exceeded = 3 };

struct Options {
  std::string format = "text";
  bool show_witnesses = false;
  std::string output;
};

std::string read_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot read " + path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Workspace load_or_fail(std::string const& path) {
  auto r = load_workspace(read_file(path));
  if (!r.report.ok()) {
    throw InvalidData("invalid objects in " + path + ": " + r.report.violations.front());
  }
  return std::move(r.ws);
}

void print_table(std::ostream& os, std::string const& name, Bifunctor const& H) {
  for (Index a = 0; a < H.contra.num_objects(); ++a) {
    for (Index b = 0; b < H.co.num_objects(); ++b) {
      os << name << "(" << H.contra.object(a).repr() << ", " << H.co.object(b).repr() << ") = {";
      auto const& v = H.at(a, b);
      for (std::size_t i = 0; i < v.size(); ++i) {
        os << (i ? ", " : "") << v[i].repr();
      }
      os << "}\n";
    }
  }
}

void print_presheaf(std::ostream& os, std::string const& name, Presheaf const& p) {
  for (Index a = 0; a < p.base.num_objects(); ++a) {
    os << name << "(" << p.base.object(a).repr() << ") = {";
    for (std::size_t i = 0; i < p.values[a].size(); ++i) {
      os << (i ? ", " : "") << p.values[a][i].repr();
    }
    os << "}\n";
  }
}

void print_witnesses(std::ostream& os, json const& w) {
  for (auto const& [key, v] : w.items()) {
    os << key << ":";
    if (v.is_array()) {
      os << "\n";
      for (auto const& e : v) {
        os << "  " << e.dump() << "\n";
      }
    } else {
      os << " " << v.dump() << "\n";
    }
  }
}

// Emits a result document holding `section: [result]` plus its categories.
int emit(Options const& opt, std::string const& command, json result, char const* section,
         std::vector<FinCat> const& cats, json witnesses, std::function<void(std::ostream&)> text) {
  result["name"] = "result";
  json doc{{"schema_version", schema_version}, {"categories", json::array()}, {section, json::array({result})}};
  std::set<std::string> seen;
  for (auto const& C : cats) {
    if (seen.insert(C.name()).second) {
      doc["categories"].push_back(to_json(C));
    }
  }
  if (!opt.output.empty()) {
    std::ofstream(opt.output) << doc.dump(2) << "\n";
  }
  if (opt.format == "json") {
    json out{{"schema_version", schema_version}, {"command", command}, {"result", doc}};
    if (opt.show_witnesses) {
      out["witnesses"] = witnesses;
    }
    std::cout << out.dump(2) << "\n";
  } else {
    text(std::cout);
    if (opt.show_witnesses) {
      print_witnesses(std::cout, witnesses);
    }
  }
  return ok;
}

json classes_json(std::vector<QuotientSet> const& qs, FinCat const& A, FinCat const& B) {
  json out = json::array();
  for (Index a = 0; a < A.num_objects(); ++a) {
    for (Index b = 0; b < B.num_objects(); ++b) {
      auto const& q = qs[a * B.num_objects() + b];
      if (!q.classes.empty()) {
        out.push_back({{"at", {A.object(a).repr(), B.object(b).repr()}}, {"classes", to_json(q)}});
      }
    }
  }
  return out;
}

json iso_json(std::vector<FinFn> const& comps) {
  json pairs = json::array();
  bool bij = true;
  for (auto const& f : comps) {
    bij = bij && f.is_bijective();
    for (Index i = 0; i < f.dom.size(); ++i) {
      pairs.push_back({f.dom[i].repr(), f.cod[f.map[i]].repr()});
    }
  }
  return {{"bijective", bij}, {"pairs", pairs}};
}

int cmd_validate(Options const& opt, std::string const& path) {
  auto r = load_workspace(read_file(path));
  auto const& ws = r.ws;
  std::size_t count = ws.categories.size() + ws.functors.size() + ws.presheaves.size() + ws.profunctors.size()
                      + ws.monoidal.size() + ws.symseqs.size();
  if (opt.format == "json") {
    json out{{"schema_version", schema_version}, {"command", "validate"}, {"valid", r.report.ok()},
             {"loaded", count}, {"violations", r.report.violations}};
    std::cout << out.dump(2) << "\n";
  } else if (r.report.ok()) {
    std::cout << "valid: " << count << " objects\n";
  } else {
    std::cout << "invalid:\n";
    for (auto const& v : r.report.violations) {
      std::cout << "  " << v << "\n";
    }
  }
  return r.report.ok() ? ok : failed;
}

int compose_prof(Options const& opt, Workspace const& ws, std::string const& g, std::string const& f,
                 bool kleisli) {
  auto const& G = Workspace::find(ws.profunctors, g, "profunctor");
  auto const& F = Workspace::find(ws.profunctors, f, "profunctor");
  if (!(G.co == F.contra)) {
    throw EndpointMismatch(g + " and " + f + " do not share a middle category");
  }
  json witnesses = json::object();
  Profunctor H;
  if (kleisli) {
    PresheafRelPsm T;
    H = tau_inv(T.compose(tau(G), tau(F)));
  } else {
    auto comp = prof_composite(G, F);
    H = comp.value;
    witnesses["classes"] = classes_json(comp.quotients, H.contra, H.co);
    // Composites with an identity come with their unitor.
    if (G == prof_identity(G.contra)) {
      witnesses["left_unitor"] = iso_json(prof_left_unitor(F, H).components);
    }
    if (F == prof_identity(F.co)) {
      witnesses["right_unitor"] = iso_json(prof_right_unitor(G, H).components);
    }
  }
  json cards = json::array();
  for (Index a = 0; a < H.contra.num_objects(); ++a) {
    json row = json::array();
    for (Index b = 0; b < H.co.num_objects(); ++b) {
      row.push_back(H.at(a, b).size());
    }
    cards.push_back(row);
  }
  witnesses["cardinalities"] = cards;
  auto j = to_json(H);
  return emit(opt, kleisli ? "compose kleisli" : "compose prof", j, "profunctors", {H.contra, H.co}, witnesses,
              [&](std::ostream& os) {
                print_table(os, g + "o" + f, H);
                if (!opt.show_witnesses) {
                  os << "cardinalities: " << cards.dump() << "\n";
                }
              });
}

int compose_day(Options const& opt, Workspace const& ws, std::string const& m, std::string const& p,
                std::string const& q) {
  auto const& M = Workspace::find(ws.monoidal, m, "monoidal structure");
  auto const& P = Workspace::find(ws.presheaves, p, "presheaf");
  auto const& Q = Workspace::find(ws.presheaves, q, "presheaf");
  if (!(P.base == M.base) || !(Q.base == M.base)) {
    throw EndpointMismatch("presheaves are not on the base of " + m);
  }
  auto D = day_convolution(M, P, Q);
  json w{{"classes", json::array()}};
  for (Index b = 0; b < M.size(); ++b) {
    w["classes"].push_back({{"at", M.base.object(b).repr()}, {"classes", to_json(D.quotients[b])}});
  }
  return emit(opt, "compose day", to_json(D.value), "presheaves", {M.base}, w,
              [&](std::ostream& os) { print_presheaf(os, p + "*" + q, D.value); });
}

int compose_subst(Options const& opt, Workspace const& ws, std::string const& g, std::string const& f,
                  std::size_t arity, std::optional<std::size_t> m_bound) {
  auto const& G = Workspace::find(ws.symseqs, g, "symmetric sequence");
  auto const& F = Workspace::find(ws.symseqs, f, "symmetric sequence");
  auto C = subst_composite(G, F, arity, m_bound);
  auto const& R = C.value;
  json w{{"classes", classes_json(C.quotients, R.source.cat, R.target)}};
  if (R.bounded_search) {
    w["note"] = "bounded search";
  }
  return emit(opt, "compose subst", to_json(R), "symseqs", {R.source.base, R.target}, w, [&](std::ostream& os) {
    for (Index o = 0; o < R.source.cat.num_objects(); ++o) {
      for (Index z = 0; z < R.target.num_objects(); ++z) {
        auto const& v = R.data.at(o, z);
        if (!v.empty()) {
          os << g << "o" << f << "[" << R.source.cat.object(o).repr() << "; " << R.target.object(z).repr()
             << "] has " << v.size() << " elements\n";
        }
      }
    }
    if (R.bounded_search) {
      os << "note: bounded search\n";
    }
  });
}

int cmd_coend(Options const& opt, Workspace const& ws, std::string const& name) {
  auto const& H = Workspace::find(ws.profunctors, name, "profunctor");
  if (!(H.contra == H.co)) {
    throw EndpointMismatch(name + " is not an endo-profunctor");
  }
  auto c = coend(H);
  json value = json::array();
  for (auto const& e : c.value()) {
    value.push_back(e.repr());
  }
  json out{{"schema_version", schema_version}, {"command", "coend"}, {"value", value}, {"size", value.size()}};
  if (opt.show_witnesses) {
    out["classes"] = to_json(c.quotient);
  }
  if (opt.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "coend of " << name << ": " << value.size() << " classes\n";
    for (auto const& e : value) {
      std::cout << "  " << e.get<std::string>() << "\n";
    }
    if (opt.show_witnesses) {
      print_witnesses(std::cout, {{"classes", out["classes"]}});
    }
  }
  return ok;
}

// Extends presheaf p on X along the profunctor F : X ⇸ Y read as X → P(Y).
int cmd_kan(Options const& opt, Workspace const& ws, std::string const& f, std::string const& p) {
  auto const& F = Workspace::find(ws.profunctors, f, "profunctor");
  auto const& P = Workspace::find(ws.presheaves, p, "presheaf");
  if (!(P.base == F.co)) {
    throw EndpointMismatch(p + " is not on the source of " + f);
  }
  auto q = kan_extend(tau(F), P);
  return emit(opt, "kan", to_json(q), "presheaves", {q.base}, json::object(),
              [&](std::ostream& os) { print_presheaf(os, f + "*" + p, q); });
}

// Path to the first failing leaf check, with its first witness.
std::string first_failure_summary(json const& r, std::string prefix = {}) {
  std::string path = prefix.empty() ? r["name"].get<std::string>() : prefix + " / " + r["name"].get<std::string>();
  if (r.contains("checks")) {
    for (auto const& c : r["checks"]) {
      if (c["status"] == "fail") {
        return first_failure_summary(c, path);
      }
    }
  }
  if (r.contains("witnesses") && !r["witnesses"].empty()) {
    path += ": " + r["witnesses"][0].dump();
  }
  return path;
}

int cmd_suite(Options const& opt, std::string const& which, SuiteConfig const& cfg) {
  std::vector<std::string> names = which == "all" ? suite_names() : std::vector<std::string>{which};
  json reports = json::array();
  bool all_ok = true;
  std::ostringstream text;
  for (auto const& n : names) {
    auto r = run_suite(n, cfg);
    all_ok = all_ok && r.passed;
    std::size_t good = 0;
    for (auto const& inst : r.report["instances"]) {
      good += inst.contains("report") && inst["report"]["status"] == "pass";
    }
    text << n << ": " << (r.passed ? "PASS" : "FAIL") << " (" << good << "/" << r.report["instances"].size()
         << " instances)\n";
    for (auto const& w : r.report["warnings"]) {
      text << "  warning: " << w.get<std::string>() << "\n";
    }
    if (!r.passed) {
      for (auto const& inst : r.report["instances"]) {
        if (inst.contains("error")) {
          text << "  instance " << inst["index"] << ": " << inst["error"].dump() << "\n";
        } else if (inst["report"]["status"] != "pass") {
          text << "  instance " << inst["index"] << " (" << inst["kind"].get<std::string>() << "): "
               << first_failure_summary(inst["report"]) << "\n";
        }
      }
    }
    reports.push_back(std::move(r.report));
  }
  if (opt.format == "json") {
    json out{{"schema_version", schema_version}, {"command", "suite"}, {"passed", all_ok}, {"suites", reports}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << text.str();
  }
  return all_ok ? ok : failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite category toolkit: coends, Kleisli bicategories, convolution, substitution"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--show-witnesses", opt.show_witnesses, "Print quotient classes and isomorphisms");

  std::string path, kind, which = "all", config_path, fault_name = "none";
  std::vector<std::string> names;
  std::size_t arity = 3;
  std::optional<std::size_t> m_bound;
  SuiteConfig cfg;

  auto* validate = app.add_subcommand("validate", "Load a document and validate every object");
  validate->add_option("file", path)->required();

  auto add_result_opts = [&](CLI::App* s) { s->add_option("--output", opt.output, "Write the result document"); };

  auto* compose = app.add_subcommand("compose", "Compose named objects: prof, kleisli, day or subst");
  compose->add_option("kind", kind)->required()->check(CLI::IsMember({"prof", "kleisli", "day", "subst"}));
  compose->add_option("file", path)->required();
  compose->add_option("names", names, "Objects in composition order (G F), or M p q for day")->required();
  compose->add_option("--max-arity", arity, "Output arity bound for subst");
  compose->add_option("--m-bound", m_bound, "Declared block bound when F has arity-0 values");
  add_result_opts(compose);

  auto* coend_cmd = app.add_subcommand("coend", "Coend of an endo-profunctor");
  coend_cmd->add_option("file", path)->required();
  coend_cmd->add_option("names", names)->required()->expected(1);

  auto* kan = app.add_subcommand("kan", "Left Kan extension of a presheaf along a profunctor");
  kan->add_option("file", path)->required();
  kan->add_option("names", names, "F p")->required()->expected(2);
  add_result_opts(kan);

  auto* day = app.add_subcommand("day", "Day convolution p * q over a monoidal structure");
  day->add_option("file", path)->required();
  day->add_option("names", names, "M p q")->required()->expected(3);
  add_result_opts(day);

  auto* subst = app.add_subcommand("subst", "Substitution G o F of symmetric sequences");
  subst->add_option("file", path)->required();
  subst->add_option("names", names, "G F")->required()->expected(2);
  subst->add_option("--max-arity", arity, "Output arity bound");
  subst->add_option("--m-bound", m_bound, "Declared block bound when F has arity-0 values");
  add_result_opts(subst);

  auto* suite = app.add_subcommand("suite", "Run a randomized coherence suite");
  std::vector<std::string> suite_choices = suite_names();
  suite_choices.push_back("all");
  suite->add_option("name", which)->check(CLI::IsMember(suite_choices));
  suite->add_option("--config", config_path, "JSON file with suite settings");
  suite->add_option("--seed", cfg.seed);
  suite->add_option("--instances", cfg.instances);
  suite->add_option("--max-objects", cfg.max_objects);
  suite->add_option("--max-values", cfg.max_values);
  suite->add_option("--max-arity", cfg.max_arity);
  suite->add_option("--threads", cfg.threads);
  suite->add_option("--fault", fault_name)->check(CLI::IsMember({"none", "mu", "eta", "theta", "unit"}));
  suite->add_flag("--timing", cfg.timing, "Record elapsed time per instance");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? ok : parse_error;
  }

  try {
    if (validate->parsed()) {
      return cmd_validate(opt, path);
    }
    if (suite->parsed()) {
      if (!config_path.empty()) {
        json c;
        try {
          c = json::parse(read_file(config_path));
        } catch (json::exception const& e) {
          throw ParseError(e.what());
        }
        cfg.seed = c.value("seed", cfg.seed);
        cfg.instances = c.value("instances", cfg.instances);
        cfg.max_objects = c.value("max_objects", cfg.max_objects);
        cfg.max_values = c.value("max_values", cfg.max_values);
        cfg.max_arity = c.value("max_arity", cfg.max_arity);
        cfg.threads = c.value("threads", cfg.threads);
        fault_name = c.value("fault", fault_name);
      }
      auto f = parse_fault(fault_name);
      if (!f) {
        throw ParseError("unknown fault '" + fault_name + "'");
      }
      cfg.fault = *f;
      return cmd_suite(opt, which, cfg);
    }
    auto ws = load_or_fail(path);
    auto need = [&](std::size_t n) {
      if (names.size() != n) {
        throw ParseError("expected " + std::to_string(n) + " names");
      }
    };
    if (compose->parsed()) {
      if (kind == "day") {
        need(3);
        return compose_day(opt, ws, names[0], names[1], names[2]);
      }
      need(2);
      if (kind == "subst") {
        return compose_subst(opt, ws, names[0], names[1], arity, m_bound);
      }
      return compose_prof(opt, ws, names[0], names[1], kind == "kleisli");
    }
    if (coend_cmd->parsed()) {
      return cmd_coend(opt, ws, names[0]);
    }
    if (kan->parsed()) {
      return cmd_kan(opt, ws, names[0], names[1]);
    }
    if (day->parsed()) {
      return compose_day(opt, ws, names[0], names[1], names[2]);
    }
    if (subst->parsed()) {
      return compose_subst(opt, ws, names[0], names[1], arity, m_bound);
    }
  } catch (ParseError const& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return parse_error;
  } catch (BoundExceeded const& e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
    return bound_exceeded;
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return failed;
  }
  return failed;
}
