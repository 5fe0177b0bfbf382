#pragma once

// Named randomized suites over the checkers. Instance i draws from its own
// stream, so reports do not depend on the thread count.
//
//   SuiteConfig cfg;
//   cfg.seed = 7;
//   cfg.threads = 4;
//   auto r = run_suite("relpsm-axioms", cfg);
//   std::cout << r.report.dump(2);

#include <atomic>
#include <chrono>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ck/day.hpp"
#include "ck/random.hpp"
#include "ck/relpsm.hpp"
#include "ck/serialize.hpp"
#include "ck/symmon.hpp"

namespace ck {

struct SuiteConfig {
  std::uint64_t seed = 1;
  std::size_t instances = 20;
  std::size_t max_objects = 3;
  std::size_t max_values = 2;
  std::size_t max_arity = 3;
  std::size_t threads = 1;
  Fault fault = Fault::none;
  bool timing = false;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  json report;
};

namespace detail {

// One unit of work: a description and the checks it ran.
struct SuiteInstance {
  std::string kind;  // "random" or "probe"
  std::function<std::pair<json, CheckReport>()> run;
};

inline std::vector<FinCat> suite_categories(std::size_t max_objects) {
  std::vector<FinCat> out;
  for (auto const& C : {seeds::terminal(), seeds::arrow(), seeds::discrete(2), seeds::cyclic(2),
                        seeds::parallel_pair(), seeds::chain(3)}) {
    if (C.num_objects() <= max_objects) {
      out.push_back(C);
    }
  }
  return out;
}

// Every value set of size ≥ 2, so that each corrupted component has two
// distinct images to exchange.
inline PshValuedFunctor rich_psh_functor(Rng& rng, FinCat const& X, FinCat const& Y,
                                         std::string const& prefix) {
  for (int t = 0; t < 500; ++t) {
    auto f = random_psh_functor(rng, X, Y, 3, prefix);
    bool rich = true;
    for (auto const& p : f.obj) {
      for (auto const& v : p.values) {
        rich = rich && v.size() >= 2;
      }
    }
    if (rich) {
      return f;
    }
  }
  throw InvalidData("no rich functor found between " + X.name() + " and " + Y.name());
}

inline json names(std::initializer_list<FinCat const*> cs) {
  json a = json::array();
  for (auto const* c : cs) {
    a.push_back(c->name());
  }
  return a;
}

inline std::vector<SuiteInstance> kleisli_instances(SuiteConfig const& cfg) {
  std::vector<SuiteInstance> out;
  auto cats = suite_categories(cfg.max_objects);
  PresheafRelPsm T(cfg.fault);
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    out.push_back({"random", [=] {
      Rng rng = Rng(cfg.seed).split(i);
      auto const& X = rng.pick(cats);
      auto const& Y = rng.pick(cats);
      auto const& Z = rng.pick(cats);
      auto const& W = rng.pick(cats);
      auto const& V = rng.pick(cats);
      auto f = random_psh_functor(rng, X, Y, cfg.max_values, "f");
      auto g = random_psh_functor(rng, Y, Z, cfg.max_values, "g");
      auto h = random_psh_functor(rng, Z, W, cfg.max_values, "h");
      auto k = random_psh_functor(rng, W, V, cfg.max_values, "k");
      CheckReport r("Kleisli coherence");
      r.add(check_pentagon(T, k, h, g, f));
      r.add(check_triangle(T, g, f));
      r.add(check_tau_composite(T, tau_inv(g), tau_inv(f)));
      return std::pair{json{{"categories", names({&X, &Y, &Z, &W, &V})}}, r};
    }});
  }
  if (cfg.instances > 0) {
    out.push_back({"probe", [=] {
      Rng rng = Rng(cfg.seed).split(cfg.instances);
      auto X = seeds::cyclic(2);
      auto Y = seeds::arrow();
      auto f = rich_psh_functor(rng, X, Y, "f");
      auto g = rich_psh_functor(rng, Y, X, "g");
      auto h = rich_psh_functor(rng, X, Y, "h");
      auto k = rich_psh_functor(rng, Y, X, "k");
      CheckReport r("Kleisli coherence");
      r.add(check_pentagon(T, k, h, g, f));
      r.add(check_triangle(T, g, f));
      return std::pair{json{{"categories", names({&X, &Y, &X, &Y, &X})}}, r};
    }});
  }
  return out;
}

inline std::vector<SuiteInstance> relpsm_instances(SuiteConfig const& cfg) {
  std::vector<SuiteInstance> out;
  auto cats = suite_categories(cfg.max_objects);
  PresheafRelPsm T(cfg.fault);
  auto run = [T](PshValuedFunctor const& f, PshValuedFunctor const& g,
                 PshValuedFunctor const& h, TestFamily const& fam) {
    CheckReport r("relative pseudomonad axioms");
    r.add(check_assoc_axiom(T, f, g, h, fam));
    r.add(check_unit_axiom(T, f, fam));
    r.add(check_derived_coherences(T, f, g, fam));
    return r;
  };
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    out.push_back({"random", [=] {
      Rng rng = Rng(cfg.seed).split(i);
      auto const& X = rng.pick(cats);
      auto const& Y = rng.pick(cats);
      auto const& Z = rng.pick(cats);
      auto const& V = rng.pick(cats);
      auto f = random_psh_functor(rng, X, Y, cfg.max_values, "f");
      auto g = random_psh_functor(rng, Y, Z, cfg.max_values, "g");
      auto h = random_psh_functor(rng, Z, V, cfg.max_values, "h");
      auto fam = default_family(X);
      fam.add("random", random_presheaf(rng, X, cfg.max_values, "p"));
      return std::pair{json{{"categories", names({&X, &Y, &Z, &V})}}, run(f, g, h, fam)};
    }});
  }
  if (cfg.instances > 0) {
    out.push_back({"probe", [=] {
      Rng rng = Rng(cfg.seed).split(cfg.instances);
      auto X = seeds::cyclic(2);
      auto f = rich_psh_functor(rng, X, X, "f");
      auto g = rich_psh_functor(rng, X, X, "g");
      auto h = rich_psh_functor(rng, X, X, "h");
      return std::pair{json{{"categories", names({&X, &X, &X, &X})}}, run(f, g, h, default_family(X))};
    }});
  }
  return out;
}

inline std::vector<SuiteInstance> lax_instances(SuiteConfig const& cfg) {
  std::vector<SuiteInstance> out;
  auto all = suite_categories(std::min<std::size_t>(cfg.max_objects, 2));
  PresheafRelPsm T(cfg.fault);
  std::size_t values = std::min<std::size_t>(cfg.max_values, 2);
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    out.push_back({"random", [=] {
      Rng rng = Rng(cfg.seed).split(i);
      auto const& X = rng.pick(all);
      auto const& Y = rng.pick(all);
      auto f = random_psh_functor(rng, X, Y, values, "f");
      auto g = random_psh_functor(rng, Y, X, values, "g");
      std::vector<PshValuedFunctor> comps{f, random_psh_functor(rng, X, Y, values, "h")};
      auto r = check_lax_idempotent(T, f, g, comps, default_family(X));
      return std::pair{json{{"categories", names({&X, &Y})}, {"competitors", comps.size()}}, r};
    }});
  }
  if (cfg.instances > 0) {
    out.push_back({"probe", [=] {
      auto X = seeds::cyclic(2);
      auto y = yoneda_embedding(X);
      auto r = check_lax_idempotent(T, y, y, {y}, default_family(X));
      return std::pair{json{{"categories", names({&X, &X})}, {"competitors", 1}}, r};
    }});
  }
  return out;
}

inline std::vector<SuiteInstance> day_instances(SuiteConfig const& cfg) {
  std::vector<SuiteInstance> out;
  std::vector<StrictMonoidalFinCat> lib;
  for (auto const& M : monoidal::library()) {
    if (M.size() <= cfg.max_objects) {
      lib.push_back(M);
    }
  }
  for (std::size_t i = 0; i < cfg.instances && !lib.empty(); ++i) {
    out.push_back({"random", [=] {
      Rng rng = Rng(cfg.seed).split(i);
      auto const& M = lib[i % lib.size()];
      auto const& A = M.base;
      auto p = random_presheaf(rng, A, cfg.max_values, "p");
      auto q = random_presheaf(rng, A, cfg.max_values, "q");
      auto s = random_presheaf(rng, A, cfg.max_values, "s");
      auto t = random_presheaf(rng, A, cfg.max_values, "t");
      auto a1 = static_cast<Index>(rng.below(A.num_objects()));
      auto a2 = static_cast<Index>(rng.below(A.num_objects()));
      CheckReport r("Day convolution");
      r.add(check_yoneda_strong_monoidal(M, a1, a2));
      r.add(check_convolution_unit(M, p));
      r.add(check_convolution_assoc(M, p, q, s, t));
      r.add(check_convolution_symmetry(M, p, q));
      return std::pair{json{{"monoidal", M.name}}, r};
    }});
  }
  return out;
}

inline std::vector<SuiteInstance> operad_instances(SuiteConfig const& cfg) {
  std::vector<SuiteInstance> out;
  std::vector<FinCat> cats;
  for (auto const& C : {seeds::terminal(), seeds::discrete(2), seeds::arrow()}) {
    if (C.num_objects() <= cfg.max_objects) {
      cats.push_back(C);
    }
  }
  std::size_t arity = std::min<std::size_t>(cfg.max_arity, 3);
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    out.push_back({"random", [=] {
      Rng rng = Rng(cfg.seed).split(i);
      auto const& X = rng.pick(cats);
      auto const& Y = rng.pick(cats);
      auto const& Z = rng.pick(cats);
      auto const& W = rng.pick(cats);
      // Multi-colour instances stay at arity 2 to keep S(X) small.
      bool single = X.num_objects() == 1 && Y.num_objects() == 1 && Z.num_objects() == 1;
      std::size_t n = single ? arity : std::min<std::size_t>(arity, 2);
      auto F = random_symseq(rng, free_sym_cat(X, n), Y, cfg.max_values);
      auto G = random_symseq(rng, free_sym_cat(Y, n), Z, cfg.max_values);
      auto H = random_symseq(rng, free_sym_cat(Z, n), W, cfg.max_values);
      CheckReport r("substitution");
      r.add(check_subst_unit(F, n));
      r.add(check_subst_assoc(H, G, F, n));
      r.add(check_subst_kleisli(G, F, n));
      r.note("unit and associativity cells are constructed");
      return std::pair{json{{"categories", names({&X, &Y, &Z, &W})}, {"arity", n}}, r};
    }});
  }
  if (cfg.instances > 0) {
    for (std::string which : {"terminal", "associative"}) {
      out.push_back({"probe", [=] {
        auto P = which == "terminal" ? operads::terminal(arity) : operads::associative(arity);
        return std::pair{json{{"operad", which}, {"arity", arity}}, check_operad(P)};
      }});
    }
  }
  return out;
}

}  // namespace detail

inline std::vector<std::string> suite_names() {
  return {"kleisli-coherence", "relpsm-axioms", "lax-idempotent", "day-monoidal", "operad"};
}

inline json to_json(SuiteConfig const& cfg) {
  return {{"seed", cfg.seed},           {"instances", cfg.instances}, {"max_objects", cfg.max_objects},
          {"max_values", cfg.max_values}, {"max_arity", cfg.max_arity}, {"fault", to_string(cfg.fault)}};
}

inline SuiteResult run_suite(std::string const& name, SuiteConfig const& cfg) {
  std::vector<detail::SuiteInstance> work;
  if (name == "kleisli-coherence") {
    work = detail::kleisli_instances(cfg);
  } else if (name == "relpsm-axioms") {
    work = detail::relpsm_instances(cfg);
  } else if (name == "lax-idempotent") {
    work = detail::lax_instances(cfg);
  } else if (name == "day-monoidal") {
    work = detail::day_instances(cfg);
  } else if (name == "operad") {
    work = detail::operad_instances(cfg);
  } else {
    throw InvalidData("unknown suite '" + name + "'");
  }

  std::vector<json> slots(work.size());
  std::vector<char> ok(work.size(), 1);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < work.size(); i = next++) {
      auto start = std::chrono::steady_clock::now();
      json entry{{"index", i}, {"kind", work[i].kind}};
      try {
        auto [desc, rep] = work[i].run();
        entry["description"] = desc;
        entry["report"] = to_json(rep);
        ok[i] = rep.passed;
      } catch (BoundExceeded const& e) {
        entry["error"] = {{"bound_exceeded", e.what()}};
        ok[i] = 0;
      } catch (Error const& e) {
        entry["error"] = {{"message", e.what()}};
        ok[i] = 0;
      }
      if (cfg.timing) {
        entry["elapsed_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      }
      slots[i] = std::move(entry);
    }
  };
  std::size_t nthreads = std::max<std::size_t>(1, std::min(cfg.threads, work.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < nthreads; ++t) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& t : pool) {
    t.join();
  }

  SuiteResult res{name, true, {}};
  json instances = json::array();
  for (std::size_t i = 0; i < work.size(); ++i) {
    res.passed = res.passed && ok[i];
    instances.push_back(std::move(slots[i]));
  }
  json warnings = json::array();
  if (work.empty()) {
    warnings.push_back("no instances were run");
  }
  res.report = {{"schema_version", schema_version},
                {"suite", name},
                {"config", to_json(cfg)},
                {"passed", res.passed},
                {"instances", instances},
                {"warnings", warnings}};
  return res;
}

}  // namespace ck
