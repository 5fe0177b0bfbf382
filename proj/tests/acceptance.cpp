// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   ./acceptance            all criteria
//   ./acceptance 5 9        only criteria 5 and 9

#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "ck/suites.hpp"

using namespace ck;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, std::string const& what) {
    if (!ok) {
      if (passed) {
        detail << "failed: ";
      } else {
        detail << "; ";
      }
      detail << what;
      passed = false;
    }
  }
};

struct SuiteCount {
  std::size_t random = 0;
  std::size_t failures = 0;
};

SuiteCount count(SuiteResult const& r) {
  SuiteCount c;
  for (auto const& inst : r.report["instances"]) {
    c.random += inst["kind"] == "random";
    c.failures += inst.contains("error") || inst["report"]["status"] != "pass";
  }
  return c;
}

// First witness on the path to the first failing leaf, if any.
std::optional<std::pair<std::string, json>> failing_witness(json const& r) {
  if (r.contains("checks")) {
    for (auto const& c : r["checks"]) {
      if (c["status"] == "fail") {
        if (auto w = failing_witness(c)) {
          return w;
        }
      }
    }
  }
  if (r["status"] == "fail" && r.contains("witnesses") && !r["witnesses"].empty()) {
    return std::pair{r["name"].get<std::string>(), r["witnesses"][0]};
  }
  return std::nullopt;
}

SuiteConfig base_config(std::size_t instances) {
  SuiteConfig cfg;
  cfg.seed = 20240601;
  cfg.instances = instances;
  return cfg;
}

void suite_clean(Outcome& o, std::string const& name, SuiteConfig const& cfg, std::size_t min_random) {
  auto r = run_suite(name, cfg);
  auto c = count(r);
  o.require(c.random >= min_random, name + " ran only " + std::to_string(c.random) + " random instances");
  o.require(c.failures == 0 && r.passed, name + " had " + std::to_string(c.failures) + " failing instances");
  o.detail << name << ": " << r.report["instances"].size() << " instances (" << c.random << " random), "
           << c.failures << " failures. ";
}

void require_report(Outcome& o, CheckReport const& r, std::string const& what) {
  o.require(r.passed, what + ": " + to_json(r).dump());
}

// Profunctor between discrete categories with |H(y, x)| = m[y][x].
Profunctor matrix_prof(FinCat const& Y, FinCat const& X, std::vector<std::vector<std::size_t>> const& m,
                       std::string const& prefix) {
  return Bifunctor::tabulate(
      Y, X,
      [&](Index y, Index x) {
        std::vector<Elem> v;
        for (std::size_t i = 0; i < m[y][x]; ++i) {
          v.push_back(Elem::atom(prefix + std::to_string(y) + std::to_string(x) + "_" + std::to_string(i)));
        }
        return FinSet(v);
      },
      [](Index, Index, Elem const& e) { return e; }, [](Index, Index, Elem const& e) { return e; });
}

using Matrix = std::vector<std::vector<std::size_t>>;

Matrix matmul(Matrix const& a, Matrix const& b) {
  Matrix c(a.size(), std::vector<std::size_t>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      for (std::size_t j = 0; j < b[0].size(); ++j) {
        c[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return c;
}

Matrix cardinalities(Profunctor const& H) {
  Matrix m(H.contra.num_objects(), std::vector<std::size_t>(H.co.num_objects()));
  for (Index a = 0; a < H.contra.num_objects(); ++a) {
    for (Index b = 0; b < H.co.num_objects(); ++b) {
      m[a][b] = H.at(a, b).size();
    }
  }
  return m;
}

std::string show(Matrix const& m) {
  return json(m).dump();
}

void criterion1(Outcome& o) {
  auto cfg = base_config(20);
  suite_clean(o, "kleisli-coherence", cfg, 20);
}

void criterion2(Outcome& o) {
  auto cfg = base_config(20);
  suite_clean(o, "relpsm-axioms", cfg, 20);
  // The derived coherences are checked as separate children of every instance.
  auto r = run_suite("relpsm-axioms", cfg);
  std::size_t derived = 0;
  for (auto const& inst : r.report["instances"]) {
    for (auto const& c : inst["report"]["checks"]) {
      derived += c["checks"].is_array() && c["checks"].size() == 3 && c["status"] == "pass"
                 && c["name"].get<std::string>().find("derived") != std::string::npos;
    }
  }
  o.require(derived >= 20, "derived coherences ran on " + std::to_string(derived) + " instances");
  o.detail << "derived coherences passed separately on " << derived << " instances.";
}

void criterion3(Outcome& o) {
  auto cfg = base_config(6);
  suite_clean(o, "lax-idempotent", cfg, 5);
}

void criterion4(Outcome& o) {
  PresheafRelPsm T;
  Rng rng(404);
  std::vector<FinCat> cats{seeds::terminal(), seeds::arrow(), seeds::discrete(2), seeds::cyclic(2),
                           seeds::parallel_pair()};
  std::size_t n = 0;
  for (int i = 0; i < 12; ++i) {
    auto const& X = rng.pick(cats);
    auto const& Y = rng.pick(cats);
    auto const& Z = rng.pick(cats);
    auto f = random_psh_functor(rng, X, Y, 2, "f");
    auto g = random_psh_functor(rng, Y, Z, 2, "g");
    auto F = tau_inv(f);
    auto G = tau_inv(g);
    auto f2 = tau(F);
    bool round = tau_inv(f2) == F;
    for (Index x = 0; x < X.num_objects(); ++x) {
      round = round && f2.obj[x] == f.obj[x];
    }
    for (Index u = 0; u < X.num_morphisms(); ++u) {
      round = round && f2.mor[u] == f.mor[u];
    }
    o.require(round, "tau round trip differs on " + X.name() + " -> " + Y.name());
    require_report(o, check_tau_composite(T, G, F), "tau composite");
    ++n;
  }
  o.detail << n << " instances: round trips label-exact, Kleisli composite bijective with coend composite.";
}

void criterion5(Outcome& o) {
  auto D2 = seeds::discrete(2);
  auto F = matrix_prof(D2, D2, {{1, 2}, {0, 1}}, "f");
  auto G = matrix_prof(D2, D2, {{1, 1}, {2, 0}}, "g");
  auto H = cardinalities(prof_compose(G, F));
  o.require(H == Matrix{{1, 3}, {2, 4}}, "matrix instance gave " + show(H));
  o.detail << "matrix instance " << show(H) << ". ";

  Rng rng(505);
  std::size_t prof_cases = 0;
  for (std::size_t a = 1; a <= 3; ++a) {
    for (std::size_t b = 1; b <= 3; ++b) {
      for (std::size_t c = 1; c <= 3; ++c) {
        auto rand = [&](std::size_t r, std::size_t s) {
          Matrix m(r, std::vector<std::size_t>(s));
          for (auto& row : m) {
            for (auto& v : row) {
              v = rng.below(4);
            }
          }
          return m;
        };
        auto mf = rand(b, a);
        auto mg = rand(c, b);
        auto P = prof_compose(matrix_prof(seeds::discrete(c), seeds::discrete(b), mg, "g"),
                              matrix_prof(seeds::discrete(b), seeds::discrete(a), mf, "f"));
        o.require(cardinalities(P) == matmul(mg, mf), "matrix product mismatch " + show(mg) + show(mf));
        ++prof_cases;
      }
    }
  }

  struct Graded {
    StrictMonoidalFinCat M;
    std::vector<std::string> names;
    std::function<std::size_t(std::size_t, std::size_t)> mul;
  };
  std::vector<Graded> cases{
      {monoidal::discrete_cyclic(2), {"g0", "g1"}, [](auto i, auto j) { return (i + j) % 2; }},
      {monoidal::discrete_cyclic(3), {"g0", "g1", "g2"}, [](auto i, auto j) { return (i + j) % 3; }},
      {monoidal::discrete_left_zero(), {"1", "a", "b"}, [](auto i, auto j) { return i == 0 ? j : i; }}};
  std::size_t day_cases = 0;
  for (auto const& [M, names, mul] : cases) {
    auto const& A = M.base;
    auto at = [&](std::size_t i) { return A.object_index(Elem::atom(names[i])); };
    for (int t = 0; t < 10; ++t) {
      auto p = random_presheaf(rng, A, 3, "p");
      auto q = random_presheaf(rng, A, 3, "q");
      auto pq = day_convolve(M, p, q);
      for (std::size_t m = 0; m < names.size(); ++m) {
        std::size_t sum = 0;
        for (std::size_t i = 0; i < names.size(); ++i) {
          for (std::size_t j = 0; j < names.size(); ++j) {
            sum += mul(i, j) == m ? p.values[at(i)].size() * q.values[at(j)].size() : 0;
          }
        }
        o.require(pq.values[at(m)].size() == sum, M.name + " graded convolution mismatch at " + names[m]);
      }
      ++day_cases;
    }
  }
  o.detail << prof_cases << " random matrix products, " << day_cases << " graded convolutions.";
}

void criterion6(Outcome& o) {
  Rng rng(606);
  std::size_t cy = 0;
  for (auto const& Y : seeds::library()) {
    for (int t = 0; t < 3; ++t) {
      auto p = random_presheaf(rng, Y, 3);
      auto F = as_covariant(random_presheaf(rng, opposite(Y), 3));
      F.base = Y;
      for (Index x = 0; x < Y.num_objects(); ++x) {
        auto a = coyoneda_contravariant(p, x);
        auto b = coyoneda_covariant(F, x);
        o.require(a.map.is_bijective() && a.coend.value().size() == p.values[x].size(),
                  "contravariant co-Yoneda on " + Y.name());
        o.require(b.map.is_bijective() && b.coend.value().size() == F.values[x].size(),
                  "covariant co-Yoneda on " + Y.name());
        cy += 2;
      }
    }
  }
  std::size_t fu = 0;
  auto small = seeds::small_library(2);
  for (auto const& Y : small) {
    for (auto const& Z : small) {
      auto P = product(Y, Z);
      auto B = random_presheaf(rng, P, 3, "b");
      auto Aop = random_presheaf(rng, opposite(P), 3, "a");
      auto H = Bifunctor::tabulate(
          P, P, [&](Index p1, Index p) { return product_set(Aop.values[p], B.values[p1]); },
          [&](Index g, Index, Elem const& e) { return Elem::tuple({e[0], B.restrict[g](e[1])}); },
          [&](Index, Index f, Elem const& e) { return Elem::tuple({Aop.restrict[f](e[0]), e[1]}); });
      auto fb = fubini_iso(Y, Z, H);
      o.require(fb.joint_to_yz.is_bijective() && fb.joint_to_zy.is_bijective()
                    && compose(fb.joint_to_yz, fb.joint_to_zy.inverse()) == fb.zy_to_yz,
                "Fubini on " + Y.name() + " x " + Z.name());
      ++fu;
    }
  }
  o.detail << cy << " co-Yoneda bijections over " << seeds::library().size() << " seed categories, " << fu
           << " Fubini triples.";
}

void criterion7(Outcome& o) {
  std::size_t pos = 0;
  for (std::size_t n : {1, 2, 3}) {
    auto C = seeds::chain(n);
    auto lbl = [](std::size_t i, std::size_t j) { return Elem::atom(std::to_string(i) + "<=" + std::to_string(j)); };
    require_report(o, check_preserves_yoneda(LimitKind::terminal, C, {{Elem::atom(static_cast<long long>(n - 1))}, {}}),
                   "yoneda terminal on " + C.name());
    ++pos;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::size_t m = std::min(i, j);
        require_report(o,
                       check_preserves_yoneda(LimitKind::binary_product, C,
                                              {{Elem::atom(static_cast<long long>(m)), Elem::atom(static_cast<long long>(i)),
                                                Elem::atom(static_cast<long long>(j))},
                                               {lbl(m, i), lbl(m, j)}}),
                       "yoneda product on " + C.name());
        ++pos;
      }
    }
  }
  Rng rng(707);
  auto C = seeds::chain(3);
  auto C2 = seeds::chain(2);
  auto f = Functor::tabulate(
      C, C2, [](Elem const& ob) { return ob == "2"_e ? "1"_e : ob; },
      [](Elem const& m) {
        auto s = m.name();
        for (auto& ch : s) {
          ch = ch == '2' ? '1' : ch;
        }
        return Elem::atom(s);
      });
  std::vector<PshValuedFunctor> fs{yoneda_embedding(C), psh_precompose(yoneda_embedding(C2), f)};
  for (auto const& F : fs) {
    require_report(o, check_preserves_kan(LimitKind::terminal, F, {}), "extension terminal");
    ++pos;
    for (int t = 0; t < 6; ++t) {
      auto p = random_presheaf(rng, C, 2);
      auto q = random_presheaf(rng, C, 2);
      require_report(o, check_preserves_kan(LimitKind::binary_product, F, {{p, q}, {}}), "extension product");
      ++pos;
    }
  }
  auto init = check_preserves_yoneda(LimitKind::initial, C, {{"0"_e}, {}});
  o.require(init.applicable && !init.passed && !init.witnesses.empty(), "yoneda unexpectedly preserves the initial object");
  auto fork = seeds::fork();
  auto G = fork_counterexample(fork, seeds::terminal());
  auto eq = check_preserves_kan(LimitKind::equalizer, G, fork_counterexample_sections(fork));
  bool fork_ok = !eq.passed && !eq.witnesses.empty() && eq.witnesses[0]["source_size"] == 2
                 && eq.witnesses[0]["target_size"] == 1;
  o.require(fork_ok, "fork counterexample did not fail as expected: " + to_json(eq).dump());
  o.detail << pos << " positive cases pass; initial object not preserved";
  if (fork_ok) {
    o.detail << "; fork equalizer compared " << eq.witnesses[0]["source_size"] << " against "
             << eq.witnesses[0]["target_size"] << ".";
  }
}

void criterion8(Outcome& o) {
  std::size_t y = 0;
  for (auto const& M : monoidal::library()) {
    for (Index a1 = 0; a1 < M.size(); ++a1) {
      for (Index a2 = 0; a2 < M.size(); ++a2) {
        require_report(o, check_yoneda_strong_monoidal(M, a1, a2), "yoneda strong monoidal on " + M.name);
        ++y;
      }
    }
  }
  auto cfg = base_config(21);
  cfg.max_objects = 4;
  cfg.max_values = 3;
  suite_clean(o, "day-monoidal", cfg, 21);
  o.detail << y << " strong monoidal checks for y over " << monoidal::library().size() << " monoidal seeds.";
}

void criterion9(Outcome& o) {
  auto S = free_sym_cat(seeds::discrete(2), 2);
  o.require(S.cat.num_objects() == 7, "S(discrete(2)) at bound 2 has " + std::to_string(S.cat.num_objects()) + " objects");
  std::size_t fact = 1;
  auto S1 = free_sym_cat(seeds::terminal(), 4);
  for (std::size_t k = 0; k <= 4; ++k) {
    fact *= k == 0 ? 1 : k;
    auto o1 = S1.object(std::vector<Elem>(k, "*"_e));
    o.require(S1.cat.hom(o1, o1).size() == fact, "endomorphisms of a length " + std::to_string(k) + " tuple");
  }
  Rng rng(909);
  std::vector<FinCat> cats{seeds::terminal(), seeds::discrete(2), seeds::arrow()};
  for (int t = 0; t < 6; ++t) {
    auto const& X = rng.pick(cats);
    auto const& Y = rng.pick(cats);
    std::size_t n = X.num_objects() == 1 && Y.num_objects() == 1 ? 3 : 2;
    auto F = random_symseq(rng, free_sym_cat(X, n), Y, 2);
    require_report(o, check_subst_unit(F, n), "substitution unit");
  }
  for (auto const& P : {operads::terminal(3), operads::associative(3)}) {
    require_report(o, check_operad(P), P.name + " operad");
  }
  auto cfg = base_config(8);
  suite_clean(o, "operad", cfg, 5);
  o.detail << "7 objects at bound 2, k! endomorphisms for k <= 4, terminal and associative operads pass.";
}

void criterion10(Outcome& o) {
  for (auto f : {Fault::mu, Fault::eta, Fault::theta, Fault::unit}) {
    auto cfg = base_config(3);
    cfg.fault = f;
    std::vector<std::string> caught;
    std::string witness;
    for (auto const& name : suite_names()) {
      auto r = run_suite(name, cfg);
      if (r.passed) {
        continue;
      }
      for (auto const& inst : r.report["instances"]) {
        if (!inst.contains("report")) {
          continue;
        }
        if (auto w = failing_witness(inst["report"])) {
          caught.push_back(name);
          if (witness.empty()) {
            witness = w->first;
          }
          break;
        }
      }
    }
    o.require(!caught.empty(), "fault " + to_string(f) + " was not caught with a witness");
    o.detail << to_string(f) << " caught by " << caught.size() << " suites (" << witness << "). ";
  }
}

void criterion11(Outcome& o) {
  for (auto const& name : suite_names()) {
    auto cfg = base_config(8);
    cfg.threads = 1;
    auto a = run_suite(name, cfg).report.dump();
    cfg.threads = 4;
    auto b = run_suite(name, cfg).report.dump();
    o.require(a == b, name + " report differs between 1 and 4 threads");
  }
  o.detail << "reports of all " << suite_names().size() << " suites are byte-identical at 1 and 4 threads.";
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"Kleisli bicategory coherence", criterion1},
      {"relative pseudomonad axioms and derived coherences", criterion2},
      {"lax idempotency", criterion3},
      {"profunctors as Kleisli morphisms", criterion4},
      {"discrete oracles", criterion5},
      {"co-Yoneda and Fubini", criterion6},
      {"limit preservation", criterion7},
      {"Day convolution", criterion8},
      {"symmetric sequences and operads", criterion9},
      {"fault injection", criterion10},
      {"determinism", criterion11},
  };
  std::set<std::size_t> only;
  for (int i = 1; i < argc; ++i) {
    only.insert(std::stoul(argv[i]));
  }
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(i + 1)) {
      continue;
    }
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (std::exception const& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    all = all && o.passed;
    std::printf("%s %2zu  %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
