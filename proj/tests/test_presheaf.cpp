#include <catch_amalgamated.hpp>

#include "ck/presheaf.hpp"
#include "ck/random.hpp"
#include "ck/seeds.hpp"

using namespace ck;

namespace {

// Number of connected components of the category of elements of p, by a
// plain graph search; this is the colimit of p.
std::size_t components_of_elements(Presheaf const& p) {
  auto const& X = p.base;
  std::vector<std::pair<Index, Index>> nodes;
  for (Index x = 0; x < X.num_objects(); ++x) {
    for (Index i = 0; i < p.values[x].size(); ++i) {
      nodes.emplace_back(x, i);
    }
  }
  auto id = [&](Index x, Index i) {
    return static_cast<std::size_t>(
        std::find(nodes.begin(), nodes.end(), std::make_pair(x, i)) - nodes.begin());
  };
  std::vector<std::vector<std::size_t>> adj(nodes.size());
  for (Index u = 0; u < X.num_morphisms(); ++u) {
    for (Index e = 0; e < p.values[X.tgt(u)].size(); ++e) {
      auto a = id(X.tgt(u), e);
      auto b = id(X.src(u), p.restrict[u].map[e]);
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  }
  std::vector<char> seen(nodes.size(), 0);
  std::size_t comps = 0;
  for (std::size_t s = 0; s < nodes.size(); ++s) {
    if (seen[s]) {
      continue;
    }
    ++comps;
    std::vector<std::size_t> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : adj[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return comps;
}

}  // namespace

TEST_CASE("yoneda values and full faithfulness") {
  auto T = seeds::terminal();
  auto yt = yoneda(T, 0);
  CHECK(yt.values[0].size() == 1);
  auto A = seeds::arrow();
  auto y1 = yoneda(A, 1);
  CHECK(y1.values[0].size() == 1);
  CHECK(y1.values[1].size() == 1);
  for (auto const& X : seeds::library()) {
    auto Y = yoneda_embedding(X);
    REQUIRE(validate_psh_functor(Y).ok());
    for (Index a = 0; a < X.num_objects(); ++a) {
      for (Index b = 0; b < X.num_objects(); ++b) {
        auto maps = all_psh_maps(Y.obj[a], Y.obj[b]);
        CHECK(maps.size() == X.hom(a, b).size());
        // each map is y(u) for exactly one u
        for (Index u : X.hom(a, b)) {
          CHECK(std::count(maps.begin(), maps.end(), Y.mor[u]) == 1);
        }
      }
    }
  }
}

TEST_CASE("kan_extend on discrete sources is a sum of products") {
  Rng rng(17);
  auto X = seeds::discrete(2);
  auto Y = seeds::arrow();
  for (int t = 0; t < 10; ++t) {
    auto F = random_psh_functor(rng, X, Y, 3);
    REQUIRE(validate_psh_functor(F).ok());
    auto p = random_presheaf(rng, X, 3);
    auto q = kan_extend(F, p);
    CHECK(validate_presheaf(q).ok());
    for (Index y = 0; y < Y.num_objects(); ++y) {
      std::size_t expect = 0;
      for (Index x = 0; x < X.num_objects(); ++x) {
        expect += F.obj[x].values[y].size() * p.values[x].size();
      }
      CHECK(q.values[y].size() == expect);
    }
    auto e = kan_extend(F, psh_initial(X));
    for (auto const& v : e.values) {
      CHECK(v.empty());
    }
  }
}

TEST_CASE("eta is invertible and natural") {
  Rng rng(23);
  for (auto const& X : seeds::small_library(3)) {
    for (auto const& Y : {seeds::arrow(), seeds::discrete(2), seeds::cyclic(2)}) {
      auto F = random_psh_functor(rng, X, Y, 2);
      REQUIRE(validate_psh_functor(F).ok());
      std::vector<Presheaf> Fy;
      std::vector<PshMap> eta;
      for (Index x = 0; x < X.num_objects(); ++x) {
        Fy.push_back(kan_extend(F, yoneda(X, x)));
        eta.push_back(eta_iso(F, x, Fy.back()));
        CHECK(psh_is_iso(eta.back()));
        CHECK(validate_psh_map(eta.back()).ok());
      }
      for (Index u = 0; u < X.num_morphisms(); ++u) {
        Index x = X.src(u);
        Index x1 = X.tgt(u);
        auto yu = yoneda_map(X, yoneda(X, x), yoneda(X, x1), u);
        auto lhs = psh_compose(kan_extend_map(F, yu, Fy[x], Fy[x1]), eta[x]);
        auto rhs = psh_compose(eta[x1], F.mor[u]);
        CHECK_FALSE(psh_difference(lhs, rhs));
      }
    }
  }
}

TEST_CASE("eta for the yoneda embedding reduces to co-Yoneda") {
  auto X = seeds::fork();
  auto Y = yoneda_embedding(X);
  for (Index x = 0; x < X.num_objects(); ++x) {
    auto e = eta_iso(Y, x);
    for (Index a = 0; a < X.num_objects(); ++a) {
      CHECK(e.components[a].is_bijective());
      CHECK(e.source.values[a] == X.hom_set(a, x));
    }
  }
}

TEST_CASE("apply_P_functor") {
  Rng rng(31);
  for (auto const& X : seeds::small_library(3)) {
    auto idf = identity_functor(X);
    for (int t = 0; t < 3; ++t) {
      auto p = random_presheaf(rng, X, 3);
      auto q = apply_P_functor(idf, p);
      for (Index x = 0; x < X.num_objects(); ++x) {
        CHECK(q.values[x].size() == p.values[x].size());
      }
    }
  }
  // constant functor at y0: Y[y, y0] × colim p
  auto X = seeds::fork();
  auto Y = seeds::chain(3);
  for (Index y0 = 0; y0 < Y.num_objects(); ++y0) {
    auto f = constant_functor(X, Y, Y.object(y0));
    for (int t = 0; t < 5; ++t) {
      auto p = random_presheaf(rng, X, 3);
      auto q = apply_P_functor(f, p);
      auto comps = components_of_elements(p);
      for (Index y = 0; y < Y.num_objects(); ++y) {
        CHECK(q.values[y].size() == Y.hom(y, y0).size() * comps);
      }
    }
  }
  // representables go to representables
  for (int t = 0; t < 10; ++t) {
    auto f = random_functor(rng, X, Y);
    REQUIRE(f);
    for (Index x = 0; x < X.num_objects(); ++x) {
      auto q = apply_P_functor(*f, yoneda(X, x));
      for (Index y = 0; y < Y.num_objects(); ++y) {
        CHECK(q.values[y].size() == Y.hom(y, f->obj[x]).size());
      }
    }
  }
}

TEST_CASE("pointwise limits") {
  auto X = seeds::arrow();
  auto one = psh_terminal(X);
  for (auto const& v : one.values) {
    CHECK(v.size() == 1);
  }
  Rng rng(41);
  for (int t = 0; t < 10; ++t) {
    auto p = random_presheaf(rng, seeds::fork(), 3);
    auto q = random_presheaf(rng, seeds::fork(), 3);
    auto P = psh_product(p, q);
    CHECK(validate_presheaf(P.prod).ok());
    for (Index x = 0; x < 3; ++x) {
      CHECK(P.prod.values[x].size() == p.values[x].size() * q.values[x].size());
    }
    auto pr = psh_pair(P.pi1, P.pi2, P);
    CHECK(pr == psh_identity(P.prod));
  }
  FinSet two{"0"_e, "1"_e};
  auto c2 = psh_constant(X, two);
  PshMap swap{c2, c2, {}};
  for (int i = 0; i < 2; ++i) {
    swap.components.push_back(FinFn::from_pairs(two, two, {{"0"_e, "1"_e}, {"1"_e, "0"_e}}));
  }
  REQUIRE(is_natural(swap));
  auto E = psh_equalizer(psh_identity(c2), swap);
  for (auto const& v : E.eq.values) {
    CHECK(v.empty());
  }
}

TEST_CASE("Yoneda preservation checks") {
  auto C = seeds::chain(3);  // meets are minima, top is terminal, bottom is initial
  CHECK(check_preserves_yoneda(LimitKind::terminal, C, {{"2"_e}, {}}).passed);
  CHECK(check_preserves_yoneda(LimitKind::binary_product, C,
                               {{"1"_e, "2"_e, "1"_e}, {"1<=1"_e, "1<=2"_e}})
            .passed);
  auto init = check_preserves_yoneda(LimitKind::initial, C, {{"0"_e}, {}});
  CHECK(init.applicable);
  CHECK_FALSE(init.passed);
  CHECK_FALSE(init.witnesses.empty());
  auto F = seeds::fork();
  CHECK(check_preserves_yoneda(LimitKind::equalizer, F, {{}, {"f"_e, "g"_e, "e"_e}}).passed);
  auto S = seeds::square();
  // the square is not a pullback in itself unless it is the only cone; check it reports
  auto pb = check_preserves_yoneda(LimitKind::pullback, S, {{}, {"r"_e, "s"_e, "p"_e, "q"_e}});
  CHECK(pb.passed);
}

TEST_CASE("Kan extension preservation checks") {
  Rng rng(53);
  auto C = seeds::chain(3);
  auto Fy = yoneda_embedding(C);
  CHECK(check_preserves_kan(LimitKind::terminal, Fy, {}).passed);
  CHECK(check_preserves_kan(LimitKind::initial, Fy, {}).passed);
  // x ↦ min(x, 1) into chain(2) preserves binary meets
  auto C2 = seeds::chain(2);
  auto f = Functor::tabulate(
      C, C2, [](Elem const& o) { return o == "2"_e ? "1"_e : o; },
      [](Elem const& m) {
        auto s = m.name();
        for (auto& ch : s) {
          if (ch == '2') {
            ch = '1';
          }
        }
        return Elem::atom(s);
      });
  REQUIRE(validate_functor(f).ok());
  auto Ff = psh_precompose(yoneda_embedding(C2), f);
  for (int t = 0; t < 8; ++t) {
    auto p = random_presheaf(rng, C, 2);
    auto q = random_presheaf(rng, C, 2);
    CHECK(check_preserves_kan(LimitKind::binary_product, Fy, {{p, q}, {}}).passed);
    CHECK(check_preserves_kan(LimitKind::binary_product, Ff, {{p, q}, {}}).passed);
  }
  // the fork counterexample
  auto fork = seeds::fork();
  auto one = seeds::terminal();
  auto G = fork_counterexample(fork, one);
  REQUIRE(validate_psh_functor(G).ok());
  auto L = fork_counterexample_sections(fork);
  for (auto const& m : L.maps) {
    REQUIRE(validate_psh_map(m).ok());
  }
  auto r = check_preserves_kan(LimitKind::equalizer, G, L);
  CHECK_FALSE(r.passed);
  REQUIRE_FALSE(r.witnesses.empty());
  CHECK(r.witnesses[0]["source_size"] == 2);
  CHECK(r.witnesses[0]["target_size"] == 1);
  // but G preserves the representable equalizer y(e) of (y f, y g)
  auto Yf = yoneda_embedding(fork);
  PshLimit rep{{}, {Yf.mor[fork.morphism_index("f"_e)], Yf.mor[fork.morphism_index("g"_e)]}};
  CHECK(check_preserves_kan(LimitKind::equalizer, G, rep).passed);
}

TEST_CASE("Kan extension sends coproducts to coproducts") {
  Rng rng(61);
  for (auto const& X : seeds::small_library(3)) {
    auto F = random_psh_functor(rng, X, seeds::arrow(), 2);
    auto p = random_presheaf(rng, X, 2);
    auto q = random_presheaf(rng, X, 2);
    auto S = psh_coproduct(p, q);
    REQUIRE(validate_presheaf(S.sum).ok());
    auto Fs = kan_extend(F, S.sum);
    auto Fp = kan_extend(F, p);
    auto Fq = kan_extend(F, q);
    auto i1 = kan_extend_map(F, S.in1, Fp, Fs);
    auto i2 = kan_extend_map(F, S.in2, Fq, Fs);
    for (Index y = 0; y < 2; ++y) {
      CHECK(Fs.values[y].size() == Fp.values[y].size() + Fq.values[y].size());
      CHECK(i1.components[y].is_injective());
      CHECK(i2.components[y].is_injective());
    }
  }
}
