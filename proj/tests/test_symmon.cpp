#include <catch_amalgamated.hpp>

#include "ck/symmon.hpp"

using namespace ck;

namespace {

std::size_t factorial(std::size_t k) { return k <= 1 ? 1 : k * factorial(k - 1); }

// Σ_σ Π_i |X[x_i, x'_σ(i)]|
std::size_t hom_oracle(FinCat const& X, Elem const& s, Elem const& t) {
  if (s.size() != t.size()) {
    return 0;
  }
  Perm p = sym::identity_perm(s.size());
  std::size_t total = 0;
  do {
    std::size_t prod = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
      prod *= X.hom(X.object_index(s[i]), X.object_index(t[p[i]])).size();
    }
    total += prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// Orbit count for single-colour substitution: tuples (g, (B_i, f_i)) with
// (B_i) an ordered partition of {0..k-1} into nonempty blocks and
// f_i ∈ F[|B_i|], modulo Σ_m moving block i to σ(i).
std::size_t species_oracle(SymSeq const& G, SymSeq const& F, std::size_t k) {
  auto const& SG = G.source;
  auto const& SF = F.source;
  Elem star = SF.base.object(0);
  auto stars = [&](std::size_t n) { return Elem::tuple(std::vector<Elem>(n, star)); };
  QuotientBuilder qb;
  std::vector<Elem> all;
  // Assign each of the k points a block number, blocks all nonempty.
  for (std::size_t m = 1; m <= k; ++m) {
    std::vector<std::size_t> a(k, 0);
    for (;;) {
      std::vector<std::vector<Elem>> blocks(m);
      for (std::size_t i = 0; i < k; ++i) {
        blocks[a[i]].push_back(Elem::atom(static_cast<long long>(i)));
      }
      bool ok = std::all_of(blocks.begin(), blocks.end(), [](auto const& b) { return !b.empty(); });
      if (ok) {
        auto const& gs = G.data.at(SG.cat.object_index(stars(m)), 0);
        std::vector<FinSet const*> fsets;
        for (auto const& b : blocks) {
          fsets.push_back(&F.data.at(SF.cat.object_index(stars(b.size())), 0));
        }
        std::vector<std::size_t> pick(m, 0);
        bool empty = std::any_of(fsets.begin(), fsets.end(), [](auto p) { return p->empty(); });
        while (!empty) {
          for (auto const& g : gs) {
            std::vector<Elem> parts;
            for (std::size_t i = 0; i < m; ++i) {
              parts.push_back(Elem::tuple({Elem::tuple(blocks[i]), (*fsets[i])[pick[i]]}));
            }
            Elem e = Elem::tuple({g, Elem::tuple(parts)});
            qb.add(e);
            all.push_back(e);
          }
          std::size_t i = 0;
          while (i < m && ++pick[i] == fsets[i]->size()) {
            pick[i++] = 0;
          }
          if (i == m) {
            break;
          }
        }
      }
      std::size_t i = 0;
      while (i < k && ++a[i] == m) {
        a[i++] = 0;
      }
      if (i == k) {
        break;
      }
    }
  }
  for (auto const& e : all) {
    auto const& parts = e[1].items();
    std::size_t m = parts.size();
    Index o = SG.cat.object_index(stars(m));
    for (Index w : SG.cat.hom(o, o)) {
      Perm s = sym::perm_of(SG.cat.label(w));
      std::vector<Elem> moved(m);
      for (std::size_t i = 0; i < m; ++i) {
        moved[s[i]] = parts[i];
      }
      // (G(w) g', parts) ~ (g', moved parts), with g' running over G[m].
      auto const& act = G.data.left_action(w, 0);
      for (Index gi = 0; gi < act.dom.size(); ++gi) {
        if (act.cod[act.map[gi]] == e[0]) {
          qb.unite(e, Elem::tuple({act.dom[gi], Elem::tuple(moved)}));
        }
      }
    }
  }
  return qb.build().value.size();
}

struct PieceSpec {
  bool point;
  std::size_t k;
  std::vector<Index> abar;
  Index b;
};

std::vector<PieceSpec> random_specs(Rng& rng, FinCat const& X, FinCat const& Y, std::size_t n,
                                    std::size_t count) {
  std::vector<PieceSpec> out;
  for (std::size_t i = 0; i < count; ++i) {
    PieceSpec p{rng.below(3) == 0, rng.between(1, n), {}, static_cast<Index>(rng.below(Y.num_objects()))};
    for (std::size_t j = 0; j < p.k; ++j) {
      p.abar.push_back(static_cast<Index>(rng.below(X.num_objects())));
    }
    out.push_back(p);
  }
  return out;
}

SymSeq build(std::vector<PieceSpec> const& specs, FinCat const& X, FinCat const& Y, std::size_t n) {
  auto S = free_sym_cat(X, n);
  std::vector<SymSeq> parts;
  for (auto const& p : specs) {
    if (p.point) {
      parts.push_back(point_symseq(S, Y, p.k));
    } else {
      std::vector<Elem> a;
      for (Index i : p.abar) {
        a.push_back(X.object(i));
      }
      parts.push_back(representable_symseq(S, Y, Elem::tuple(a), Y.object(p.b)));
    }
  }
  return symseq_sum(parts);
}

std::vector<FinCat> colours() { return {seeds::terminal(), seeds::discrete(2), seeds::arrow()}; }

}  // namespace

TEST_CASE("free symmetric monoidal category on small bases") {
  auto S = free_sym_cat(seeds::discrete(2), 2);
  CHECK(S.cat.num_objects() == 7);
  CHECK(validate_category(S.cat).ok());
  for (Index o : S.by_len[2]) {
    auto const& t = S.cat.object(o);
    if (t[0] == t[1]) {
      CHECK(S.cat.hom(o, o).size() == factorial(2));
    }
  }
  auto X = seeds::arrow();
  auto S3 = free_sym_cat(X, 3);
  CHECK(S3.cat.num_objects() == 15);
  CHECK(validate_category(S3.cat).ok());
  for (Index a = 0; a < S3.cat.num_objects(); ++a) {
    for (Index b = 0; b < S3.cat.num_objects(); ++b) {
      CHECK(S3.cat.hom(a, b).size() == hom_oracle(X, S3.cat.object(a), S3.cat.object(b)));
    }
  }
  auto T = free_sym_cat(seeds::terminal(), 3);
  CHECK(T.cat.hom(T.by_len[3][0], T.by_len[3][0]).size() == 6);
}

TEST_CASE("unit and flattening satisfy the monad laws") {
  for (auto const& X : {seeds::arrow(), seeds::discrete(2)}) {
    auto S = free_sym_cat(X, 3);
    auto e = sym_unit(S);
    CHECK(validate_functor(e).ok());
    auto const& C = S.cat;
    for (Index o = 0; o < C.num_objects(); ++o) {
      Elem t = C.object(o);
      std::vector<Elem> singles;
      for (auto const& x : t.items()) {
        singles.push_back(Elem::tuple({x}));
      }
      CHECK(flatten_object(Elem::tuple({t}), 3) == t);
      CHECK(flatten_object(Elem::tuple(singles), 3) == t);
    }
    for (Index w = 0; w < C.num_morphisms(); ++w) {
      Elem m = C.label(w);
      // outer unit: (w) as a one-block morphism
      CHECK(flatten_morphism(sym::mor_label({0}, {m}), 3) == m);
      // S(e): each component becomes a one-element block
      std::vector<Elem> blocks;
      for (auto const& f : sym::comps_of(m)) {
        blocks.push_back(sym::mor_label({0}, {f}));
      }
      CHECK(flatten_morphism(sym::mor_label(sym::perm_of(m), blocks), 3) == m);
    }
  }
}

TEST_CASE("flattening is associative") {
  Rng rng(3);
  auto X = seeds::arrow();
  auto S = free_sym_cat(X, 3);
  auto const& C = S.cat;
  auto random_perm = [&](std::size_t k) {
    Perm p = sym::identity_perm(k);
    for (std::size_t i = k; i > 1; --i) {
      std::swap(p[i - 1], p[rng.below(i)]);
    }
    return p;
  };
  // A random S(S(X)) morphism of total length ≤ budget.
  auto nested = [&](std::size_t budget) {
    std::size_t m = rng.between(0, 2);
    std::vector<Elem> blocks;
    std::size_t used = 0;
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t len = rng.between(0, budget - used);
      used += len;
      blocks.push_back(C.label(rng.pick(C.hom(S.by_len[len][0], S.by_len[len][0]))));
    }
    return std::pair{sym::mor_label(random_perm(m), blocks), used};
  };
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t budget = 3;
    std::size_t m = rng.between(1, 3);
    std::vector<Elem> outer;
    for (std::size_t j = 0; j < m; ++j) {
      auto [n, used] = nested(budget);
      budget -= used;
      outer.push_back(n);
    }
    Elem T = sym::mor_label(random_perm(m), outer);
    // μ ∘ μS; the inner flattening counts S(X)-blocks, so its bound is loose.
    Elem a = flatten_morphism(flatten_morphism(T, 9), 3);
    // μ ∘ Sμ
    std::vector<Elem> inner;
    for (auto const& n : outer) {
      inner.push_back(flatten_morphism(n, 3));
    }
    Elem b = flatten_morphism(sym::mor_label(sym::perm_of(T), inner), 3);
    CHECK(a == b);
    CHECK(C.morphism_index(a) < C.num_morphisms());
  }
}

TEST_CASE("flattening past the bound raises BoundExceeded") {
  auto t = Elem::tuple({Elem::tuple({"a"_e, "a"_e}), Elem::tuple({"a"_e, "a"_e})});
  CHECK_THROWS_AS(flatten_object(t, 3), BoundExceeded);
  CHECK(flatten_object(t, 4).size() == 4);
}

TEST_CASE("generated symmetric sequences are valid") {
  Rng rng(5);
  for (auto const& X : colours()) {
    for (auto const& Y : colours()) {
      auto S = free_sym_cat(X, 2);
      auto F = random_symseq(rng, S, Y, 3);
      auto v = validate_symseq(F);
      INFO((v.ok() ? std::string() : v.violations.front()));
      CHECK(v.ok());
      CHECK(check_sigma_action(F).ok());
    }
    auto I = subst_identity(X, 2);
    CHECK(validate_symseq(I).ok());
    for (Index o = 0; o < I.source.cat.num_objects(); ++o) {
      for (Index y = 0; y < X.num_objects(); ++y) {
        std::size_t expect = I.source.length(o) == 1
                                 ? X.hom(X.object_index(I.source.cat.object(o)[0]), y).size()
                                 : 0;
        CHECK(I.data.at(o, y).size() == expect);
      }
    }
  }
}

TEST_CASE("substitution has two-sided units") {
  Rng rng(7);
  for (auto const& X : colours()) {
    for (auto const& Y : colours()) {
      auto F = random_symseq(rng, free_sym_cat(X, 2), Y, 3);
      auto r = check_subst_unit(F, 2);
      INFO(to_json(r).dump());
      CHECK(r.passed);
    }
  }
}

TEST_CASE("single-colour substitution matches the species orbit count") {
  Rng rng(11);
  auto X = seeds::terminal();
  for (int trial = 0; trial < 8; ++trial) {
    auto S = free_sym_cat(X, 3);
    auto F = random_symseq(rng, S, X, 3);
    auto G = random_symseq(rng, S, X, 3);
    auto GF = subst_compose(G, F, 3);
    CHECK(validate_symseq(GF).ok());
    for (std::size_t k = 0; k <= 3; ++k) {
      CHECK(GF.data.at(GF.source.by_len[k][0], 0).size() == species_oracle(G, F, k));
    }
  }
}

TEST_CASE("F concentrated in arity one with c values gives |G[k]| c^k") {
  Rng rng(13);
  auto X = seeds::terminal();
  auto S = free_sym_cat(X, 3);
  for (std::size_t c = 1; c <= 3; ++c) {
    std::vector<SymSeq> pts(c, point_symseq(S, X, 1));
    auto F = symseq_sum(pts);
    auto G = random_symseq(rng, S, X, 3);
    auto GF = subst_compose(G, F, 3);
    for (std::size_t k = 1; k <= 3; ++k) {
      std::size_t gk = G.data.at(S.by_len[k][0], 0).size();
      std::size_t ck = 1;
      for (std::size_t i = 0; i < k; ++i) {
        ck *= c;
      }
      CHECK(GF.data.at(GF.source.by_len[k][0], 0).size() == gk * ck);
    }
  }
}

TEST_CASE("substitution is associative") {
  Rng rng(17);
  auto cats = colours();
  for (int trial = 0; trial < 6; ++trial) {
    auto const& X = rng.pick(cats);
    auto const& Y = rng.pick(cats);
    auto const& Z = rng.pick(cats);
    auto const& W = rng.pick(cats);
    auto F = random_symseq(rng, free_sym_cat(X, 2), Y, 2);
    auto G = random_symseq(rng, free_sym_cat(Y, 2), Z, 2);
    auto H = random_symseq(rng, free_sym_cat(Z, 2), W, 2);
    auto r = check_subst_assoc(H, G, F, 2);
    INFO(X.name() << Y.name() << Z.name() << W.name() << " " << to_json(r).dump());
    CHECK(r.passed);
  }
  auto T = seeds::terminal();
  auto S = free_sym_cat(T, 3);
  auto r = check_subst_assoc(random_symseq(rng, S, T, 2), random_symseq(rng, S, T, 2),
                             random_symseq(rng, S, T, 2), 3);
  INFO(to_json(r).dump());
  CHECK(r.passed);
}

TEST_CASE("substitution agrees with Kleisli composition over S(Y)") {
  Rng rng(19);
  auto cats = colours();
  for (int trial = 0; trial < 6; ++trial) {
    auto const& X = rng.pick(cats);
    auto const& Y = rng.pick(cats);
    auto const& Z = rng.pick(cats);
    auto F = random_symseq(rng, free_sym_cat(X, 2), Y, 3);
    auto G = random_symseq(rng, free_sym_cat(Y, 2), Z, 3);
    auto r = check_subst_kleisli(G, F, 2);
    INFO(to_json(r).dump());
    CHECK(r.passed);
  }
}

TEST_CASE("raising the truncation leaves lower arities unchanged") {
  Rng rng(23);
  for (auto const& X : colours()) {
    auto Y = seeds::discrete(2);
    auto fs = random_specs(rng, X, Y, 2, 3);
    auto gs = random_specs(rng, Y, X, 2, 3);
    auto low = subst_compose(build(gs, Y, X, 2), build(fs, X, Y, 2), 2);
    auto high = subst_compose(build(gs, Y, X, 3), build(fs, X, Y, 3), 3);
    for (Index o = 0; o < low.source.cat.num_objects(); ++o) {
      Index ho = high.source.cat.object_index(low.source.cat.object(o));
      for (Index z = 0; z < X.num_objects(); ++z) {
        CHECK(low.data.at(o, z) == high.data.at(ho, z));
      }
    }
  }
}

TEST_CASE("truncation limits are reported") {
  auto X = seeds::terminal();
  Rng rng(29);
  auto F2 = random_symseq(rng, free_sym_cat(X, 2), X, 2);
  auto G3 = random_symseq(rng, free_sym_cat(X, 3), X, 2);
  CHECK_THROWS_AS(subst_compose(G3, F2, 3), BoundExceeded);
  auto F3 = random_symseq(rng, free_sym_cat(X, 3), X, 2);
  auto G2 = random_symseq(rng, free_sym_cat(X, 2), X, 2);
  CHECK_THROWS_AS(subst_compose(G2, F3, 3), BoundExceeded);

  auto S = free_sym_cat(X, 2);
  auto N = symseq_sum({point_symseq(S, X, 0), point_symseq(S, X, 1)});
  try {
    subst_compose(G2, N, 2);
    FAIL("expected BoundExceeded");
  } catch (BoundExceeded const& e) {
    CHECK(std::string(e.what()).find("arity-0") != std::string::npos);
  }
  auto bounded = subst_compose(G2, N, 2, 2);
  CHECK(bounded.bounded_search);
  CHECK(validate_symseq(bounded).ok());
}

TEST_CASE("terminal and associative operads") {
  auto t = operads::terminal(3);
  auto rt = check_operad(t);
  INFO(to_json(rt).dump());
  CHECK(rt.passed);
  auto a = operads::associative(3);
  for (std::size_t k = 1; k <= 3; ++k) {
    CHECK(a.ops.data.at(a.ops.source.by_len[k][0], 0).size() == factorial(k));
  }
  auto ra = check_operad(a);
  INFO(to_json(ra).dump());
  CHECK(ra.passed);
  CHECK(ra.children.size() == 4);
}

TEST_CASE("a broken composition cell is rejected") {
  auto a = operads::associative(3);
  for (auto& c : a.mult) {
    if (corrupt_in_place(c)) {
      break;
    }
  }
  auto r = check_operad(a);
  CHECK_FALSE(r.passed);
  auto f = r.first_failure();
  REQUIRE(f != nullptr);
  CHECK_FALSE(f->witnesses.empty());
}

TEST_CASE("species re-indexing round trip") {
  Rng rng(31);
  for (auto const& X : colours()) {
    for (auto const& Y : colours()) {
      auto F = random_symseq(rng, free_sym_cat(X, 2), Y, 3);
      auto P = to_species(F);
      auto v = validate_bifunctor(P.data);
      INFO((v.ok() ? std::string() : v.violations.front()));
      CHECK(v.ok());
      auto back = from_species(P);
      CHECK(back.data == F.data);
    }
  }
}
