#pragma once

// Day convolution on strict monoidal finite categories.
//
//   auto M = monoidal::discrete_monoid("Z3", {"0","1","2"}, add_mod3, true);
//   Presheaf pq = day_convolve(M, p, q);  // ∫^{a1,a2} p(a1) × q(a2) × A[-, a1⊗a2]
//   check_convolution_assoc(M, p, q, r);

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ck/presheaf.hpp"
#include "ck/prof.hpp"
#include "ck/seeds.hpp"

namespace ck {

struct StrictMonoidalFinCat {
  std::string name;
  FinCat base;
  FinCat square;  // base × base
  Functor tensor;
  Index unit = 0;
  std::optional<std::vector<Index>> symmetry;  // [a * n + b] : a⊗b → b⊗a

  std::size_t size() const { return base.num_objects(); }

  Elem pair(Index a, Index b) const { return Elem::tuple({base.object(a), base.object(b)}); }

  Index obj(Index a, Index b) const { return tensor.obj[square.object_index(pair(a, b))]; }

  Index mor(Index f, Index g) const {
    return tensor.mor[square.morphism_index(Elem::tuple({base.label(f), base.label(g)}))];
  }

  Index sigma(Index a, Index b) const { return (*symmetry)[a * size() + b]; }
};

// Builds the tensor from index-level tables. `sigma` may be empty.
inline StrictMonoidalFinCat make_monoidal(std::string name, FinCat A,
                                          std::function<Index(Index, Index)> tobj,
                                          std::function<Index(Index, Index)> tmor, Index unit,
                                          std::function<Index(Index, Index)> sigma = {}) {
  StrictMonoidalFinCat M{std::move(name), A, product(A, A), {}, unit, std::nullopt};
  M.tensor = Functor::tabulate(
      M.square, A,
      [&](Elem const& o) {
        return A.object(tobj(A.object_index(o[0]), A.object_index(o[1])));
      },
      [&](Elem const& m) {
        return A.label(tmor(A.morphism_index(m[0]), A.morphism_index(m[1])));
      });
  if (sigma) {
    std::vector<Index> s;
    for (Index a = 0; a < A.num_objects(); ++a) {
      for (Index b = 0; b < A.num_objects(); ++b) {
        s.push_back(sigma(a, b));
      }
    }
    M.symmetry = std::move(s);
  }
  return M;
}

inline ValidationReport validate_monoidal(StrictMonoidalFinCat const& M) {
  ValidationReport r = validate_functor(M.tensor);
  if (!r.ok()) {
    return r;
  }
  auto const& A = M.base;
  std::size_t nm = A.num_morphisms();
  Index idI = A.identity(M.unit);
  for (Index f = 0; f < nm; ++f) {
    if (M.mor(idI, f) != f || M.mor(f, idI) != f) {
      r.add("unit law fails at " + A.label(f).repr());
    }
    for (Index g = 0; g < nm; ++g) {
      for (Index h = 0; h < nm; ++h) {
        if (M.mor(M.mor(f, g), h) != M.mor(f, M.mor(g, h))) {
          r.add("tensor is not strictly associative at (" + A.label(f).repr() + ","
                + A.label(g).repr() + "," + A.label(h).repr() + ")");
          return r;
        }
      }
    }
  }
  if (!M.symmetry) {
    return r;
  }
  std::size_t n = A.num_objects();
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      Index s = M.sigma(a, b);
      if (A.src(s) != M.obj(a, b) || A.tgt(s) != M.obj(b, a)) {
        r.add("symmetry at (" + A.object(a).repr() + "," + A.object(b).repr()
              + ") has wrong endpoints");
        return r;
      }
    }
  }
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (A.compose(M.sigma(b, a), M.sigma(a, b)) != A.identity(M.obj(a, b))) {
        r.add("symmetry is not self-inverse at (" + A.object(a).repr() + "," + A.object(b).repr() + ")");
      }
      for (Index c = 0; c < n; ++c) {
        Index lhs = M.sigma(a, M.obj(b, c));
        Index rhs = A.compose(M.mor(A.identity(b), M.sigma(a, c)), M.mor(M.sigma(a, b), A.identity(c)));
        if (lhs != rhs) {
          r.add("hexagon fails at (" + A.object(a).repr() + "," + A.object(b).repr() + ","
                + A.object(c).repr() + ")");
        }
      }
    }
  }
  for (Index f = 0; f < nm; ++f) {
    for (Index g = 0; g < nm; ++g) {
      Index lhs = A.compose(M.sigma(A.tgt(f), A.tgt(g)), M.mor(f, g));
      Index rhs = A.compose(M.mor(g, f), M.sigma(A.src(f), A.src(g)));
      if (lhs != rhs) {
        r.add("symmetry is not natural at (" + A.label(f).repr() + "," + A.label(g).repr() + ")");
      }
    }
  }
  return r;
}

namespace monoidal {

inline StrictMonoidalFinCat terminal() {
  auto A = seeds::terminal();
  return make_monoidal(
      "1", A, [](Index, Index) { return Index{0}; }, [](Index, Index) { return Index{0}; }, 0,
      [](Index, Index) { return Index{0}; });
}

// A monoid as a discrete category: objects are elements, `mul(i, j)` is the
// index of the product, element 0 is the unit.
inline StrictMonoidalFinCat discrete_monoid(std::string name, std::vector<std::string> const& elems,
                                            std::function<std::size_t(std::size_t, std::size_t)> mul,
                                            bool symmetric) {
  FinCat::Builder b(name);
  for (auto const& e : elems) {
    b.object(Elem::atom(e)).identity(Elem::atom(e), seeds::id_label(Elem::atom(e)));
  }
  FinCat A = b.build();
  auto idx = [A, elems](std::size_t i) { return A.object_index(Elem::atom(elems[i])); };
  std::vector<std::size_t> pos(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    pos[idx(i)] = i;
  }
  auto tobj = [=](Index a, Index c) { return idx(mul(pos[a], pos[c])); };
  auto tmor = [=](Index f, Index g) { return A.identity(tobj(A.src(f), A.src(g))); };
  std::function<Index(Index, Index)> sigma;
  if (symmetric) {
    sigma = [=](Index a, Index c) { return A.identity(tobj(a, c)); };
  }
  return make_monoidal(std::move(name), A, tobj, tmor, idx(0), sigma);
}

inline StrictMonoidalFinCat discrete_cyclic(std::size_t n) {
  std::vector<std::string> el;
  for (std::size_t i = 0; i < n; ++i) {
    el.push_back("g" + std::to_string(i));
  }
  return discrete_monoid("dZ" + std::to_string(n), el,
                         [n](std::size_t i, std::size_t j) { return (i + j) % n; }, true);
}

// {1, a, b} with xy = x for x ≠ 1; not commutative, so no symmetry.
inline StrictMonoidalFinCat discrete_left_zero() {
  return discrete_monoid("dL2", {"1", "a", "b"},
                         [](std::size_t i, std::size_t j) { return i == 0 ? j : i; }, false);
}

// chain(n) with max (unit 0) or min (unit n-1) as tensor.
inline StrictMonoidalFinCat chain_lattice(std::size_t n, bool use_max) {
  auto A = seeds::chain(n);
  auto num = [A](Index a) { return static_cast<std::size_t>(std::stoul(A.object(a).name())); };
  auto at = [A](std::size_t k) { return A.object_index(Elem::atom(static_cast<long long>(k))); };
  auto op = [use_max](std::size_t x, std::size_t y) { return use_max ? std::max(x, y) : std::min(x, y); };
  auto tobj = [=](Index a, Index c) { return at(op(num(a), num(c))); };
  auto tmor = [=](Index f, Index g) {
    return A.hom(tobj(A.src(f), A.src(g)), tobj(A.tgt(f), A.tgt(g))).front();
  };
  auto sigma = [=](Index a, Index c) { return A.identity(tobj(a, c)); };
  return make_monoidal(std::string(use_max ? "max" : "min") + std::to_string(n), A, tobj, tmor,
                       at(use_max ? 0 : n - 1), sigma);
}

// The one-object category Z2 with tensor given by addition; σ = identity.
inline StrictMonoidalFinCat one_object_z2() {
  auto A = seeds::cyclic(2);
  Index z0 = A.morphism_index("z0"_e);
  Index z1 = A.morphism_index("z1"_e);
  return make_monoidal(
      "BZ2", A, [](Index, Index) { return Index{0}; },
      [=](Index f, Index g) { return (f == z1) != (g == z1) ? z1 : z0; }, 0,
      [=](Index, Index) { return z0; });
}

inline std::vector<StrictMonoidalFinCat> library() {
  return {terminal(),          discrete_cyclic(2),   discrete_cyclic(3), discrete_left_zero(),
          chain_lattice(2, true), chain_lattice(2, false), one_object_z2()};
}

}  // namespace monoidal

// ---------------------------------------------------------------------------
// Convolution

struct DayConvolution {
  Presheaf value;
  std::vector<QuotientSet> quotients;  // one per object of the base
};

inline DayConvolution day_convolution(StrictMonoidalFinCat const& M, Presheaf const& F1,
                                      Presheaf const& F2) {
  auto const& A = M.base;
  auto const& S = M.square;
  std::size_t n = A.num_objects();
  DayConvolution D{Presheaf{A, {}, {}}, {}};
  for (Index b = 0; b < n; ++b) {
    QuotientBuilder qb;
    for (Index a1 = 0; a1 < n; ++a1) {
      for (Index a2 = 0; a2 < n; ++a2) {
        Elem key = M.pair(a1, a2);
        for (auto const& h : A.hom_set(b, M.obj(a1, a2))) {
          for (auto const& c1 : F1.values[a1]) {
            for (auto const& c2 : F2.values[a2]) {
              qb.add(Elem::tag(key, Elem::tuple({c1, c2, h})));
            }
          }
        }
      }
    }
    // (u1, u2) : (a1, a2) → (a1', a2'):
    // <(a1,a2)|(u1* c1, u2* c2, h)> ~ <(a1',a2')|(c1, c2, (u1⊗u2)∘h)>
    for (Index m = 0; m < S.num_morphisms(); ++m) {
      if (S.is_identity(m)) {
        continue;
      }
      Index u1 = A.morphism_index(S.label(m)[0]);
      Index u2 = A.morphism_index(S.label(m)[1]);
      Index a1 = A.src(u1), a2 = A.src(u2), b1 = A.tgt(u1), b2 = A.tgt(u2);
      Index t = M.mor(u1, u2);
      Elem from = M.pair(a1, a2);
      Elem to = M.pair(b1, b2);
      for (Index h : A.hom(b, M.obj(a1, a2))) {
        Elem const& hl = A.label(A.compose(t, h));
        for (auto const& c1 : F1.values[b1]) {
          for (auto const& c2 : F2.values[b2]) {
            qb.unite(Elem::tag(from, Elem::tuple({F1.restrict[u1](c1), F2.restrict[u2](c2), A.label(h)})),
                     Elem::tag(to, Elem::tuple({c1, c2, hl})));
          }
        }
      }
    }
    D.quotients.push_back(qb.build());
    D.value.values.push_back(D.quotients.back().value);
  }
  for (Index v = 0; v < A.num_morphisms(); ++v) {
    // v : b' → b acts by h ↦ h ∘ v
    D.value.restrict.push_back(
        induced_map(D.quotients[A.tgt(v)], D.value.values[A.src(v)], [&](Elem const& t) {
          auto const& w = t.value();
          return Elem::tag(t.key(), Elem::tuple({w[0], w[1], A.compose_labels(w[2], A.label(v))}));
        }));
  }
  return D;
}

inline Presheaf day_convolve(StrictMonoidalFinCat const& M, Presheaf const& F1, Presheaf const& F2) {
  return day_convolution(M, F1, F2).value;
}

inline Presheaf day_unit(StrictMonoidalFinCat const& M) { return yoneda(M.base, M.unit); }

// φ1 ⊗ φ2 : [(a1,a2)|(c1,c2,h)] ↦ [(a1,a2)|(φ1 c1, φ2 c2, h)].
inline PshMap day_convolve_map(StrictMonoidalFinCat const& M, DayConvolution const& src,
                               Presheaf const& tgt, PshMap const& phi1, PshMap const& phi2) {
  auto const& A = M.base;
  PshMap m{src.value, tgt, {}};
  for (Index b = 0; b < A.num_objects(); ++b) {
    m.components.push_back(induced_map(src.quotients[b], tgt.values[b], [&](Elem const& t) {
      auto const& k = t.key();
      auto const& w = t.value();
      Index a1 = A.object_index(k[0]);
      Index a2 = A.object_index(k[1]);
      return Elem::tag(k, Elem::tuple({phi1.components[a1](w[0]), phi2.components[a2](w[1]), w[2]}));
    }));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Structure isomorphisms

namespace detail {

inline bool is_inverse_pair(PshMap const& f, PshMap const& g) {
  return psh_compose(g, f) == psh_identity(f.source) && psh_compose(f, g) == psh_identity(f.target);
}

// Records the first non-bijective or non-natural component of `m`.
inline void require_iso(CheckReport& r, PshMap const& m, std::string const& what) {
  auto v = validate_psh_map(m);
  if (!v.ok()) {
    r.fail(json{{"map", what}, {"problem", v.violations.front()}});
    return;
  }
  for (Index b = 0; b < m.components.size(); ++b) {
    if (!m.components[b].is_bijective()) {
      r.fail(json{{"map", what},
                  {"object", m.source.base.object(b).repr()},
                  {"source_size", m.components[b].dom.size()},
                  {"target_size", m.components[b].cod.size()}});
      return;
    }
  }
}

}  // namespace detail

// y(a1) ⊗ y(a2) → y(a1⊗a2), [(x1,x2)|(u1,u2,h)] ↦ (u1⊗u2)∘h.
inline PshMap yoneda_monoidal_map(StrictMonoidalFinCat const& M, DayConvolution const& D,
                                  Presheaf const& y12) {
  auto const& A = M.base;
  PshMap m{D.value, y12, {}};
  for (Index b = 0; b < A.num_objects(); ++b) {
    m.components.push_back(induced_map(D.quotients[b], y12.values[b], [&](Elem const& t) {
      auto const& w = t.value();
      Index t12 = M.mor(A.morphism_index(w[0]), A.morphism_index(w[1]));
      return A.compose_labels(A.label(t12), w[2]);
    }));
  }
  return m;
}

inline CheckReport check_yoneda_strong_monoidal(StrictMonoidalFinCat const& M, Index a1, Index a2) {
  auto const& A = M.base;
  return detail::guarded("y(" + A.object(a1).repr() + ") * y(" + A.object(a2).repr() + ")",
                         [&](CheckReport& r) {
    auto D = day_convolution(M, yoneda(A, a1), yoneda(A, a2));
    Index a12 = M.obj(a1, a2);
    auto y12 = yoneda(A, a12);
    auto fwd = yoneda_monoidal_map(M, D, y12);
    Elem key = M.pair(a1, a2);
    Elem i1 = A.label(A.identity(a1));
    Elem i2 = A.label(A.identity(a2));
    PshMap bwd{y12, D.value, {}};
    for (Index b = 0; b < A.num_objects(); ++b) {
      bwd.components.push_back(FinFn::tabulate(y12.values[b], D.value.values[b], [&](Elem const& k) {
        return Elem::tag(key, Elem::tuple({i1, i2, k}));
      }));
    }
    detail::require_iso(r, fwd, "y-monoidal");
    if (r.passed && !detail::is_inverse_pair(fwd, bwd)) {
      r.fail(json{{"map", "y-monoidal"}, {"problem", "inverse does not match"}});
    }
  });
}

// I ⊗ F → F and F ⊗ I → F, with their inverses checked.
inline CheckReport check_convolution_unit(StrictMonoidalFinCat const& M, Presheaf const& F) {
  auto const& A = M.base;
  CheckReport all("convolution unit");
  auto I = day_unit(M);
  Elem idI = A.label(A.identity(M.unit));
  all.add(detail::guarded("left unit", [&](CheckReport& r) {
    auto D = day_convolution(M, I, F);
    PshMap fwd{D.value, F, {}};
    PshMap bwd{F, D.value, {}};
    for (Index b = 0; b < A.num_objects(); ++b) {
      fwd.components.push_back(induced_map(D.quotients[b], F.values[b], [&](Elem const& t) {
        auto const& w = t.value();
        Index x2 = A.object_index(t.key()[1]);
        Index k = A.compose(M.mor(A.morphism_index(w[0]), A.identity(x2)), A.morphism_index(w[2]));
        return F.restrict[k](w[1]);
      }));
      bwd.components.push_back(FinFn::tabulate(F.values[b], D.value.values[b], [&](Elem const& c) {
        return Elem::tag(M.pair(M.unit, b), Elem::tuple({idI, c, A.label(A.identity(b))}));
      }));
    }
    detail::require_iso(r, fwd, "left unitor");
    if (r.passed && !detail::is_inverse_pair(fwd, bwd)) {
      r.fail(json{{"map", "left unitor"}, {"problem", "inverse does not match"}});
    }
  }));
  all.add(detail::guarded("right unit", [&](CheckReport& r) {
    auto D = day_convolution(M, F, I);
    PshMap fwd{D.value, F, {}};
    PshMap bwd{F, D.value, {}};
    for (Index b = 0; b < A.num_objects(); ++b) {
      fwd.components.push_back(induced_map(D.quotients[b], F.values[b], [&](Elem const& t) {
        auto const& w = t.value();
        Index x1 = A.object_index(t.key()[0]);
        Index k = A.compose(M.mor(A.identity(x1), A.morphism_index(w[1])), A.morphism_index(w[2]));
        return F.restrict[k](w[0]);
      }));
      bwd.components.push_back(FinFn::tabulate(F.values[b], D.value.values[b], [&](Elem const& c) {
        return Elem::tag(M.pair(b, M.unit), Elem::tuple({c, idI, A.label(A.identity(b))}));
      }));
    }
    detail::require_iso(r, fwd, "right unitor");
    if (r.passed && !detail::is_inverse_pair(fwd, bwd)) {
      r.fail(json{{"map", "right unitor"}, {"problem", "inverse does not match"}});
    }
  }));
  return all;
}

struct DayAssociator {
  DayConvolution d12, d23, left, right;  // F1⊗F2, F2⊗F3, (F1⊗F2)⊗F3, F1⊗(F2⊗F3)
  PshMap fwd, bwd;
};

// [(a12,a3)|([(a1,a2)|(c1,c2,k)], c3, h)] ↦ [(a1,a2⊗a3)|(c1, [(a2,a3)|(c2,c3,1)], (k⊗1)∘h)]
inline DayAssociator day_associator(StrictMonoidalFinCat const& M, Presheaf const& F1,
                                    Presheaf const& F2, Presheaf const& F3) {
  auto const& A = M.base;
  DayAssociator a;
  a.d12 = day_convolution(M, F1, F2);
  a.d23 = day_convolution(M, F2, F3);
  a.left = day_convolution(M, a.d12.value, F3);
  a.right = day_convolution(M, F1, a.d23.value);
  a.fwd = PshMap{a.left.value, a.right.value, {}};
  a.bwd = PshMap{a.right.value, a.left.value, {}};
  auto ix = [&](Elem const& o) { return A.object_index(o); };
  auto mi = [&](Elem const& l) { return A.morphism_index(l); };
  for (Index b = 0; b < A.num_objects(); ++b) {
    a.fwd.components.push_back(induced_map(a.left.quotients[b], a.right.value.values[b], [&](Elem const& t) {
      Elem const& X = t.value()[0];
      Elem const& c3 = t.value()[1];
      Elem const& h = t.value()[2];
      Index a1 = ix(X.key()[0]), a2 = ix(X.key()[1]), a3 = ix(t.key()[1]);
      Elem const& c1 = X.value()[0];
      Elem const& c2 = X.value()[1];
      Elem const& k = X.value()[2];
      Index a23 = M.obj(a2, a3);
      Elem Y = a.d23.value.values[a23].normalize(
          Elem::tag(M.pair(a2, a3), Elem::tuple({c2, c3, A.label(A.identity(a23))})));
      Index h2 = A.compose(M.mor(mi(k), A.identity(a3)), mi(h));
      return Elem::tag(M.pair(a1, a23), Elem::tuple({c1, Y, A.label(h2)}));
    }));
    a.bwd.components.push_back(induced_map(a.right.quotients[b], a.left.value.values[b], [&](Elem const& t) {
      Elem const& c1 = t.value()[0];
      Elem const& Y = t.value()[1];
      Elem const& h = t.value()[2];
      Index a1 = ix(t.key()[0]), a2 = ix(Y.key()[0]), a3 = ix(Y.key()[1]);
      Elem const& c2 = Y.value()[0];
      Elem const& c3 = Y.value()[1];
      Elem const& k = Y.value()[2];
      Index a12 = M.obj(a1, a2);
      Elem X = a.d12.value.values[a12].normalize(
          Elem::tag(M.pair(a1, a2), Elem::tuple({c1, c2, A.label(A.identity(a12))})));
      Index h2 = A.compose(M.mor(A.identity(a1), mi(k)), mi(h));
      return Elem::tag(M.pair(a12, a3), Elem::tuple({X, c3, A.label(h2)}));
    }));
  }
  return a;
}

// Associator invertibility on (F1,F2,F3) and the pentagon on (F1,F2,F3,F4).
inline CheckReport check_convolution_assoc(StrictMonoidalFinCat const& M, Presheaf const& F1,
                                           Presheaf const& F2, Presheaf const& F3,
                                           std::optional<Presheaf> const& F4 = std::nullopt) {
  CheckReport all("convolution associativity");
  all.add(detail::guarded("associator invertible", [&](CheckReport& r) {
    auto a = day_associator(M, F1, F2, F3);
    detail::require_iso(r, a.fwd, "associator");
    if (r.passed && !detail::is_inverse_pair(a.fwd, a.bwd)) {
      r.fail(json{{"map", "associator"}, {"problem", "inverse does not match"}});
    }
  }));
  if (!F4) {
    return all;
  }
  all.add(detail::guarded("pentagon", [&](CheckReport& r) {
    auto F12 = day_convolve(M, F1, F2);
    auto F34 = day_convolve(M, F3, *F4);
    auto F23 = day_convolve(M, F2, F3);
    auto a_12_3_4 = day_associator(M, F12, F3, *F4);   // ((12)3)4 → (12)(34)
    auto a_1_2_34 = day_associator(M, F1, F2, F34);    // (12)(34) → 1(2(34))
    auto top = psh_compose(a_1_2_34.fwd, a_12_3_4.fwd);

    auto a_1_2_3 = day_associator(M, F1, F2, F3);      // (12)3 → 1(23)
    auto a_1_23_4 = day_associator(M, F1, F23, *F4);   // (1(23))4 → 1((23)4)
    auto a_2_3_4 = day_associator(M, F2, F3, *F4);     // (23)4 → 2(34)
    auto id4 = psh_identity(*F4);
    auto id1 = psh_identity(F1);
    auto s1 = day_convolve_map(M, a_12_3_4.left, a_1_23_4.left.value, a_1_2_3.fwd, id4);
    auto s3 = day_convolve_map(M, a_1_23_4.right, a_1_2_34.right.value, id1, a_2_3_4.fwd);
    auto bottom = psh_compose(s3, psh_compose(a_1_23_4.fwd, s1));
    if (auto d = psh_difference(top, bottom)) {
      r.fail(*d);
    }
  }));
  return all;
}

// F1 ⊗ F2 → F2 ⊗ F1, [(a1,a2)|(c1,c2,h)] ↦ [(a2,a1)|(c2,c1,σ∘h)].
inline PshMap day_symmetry(StrictMonoidalFinCat const& M, DayConvolution const& D12,
                           Presheaf const& target) {
  auto const& A = M.base;
  PshMap s{D12.value, target, {}};
  for (Index b = 0; b < A.num_objects(); ++b) {
    s.components.push_back(induced_map(D12.quotients[b], target.values[b], [&](Elem const& t) {
      Index a1 = A.object_index(t.key()[0]);
      Index a2 = A.object_index(t.key()[1]);
      auto const& w = t.value();
      Index h = A.compose(M.sigma(a1, a2), A.morphism_index(w[2]));
      return Elem::tag(M.pair(a2, a1), Elem::tuple({w[1], w[0], A.label(h)}));
    }));
  }
  return s;
}

inline CheckReport check_convolution_symmetry(StrictMonoidalFinCat const& M, Presheaf const& F1,
                                              Presheaf const& F2) {
  CheckReport r("convolution symmetry");
  if (!M.symmetry) {
    r.skip(M.name + " has no symmetry");
    return r;
  }
  try {
    auto d12 = day_convolution(M, F1, F2);
    auto d21 = day_convolution(M, F2, F1);
    auto s = day_symmetry(M, d12, d21.value);
    auto s_back = day_symmetry(M, d21, d12.value);
    detail::require_iso(r, s, "symmetry");
    if (r.passed && !(psh_compose(s_back, s) == psh_identity(d12.value))) {
      r.fail(json{{"map", "symmetry"}, {"problem", "not self-inverse"}});
    }
  } catch (Error const& e) {
    r.fail(json{{"error", e.what()}});
  }
  return r;
}

// ---------------------------------------------------------------------------
// Strong monoidal presheaf-valued functors and their extensions

struct StrongMonoidalPsh {
  PshValuedFunctor functor;            // A → P(B)
  std::vector<DayConvolution> pairs;   // F(a1) ⊗ F(a2), [a1 * |A| + a2]
  std::vector<PshMap> phi;             // F(a1) ⊗ F(a2) → F(a1⊗a2)
};

// y_B ∘ G for a strict monoidal functor G : A → B.
inline StrongMonoidalPsh yoneda_along(StrictMonoidalFinCat const& A, StrictMonoidalFinCat const& B,
                                      Functor const& G) {
  StrongMonoidalPsh S{psh_precompose(yoneda_embedding(B.base), G), {}, {}};
  std::size_t n = A.size();
  for (Index a1 = 0; a1 < n; ++a1) {
    for (Index a2 = 0; a2 < n; ++a2) {
      S.pairs.push_back(day_convolution(B, S.functor.obj[a1], S.functor.obj[a2]));
      S.phi.push_back(yoneda_monoidal_map(B, S.pairs.back(), S.functor.obj[A.obj(a1, a2)]));
    }
  }
  return S;
}

inline ValidationReport validate_strict_monoidal_functor(StrictMonoidalFinCat const& A,
                                                         StrictMonoidalFinCat const& B,
                                                         Functor const& G) {
  ValidationReport r = validate_functor(G);
  if (!r.ok()) {
    return r;
  }
  if (G.obj[A.unit] != B.unit) {
    r.add("unit is not preserved");
  }
  for (Index f = 0; f < A.base.num_morphisms(); ++f) {
    for (Index g = 0; g < A.base.num_morphisms(); ++g) {
      if (G.mor[A.mor(f, g)] != B.mor(G.mor[f], G.mor[g])) {
        r.add("tensor is not preserved at (" + A.base.label(f).repr() + "," + A.base.label(g).repr() + ")");
        return r;
      }
    }
  }
  return r;
}

inline ValidationReport validate_strong_monoidal(StrictMonoidalFinCat const& A,
                                                 StrictMonoidalFinCat const& B,
                                                 StrongMonoidalPsh const& S) {
  ValidationReport r = validate_psh_functor(S.functor);
  std::size_t n = A.size();
  for (std::size_t k = 0; k < S.phi.size(); ++k) {
    CheckReport c("phi");
    detail::require_iso(c, S.phi[k], "phi");
    if (!c.passed) {
      r.add("constraint " + std::to_string(k) + " is not an isomorphism");
    }
  }
  auto const& X = A.base;
  for (Index u1 = 0; u1 < X.num_morphisms(); ++u1) {
    for (Index u2 = 0; u2 < X.num_morphisms(); ++u2) {
      Index s = X.src(u1) * n + X.src(u2);
      Index t = X.tgt(u1) * n + X.tgt(u2);
      auto tensor = day_convolve_map(B, S.pairs[s], S.pairs[t].value, S.functor.mor[u1], S.functor.mor[u2]);
      auto lhs = psh_compose(S.functor.mor[A.mor(u1, u2)], S.phi[s]);
      auto rhs = psh_compose(S.phi[t], tensor);
      if (!(lhs == rhs)) {
        r.add("constraint is not natural at (" + X.label(u1).repr() + "," + X.label(u2).repr() + ")");
      }
    }
  }
  return r;
}

// F*(p) ⊗ F*(q) → F*(p ⊗ q),
// [(b1,b2)|([a1|(s1,c1)], [a2|(s2,c2)], h)] ↦
//   [a1⊗a2|(φ([(b1,b2)|(s1,s2,h)]), [(a1,a2)|(c1,c2,1)])].
inline CheckReport check_kan_monoidal(StrictMonoidalFinCat const& A, StrictMonoidalFinCat const& B,
                                      StrongMonoidalPsh const& S, Presheaf const& p,
                                      Presheaf const& q) {
  return detail::guarded("extension is strong monoidal", [&](CheckReport& r) {
    auto v = validate_strong_monoidal(A, B, S);
    if (!v.ok()) {
      r.fail(json{{"problem", v.violations.front()}});
      return;
    }
    auto const& F = S.functor;
    auto Fp = kan_extend(F, p);
    auto Fq = kan_extend(F, q);
    auto pq = day_convolution(A, p, q);
    auto F_pq = kan_extend(F, pq.value);
    auto lhs = day_convolution(B, Fp, Fq);
    auto const& X = A.base;
    auto const& Y = B.base;
    std::size_t n = A.size();
    PshMap m{lhs.value, F_pq, {}};
    for (Index b = 0; b < Y.num_objects(); ++b) {
      m.components.push_back(induced_map(lhs.quotients[b], F_pq.values[b], [&](Elem const& t) {
        Elem const& E1 = t.value()[0];
        Elem const& E2 = t.value()[1];
        Elem const& h = t.value()[2];
        Index a1 = X.object_index(E1.key());
        Index a2 = X.object_index(E2.key());
        Index a12 = A.obj(a1, a2);
        auto const& D = S.pairs[a1 * n + a2];
        Elem s12 = D.value.values[b].normalize(
            Elem::tag(t.key(), Elem::tuple({E1.value()[0], E2.value()[0], h})));
        Elem s = S.phi[a1 * n + a2].components[b](s12);
        Elem c = pq.value.values[a12].normalize(Elem::tag(
            A.pair(a1, a2), Elem::tuple({E1.value()[1], E2.value()[1], X.label(X.identity(a12))})));
        return Elem::tag(X.object(a12), Elem::tuple({s, c}));
      }));
    }
    detail::require_iso(r, m, "extension comparison");
  });
}

}  // namespace ck
