#pragma once

// Presheaves as Kleisli data: the Yoneda embedding, left Kan extension along
// Yoneda, the unit comparison η, pointwise limits, and limit-preservation
// checks.
//
//   auto F = yoneda_embedding(X);
//   Presheaf q = kan_extend(F, p);      // ≅ p, via theta
//   PshMap e = eta_iso(F, x);           // F(x) → F*(y x)
//
// An element of F*(p)(y) is the class of <x|(a,c)> with a ∈ F(x)(y) and
// c ∈ p(x); classes are named by their minimal member.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ck/colim.hpp"

namespace ck {

// A functor X → P(Y), stored objectwise.
struct PshValuedFunctor {
  FinCat source;
  FinCat target;
  std::vector<Presheaf> obj;
  std::vector<PshMap> mor;

  Presheaf const& at(Index x) const { return obj[x]; }
};

// A natural transformation between parallel presheaf-valued functors.
struct PshCell {
  PshValuedFunctor source;
  PshValuedFunctor target;
  std::vector<PshMap> components;
};

inline ValidationReport validate_psh_functor(PshValuedFunctor const& F) {
  ValidationReport r;
  auto const& X = F.source;
  if (F.obj.size() != X.num_objects() || F.mor.size() != X.num_morphisms()) {
    r.add("presheaf-valued functor tables do not cover the source");
    return r;
  }
  for (Index x = 0; x < X.num_objects(); ++x) {
    if (!(F.obj[x].base == F.target)) {
      r.add("value at " + X.object(x).repr() + " lives on the wrong base");
      continue;
    }
    r.merge(validate_presheaf(F.obj[x]), "value at " + X.object(x).repr() + ": ");
  }
  if (!r.ok()) {
    return r;
  }
  for (Index u = 0; u < X.num_morphisms(); ++u) {
    auto const& m = F.mor[u];
    if (!(m.source == F.obj[X.src(u)]) || !(m.target == F.obj[X.tgt(u)])) {
      r.add("image of " + X.label(u).repr() + " has wrong endpoints");
      continue;
    }
    r.merge(validate_psh_map(m), "image of " + X.label(u).repr() + ": ");
  }
  if (!r.ok()) {
    return r;
  }
  for (Index x = 0; x < X.num_objects(); ++x) {
    if (!(F.mor[X.identity(x)] == psh_identity(F.obj[x]))) {
      r.add("identity of " + X.object(x).repr() + " is not sent to an identity");
    }
  }
  for (auto const& [k, h] : X.composition_table()) {
    Index g = static_cast<Index>(k / X.num_morphisms());
    Index f = static_cast<Index>(k % X.num_morphisms());
    if (!(psh_compose(F.mor[g], F.mor[f]) == F.mor[h])) {
      r.add("composite " + X.label(g).repr() + " o " + X.label(f).repr() + " is not preserved");
    }
  }
  return r;
}

inline ValidationReport validate_psh_cell(PshCell const& b) {
  ValidationReport r;
  auto const& X = b.source.source;
  if (b.components.size() != X.num_objects()) {
    r.add("cell does not have one component per object");
    return r;
  }
  for (Index x = 0; x < X.num_objects(); ++x) {
    r.merge(validate_psh_map(b.components[x]), "component at " + X.object(x).repr() + ": ");
  }
  if (!r.ok()) {
    return r;
  }
  for (Index u = 0; u < X.num_morphisms(); ++u) {
    auto lhs = psh_compose(b.target.mor[u], b.components[X.src(u)]);
    auto rhs = psh_compose(b.components[X.tgt(u)], b.source.mor[u]);
    if (auto d = psh_difference(lhs, rhs)) {
      r.add("cell is not natural at " + X.label(u).repr() + ": " + d->dump());
    }
  }
  return r;
}

inline PshCell psh_cell_identity(PshValuedFunctor const& F) {
  PshCell c{F, F, {}};
  for (auto const& p : F.obj) {
    c.components.push_back(psh_identity(p));
  }
  return c;
}

// β ∘ α, objectwise.
inline PshCell psh_cell_vcompose(PshCell const& b, PshCell const& a) {
  PshCell c{a.source, b.target, {}};
  for (std::size_t x = 0; x < a.components.size(); ++x) {
    c.components.push_back(psh_compose(b.components[x], a.components[x]));
  }
  return c;
}

inline PshCell psh_cell_invert(PshCell const& a) {
  PshCell c{a.target, a.source, {}};
  for (auto const& m : a.components) {
    c.components.push_back(psh_invert(m));
  }
  return c;
}

// First component where two parallel cells differ.
inline std::optional<json> psh_cell_difference(PshCell const& lhs, PshCell const& rhs) {
  for (std::size_t x = 0; x < lhs.components.size(); ++x) {
    if (auto d = psh_difference(lhs.components[x], rhs.components[x])) {
      json w;
      w["at"] = lhs.source.source.object(static_cast<Index>(x)).repr();
      for (auto const& [k, v] : d->items()) {
        w[k] = v;
      }
      return w;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Yoneda

// y(x)(a) = X[a, x]; restriction is precomposition.
inline Presheaf yoneda(FinCat const& X, Index x) {
  Presheaf p{X, {}, {}};
  for (Index a = 0; a < X.num_objects(); ++a) {
    p.values.push_back(X.hom_set(a, x));
  }
  for (Index u = 0; u < X.num_morphisms(); ++u) {
    Elem const& ul = X.label(u);
    p.restrict.push_back(FinFn::tabulate(p.values[X.tgt(u)], p.values[X.src(u)],
                                         [&](Elem const& v) { return X.compose_labels(v, ul); }));
  }
  return p;
}

// y(u) : y(x) → y(x') acts by postcomposition.
inline PshMap yoneda_map(FinCat const& X, Presheaf const& yx, Presheaf const& yx1, Index u) {
  PshMap m{yx, yx1, {}};
  Elem const& ul = X.label(u);
  for (Index a = 0; a < X.num_objects(); ++a) {
    m.components.push_back(FinFn::tabulate(yx.values[a], yx1.values[a],
                                           [&](Elem const& v) { return X.compose_labels(ul, v); }));
  }
  return m;
}

inline PshValuedFunctor yoneda_embedding(FinCat const& X) {
  PshValuedFunctor F{X, X, {}, {}};
  for (Index x = 0; x < X.num_objects(); ++x) {
    F.obj.push_back(yoneda(X, x));
  }
  for (Index u = 0; u < X.num_morphisms(); ++u) {
    F.mor.push_back(yoneda_map(X, F.obj[X.src(u)], F.obj[X.tgt(u)], u));
  }
  return F;
}

// x ↦ F(f(x)) for a functor f : W → X.
inline PshValuedFunctor psh_precompose(PshValuedFunctor const& F, Functor const& f) {
  if (!(f.target == F.source)) {
    throw EndpointMismatch("psh_precompose: functor lands outside the source");
  }
  PshValuedFunctor G{f.source, F.target, {}, {}};
  for (Index o : f.obj) {
    G.obj.push_back(F.obj[o]);
  }
  for (Index m : f.mor) {
    G.mor.push_back(F.mor[m]);
  }
  return G;
}

// All natural maps p → q, by backtracking with naturality pruning. Stops
// after `cap` solutions.
inline std::vector<PshMap> all_psh_maps(Presheaf const& p, Presheaf const& q,
                                        std::size_t cap = static_cast<std::size_t>(-1)) {
  auto const& X = p.base;
  struct Var {
    Index obj;
    Index elem;
  };
  std::vector<Var> vars;
  std::vector<std::size_t> offset(X.num_objects() + 1, 0);
  for (Index x = 0; x < X.num_objects(); ++x) {
    offset[x] = vars.size();
    for (Index i = 0; i < p.values[x].size(); ++i) {
      vars.push_back({x, i});
    }
  }
  offset[X.num_objects()] = vars.size();
  for (Index x = 0; x < X.num_objects(); ++x) {
    if (!p.values[x].empty() && q.values[x].empty()) {
      return {};
    }
  }
  // Constraint (u, e): φ_{src u}(p(u) e) = q(u)(φ_{tgt u}(e)), checked once
  // both variables are assigned.
  struct Con {
    Index u;
    std::size_t a;  // var of e at tgt u
    std::size_t b;  // var of p(u)e at src u
  };
  std::vector<std::vector<Con>> due(vars.size());
  for (Index u = 0; u < X.num_morphisms(); ++u) {
    if (X.is_identity(u)) {
      continue;
    }
    for (Index e = 0; e < p.values[X.tgt(u)].size(); ++e) {
      std::size_t a = offset[X.tgt(u)] + e;
      std::size_t b = offset[X.src(u)] + p.restrict[u].map[e];
      due[std::max(a, b)].push_back({u, a, b});
    }
  }
  std::vector<Index> val(vars.size(), 0);
  std::vector<PshMap> out;
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (out.size() >= cap) {
      return;
    }
    if (k == vars.size()) {
      PshMap m{p, q, {}};
      for (Index x = 0; x < X.num_objects(); ++x) {
        FinFn f{p.values[x], q.values[x], {}};
        for (std::size_t v = offset[x]; v < offset[x + 1]; ++v) {
          f.map.push_back(val[v]);
        }
        m.components.push_back(std::move(f));
      }
      out.push_back(std::move(m));
      return;
    }
    Index x = vars[k].obj;
    for (Index c = 0; c < q.values[x].size(); ++c) {
      val[k] = c;
      bool ok = true;
      for (auto const& con : due[k]) {
        if (val[con.b] != q.restrict[con.u].map[val[con.a]]) {
          ok = false;
          break;
        }
      }
      if (ok) {
        go(k + 1);
      }
    }
  };
  go(0);
  return out;
}

// ---------------------------------------------------------------------------
// Left Kan extension along Yoneda

// F*(p)(y) = ∫^x F(x)(y) × p(x), as a quotient of <x|(a,c)>.
inline QuotientSet kan_quotient(PshValuedFunctor const& F, Presheaf const& p, Index y) {
  auto const& X = F.source;
  QuotientBuilder qb;
  for (Index x = 0; x < X.num_objects(); ++x) {
    Elem const& xo = X.object(x);
    for (auto const& a : F.obj[x].values[y]) {
      for (auto const& c : p.values[x]) {
        qb.add(Elem::tag(xo, Elem::tuple({a, c})));
      }
    }
  }
  // For u : x → x', a ∈ F(x)(y), c' ∈ p(x'):  <x|(a, p(u)c')> ~ <x'|(F(u)a, c')>.
  for (Index u = 0; u < X.num_morphisms(); ++u) {
    if (X.is_identity(u)) {
      continue;
    }
    Index x = X.src(u);
    Index x1 = X.tgt(u);
    auto const& Fu = F.mor[u].components[y];
    auto const& pu = p.restrict[u];
    for (Index ai = 0; ai < Fu.dom.size(); ++ai) {
      for (Index ci = 0; ci < pu.dom.size(); ++ci) {
        qb.unite(qb.index(Elem::tag(X.object(x), Elem::tuple({Fu.dom[ai], pu.cod[pu.map[ci]]}))),
                 qb.index(Elem::tag(X.object(x1), Elem::tuple({Fu.cod[Fu.map[ai]], pu.dom[ci]}))));
      }
    }
  }
  return qb.build();
}

inline Presheaf kan_extend(PshValuedFunctor const& F, Presheaf const& p) {
  if (!(p.base == F.source)) {
    throw EndpointMismatch("kan_extend: argument lives on the wrong category");
  }
  auto const& X = F.source;
  auto const& Y = F.target;
  std::vector<QuotientSet> qs;
  Presheaf out{Y, {}, {}};
  for (Index y = 0; y < Y.num_objects(); ++y) {
    qs.push_back(kan_quotient(F, p, y));
    out.values.push_back(qs.back().value);
  }
  // Restriction along v : y → y' is [x,(a,c)] ↦ [x,(F(x)(v)a, c)].
  for (Index v = 0; v < Y.num_morphisms(); ++v) {
    out.restrict.push_back(
        induced_map(qs[Y.tgt(v)], out.values[Y.src(v)], [&](Elem const& t) {
          Index x = X.object_index(t.key());
          return Elem::tag(t.key(), Elem::tuple({F.obj[x].restrict[v](t.value()[0]), t.value()[1]}));
        }));
  }
  return out;
}

// F*(φ) : F*(p) → F*(q), [x,(a,c)] ↦ [x,(a, φ_x c)].
inline PshMap kan_extend_map(PshValuedFunctor const& F, PshMap const& phi, Presheaf const& Fp,
                             Presheaf const& Fq) {
  auto const& X = F.source;
  PshMap m{Fp, Fq, {}};
  for (Index y = 0; y < F.target.num_objects(); ++y) {
    m.components.push_back(FinFn::tabulate(Fp.values[y], Fq.values[y], [&](Elem const& t) {
      Index x = X.object_index(t.key());
      return Elem::tag(t.key(), Elem::tuple({t.value()[0], phi.components[x](t.value()[1])}));
    }));
  }
  return m;
}

inline PshMap kan_extend_map(PshValuedFunctor const& F, PshMap const& phi) {
  return kan_extend_map(F, phi, kan_extend(F, phi.source), kan_extend(F, phi.target));
}

// β* at p : F*(p) → G*(p), [x,(a,c)] ↦ [x,(β_x a, c)].
inline PshMap kan_extend_cell(PshCell const& beta, Presheaf const& Fp, Presheaf const& Gp) {
  auto const& X = beta.source.source;
  PshMap m{Fp, Gp, {}};
  for (Index y = 0; y < beta.source.target.num_objects(); ++y) {
    m.components.push_back(FinFn::tabulate(Fp.values[y], Gp.values[y], [&](Elem const& t) {
      Index x = X.object_index(t.key());
      return Elem::tag(t.key(), Elem::tuple({beta.components[x].components[y](t.value()[0]),
                                             t.value()[1]}));
    }));
  }
  return m;
}

// η_F at x : F(x) → F*(y x), b ↦ [x,(b, id_x)]. Its inverse is the co-Yoneda
// reduction [x',(b,u)] ↦ F(u)(b); both are computed and checked to be inverse.
inline PshMap eta_iso(PshValuedFunctor const& F, Index x, Presheaf const& Fyx) {
  auto const& X = F.source;
  Elem const& xo = X.object(x);
  Elem const& idx = X.label(X.identity(x));
  PshMap e{F.obj[x], Fyx, {}};
  for (Index y = 0; y < F.target.num_objects(); ++y) {
    auto fwd = FinFn::tabulate(F.obj[x].values[y], Fyx.values[y],
                               [&](Elem const& b) { return Elem::tag(xo, Elem::tuple({b, idx})); });
    auto back = FinFn::tabulate(Fyx.values[y], F.obj[x].values[y], [&](Elem const& t) {
      Index u = X.morphism_index(t.value()[1]);
      return F.mor[u].components[y](t.value()[0]);
    });
    if (!compose(back, fwd).is_identity() || !compose(fwd, back).is_identity()) {
      throw NonInvertible("eta at " + xo.repr() + " is not invertible at "
                          + F.target.object(y).repr());
    }
    e.components.push_back(std::move(fwd));
  }
  return e;
}

inline PshMap eta_iso(PshValuedFunctor const& F, Index x) {
  return eta_iso(F, x, kan_extend(F, yoneda(F.source, x)));
}

// P(f)(p) = (y_Y ∘ f)*(p).
inline Presheaf apply_P_functor(Functor const& f, Presheaf const& p) {
  return kan_extend(psh_precompose(yoneda_embedding(f.target), f), p);
}

// ---------------------------------------------------------------------------
// Pointwise limits and colimits. Chosen products are lexicographic pair sets.

inline Presheaf psh_constant(FinCat const& X, FinSet const& s) {
  Presheaf p{X, std::vector<FinSet>(X.num_objects(), s), {}};
  for (std::size_t m = 0; m < X.num_morphisms(); ++m) {
    p.restrict.push_back(FinFn::identity(s));
  }
  return p;
}

inline Presheaf psh_terminal(FinCat const& X) { return psh_constant(X, FinSet{"*"_e}); }
inline Presheaf psh_initial(FinCat const& X) { return psh_constant(X, FinSet()); }

inline PshMap psh_to_terminal(Presheaf const& p, Presheaf const& one) {
  PshMap m{p, one, {}};
  for (auto const& v : p.values) {
    m.components.push_back(FinFn{v, one.values[0], std::vector<Index>(v.size(), 0)});
  }
  return m;
}

inline PshMap psh_from_initial(Presheaf const& zero, Presheaf const& p) {
  PshMap m{zero, p, {}};
  for (std::size_t x = 0; x < p.values.size(); ++x) {
    m.components.push_back(FinFn{zero.values[x], p.values[x], {}});
  }
  return m;
}

struct PshProduct {
  Presheaf prod;
  PshMap pi1;
  PshMap pi2;
};

inline PshProduct psh_product(Presheaf const& p, Presheaf const& q) {
  if (!(p.base == q.base)) {
    throw EndpointMismatch("psh_product: different bases");
  }
  auto const& X = p.base;
  PshProduct r{{X, {}, {}}, {}, {}};
  for (Index x = 0; x < X.num_objects(); ++x) {
    r.prod.values.push_back(product_set(p.values[x], q.values[x]));
  }
  for (Index u = 0; u < X.num_morphisms(); ++u) {
    r.prod.restrict.push_back(
        FinFn::tabulate(r.prod.values[X.tgt(u)], r.prod.values[X.src(u)], [&](Elem const& e) {
          return Elem::tuple({p.restrict[u](e[0]), q.restrict[u](e[1])});
        }));
  }
  r.pi1 = PshMap{r.prod, p, {}};
  r.pi2 = PshMap{r.prod, q, {}};
  for (Index x = 0; x < X.num_objects(); ++x) {
    r.pi1.components.push_back(
        FinFn::tabulate(r.prod.values[x], p.values[x], [](Elem const& e) { return e[0]; }));
    r.pi2.components.push_back(
        FinFn::tabulate(r.prod.values[x], q.values[x], [](Elem const& e) { return e[1]; }));
  }
  return r;
}

// ⟨a, b⟩ : s → p × q for a competitor cone.
inline PshMap psh_pair(PshMap const& a, PshMap const& b, PshProduct const& P) {
  PshMap m{a.source, P.prod, {}};
  for (std::size_t x = 0; x < a.components.size(); ++x) {
    m.components.push_back(FinFn::tabulate(a.source.values[x], P.prod.values[x], [&](Elem const& e) {
      return Elem::tuple({a.components[x](e), b.components[x](e)});
    }));
  }
  return m;
}

struct PshCoproduct {
  Presheaf sum;
  PshMap in1;
  PshMap in2;
};

inline PshCoproduct psh_coproduct(Presheaf const& p, Presheaf const& q) {
  auto const& X = p.base;
  PshCoproduct r{{X, {}, {}}, {}, {}};
  std::vector<Coproduct> cs;
  for (Index x = 0; x < X.num_objects(); ++x) {
    cs.push_back(coproduct({p.values[x], q.values[x]}));
    r.sum.values.push_back(cs.back().sum);
  }
  for (Index u = 0; u < X.num_morphisms(); ++u) {
    r.sum.restrict.push_back(
        FinFn::tabulate(r.sum.values[X.tgt(u)], r.sum.values[X.src(u)], [&](Elem const& e) {
          auto const& side = e.key() == "0"_e ? p : q;
          return Elem::tag(e.key(), side.restrict[u](e.value()));
        }));
  }
  r.in1 = PshMap{p, r.sum, {}};
  r.in2 = PshMap{q, r.sum, {}};
  for (Index x = 0; x < X.num_objects(); ++x) {
    r.in1.components.push_back(cs[x].injections[0]);
    r.in2.components.push_back(cs[x].injections[1]);
  }
  return r;
}

struct PshEqualizer {
  Presheaf eq;
  PshMap incl;
};

inline PshEqualizer psh_equalizer(PshMap const& a, PshMap const& b) {
  if (!(a.source == b.source) || !(a.target == b.target)) {
    throw EndpointMismatch("psh_equalizer: maps are not parallel");
  }
  auto const& p = a.source;
  auto const& X = p.base;
  PshEqualizer r{{X, {}, {}}, {}};
  for (Index x = 0; x < X.num_objects(); ++x) {
    std::vector<Elem> keep;
    for (Index i = 0; i < p.values[x].size(); ++i) {
      if (a.components[x].map[i] == b.components[x].map[i]) {
        keep.push_back(p.values[x][i]);
      }
    }
    r.eq.values.emplace_back(std::move(keep));
  }
  for (Index u = 0; u < X.num_morphisms(); ++u) {
    r.eq.restrict.push_back(FinFn::tabulate(r.eq.values[X.tgt(u)], r.eq.values[X.src(u)],
                                            [&](Elem const& e) { return p.restrict[u](e); }));
  }
  r.incl = PshMap{r.eq, p, {}};
  for (Index x = 0; x < X.num_objects(); ++x) {
    r.incl.components.push_back(
        FinFn::tabulate(r.eq.values[x], p.values[x], [](Elem const& e) { return e; }));
  }
  return r;
}

// The factorization of h through the equalizer, if a ∘ h = b ∘ h.
inline std::optional<PshMap> psh_equalizer_factor(PshMap const& h, PshEqualizer const& E) {
  PshMap m{h.source, E.eq, {}};
  for (std::size_t x = 0; x < h.components.size(); ++x) {
    FinFn f{h.source.values[x], E.eq.values[x], {}};
    for (Index i = 0; i < f.dom.size(); ++i) {
      auto j = E.eq.values[x].find(h.components[x](f.dom[i]));
      if (!j) {
        return std::nullopt;
      }
      f.map.push_back(*j);
    }
    m.components.push_back(std::move(f));
  }
  return m;
}

struct PshPullback {
  Presheaf pb;
  PshMap pi1;
  PshMap pi2;
};

inline PshPullback psh_pullback(PshMap const& a, PshMap const& b) {
  if (!(a.target == b.target)) {
    throw EndpointMismatch("psh_pullback: maps do not share a codomain");
  }
  auto P = psh_product(a.source, b.source);
  auto lhs = psh_compose(a, P.pi1);
  auto rhs = psh_compose(b, P.pi2);
  auto E = psh_equalizer(lhs, rhs);
  return {E.eq, psh_compose(P.pi1, E.incl), psh_compose(P.pi2, E.incl)};
}

// ---------------------------------------------------------------------------
// Limit preservation

enum class LimitKind { terminal, binary_product, pullback, equalizer, initial };

inline std::string to_string(LimitKind k) {
  switch (k) {
    case LimitKind::terminal: return "terminal";
    case LimitKind::binary_product: return "binary_product";
    case LimitKind::pullback: return "pullback";
    case LimitKind::equalizer: return "equalizer";
    case LimitKind::initial: return "initial";
  }
  return "?";
}

namespace detail {

// Records whether `cmp` is an isomorphism, with a witness otherwise.
inline void report_iso(CheckReport& r, PshMap const& cmp, std::string const& what) {
  auto const& X = cmp.source.base;
  for (Index x = 0; x < X.num_objects(); ++x) {
    auto const& c = cmp.components[x];
    if (c.is_bijective()) {
      continue;
    }
    json w{{"comparison", what},
           {"object", X.object(x).repr()},
           {"source_size", c.dom.size()},
           {"target_size", c.cod.size()}};
    for (Index i = 0; i < c.dom.size(); ++i) {
      for (Index j = i + 1; j < c.dom.size(); ++j) {
        if (c.map[i] == c.map[j]) {
          w["identified"] = json::array({c.dom[i].repr(), c.dom[j].repr()});
          i = j = static_cast<Index>(c.dom.size());
        }
      }
    }
    r.fail(std::move(w));
  }
}

}  // namespace detail

// Instance data for a limit in X, used through Yoneda. Objects and morphisms
// are labels of X.
//   terminal:       objects {t}
//   initial:        objects {i}
//   binary_product: objects {a, b, c}, morphisms {p1 : c → a, p2 : c → b}
//   equalizer:      morphisms {u, v : a → b, m : e → a}
//   pullback:       morphisms {u : a → c, v : b → c, p1 : d → a, p2 : d → b}
struct YonedaLimit {
  std::vector<Elem> objects;
  std::vector<Elem> morphisms;
};

inline CheckReport check_preserves_yoneda(LimitKind kind, FinCat const& X, YonedaLimit const& L) {
  CheckReport r("yoneda preserves " + to_string(kind));
  auto F = yoneda_embedding(X);
  auto mor = [&](std::size_t i) { return X.morphism_index(L.morphisms.at(i)); };
  auto y = [&](Index o) { return F.obj[o]; };
  switch (kind) {
    case LimitKind::terminal: {
      Index t = X.object_index(L.objects.at(0));
      auto one = psh_terminal(X);
      detail::report_iso(r, psh_to_terminal(y(t), one), "y(t) -> 1");
      break;
    }
    case LimitKind::initial: {
      Index i = X.object_index(L.objects.at(0));
      for (Index z = 0; z < X.num_objects(); ++z) {
        if (X.hom(i, z).size() != 1) {
          r.skip("the designated object is not initial in the source");
          return r;
        }
      }
      detail::report_iso(r, psh_from_initial(psh_initial(X), y(i)), "0 -> y(i)");
      break;
    }
    case LimitKind::binary_product: {
      Index p1 = mor(0);
      Index p2 = mor(1);
      auto P = psh_product(y(X.tgt(p1)), y(X.tgt(p2)));
      detail::report_iso(r, psh_pair(F.mor[p1], F.mor[p2], P), "y(c) -> y(a) x y(b)");
      break;
    }
    case LimitKind::equalizer: {
      Index u = mor(0);
      Index v = mor(1);
      Index m = mor(2);
      if (X.try_compose(u, m) != X.try_compose(v, m)) {
        r.skip("the designated fork does not commute");
        return r;
      }
      auto E = psh_equalizer(F.mor[u], F.mor[v]);
      auto f = psh_equalizer_factor(F.mor[m], E);
      detail::report_iso(r, *f, "y(e) -> eq(y u, y v)");
      break;
    }
    case LimitKind::pullback: {
      Index u = mor(0);
      Index v = mor(1);
      Index p1 = mor(2);
      Index p2 = mor(3);
      if (X.try_compose(u, p1) != X.try_compose(v, p2)) {
        r.skip("the designated square does not commute");
        return r;
      }
      auto PB = psh_pullback(F.mor[u], F.mor[v]);
      PshProduct P = psh_product(F.mor[u].source, F.mor[v].source);
      auto pair = psh_pair(F.mor[p1], F.mor[p2], P);
      // The pullback is the equalizer-restricted product; pairs land inside it.
      PshMap into{pair.source, PB.pb, {}};
      for (std::size_t x = 0; x < pair.components.size(); ++x) {
        into.components.push_back(FinFn::tabulate(pair.components[x].dom, PB.pb.values[x],
                                                  [&](Elem const& e) { return pair.components[x](e); }));
      }
      detail::report_iso(r, into, "y(d) -> y(a) x_y(c) y(b)");
      break;
    }
  }
  return r;
}

// Instance data for a limit of presheaves on the source of F.
//   terminal, initial: nothing
//   binary_product:    presheaves {p, q}
//   equalizer:         maps {a, b : p → q}
//   pullback:          maps {a : p → r, b : q → r}
struct PshLimit {
  std::vector<Presheaf> presheaves;
  std::vector<PshMap> maps;
};

inline CheckReport check_preserves_kan(LimitKind kind, PshValuedFunctor const& F, PshLimit const& L) {
  CheckReport r("extension preserves " + to_string(kind));
  auto const& X = F.source;
  auto const& Y = F.target;
  switch (kind) {
    case LimitKind::terminal: {
      auto img = kan_extend(F, psh_terminal(X));
      detail::report_iso(r, psh_to_terminal(img, psh_terminal(Y)), "F*(1) -> 1");
      break;
    }
    case LimitKind::initial: {
      auto img = kan_extend(F, psh_initial(X));
      detail::report_iso(r, psh_from_initial(psh_initial(Y), img), "0 -> F*(0)");
      break;
    }
    case LimitKind::binary_product: {
      auto const& p = L.presheaves.at(0);
      auto const& q = L.presheaves.at(1);
      auto P = psh_product(p, q);
      auto Fpq = kan_extend(F, P.prod);
      auto Fp = kan_extend(F, p);
      auto Fq = kan_extend(F, q);
      auto Q = psh_product(Fp, Fq);
      auto cmp = psh_pair(kan_extend_map(F, P.pi1, Fpq, Fp), kan_extend_map(F, P.pi2, Fpq, Fq), Q);
      detail::report_iso(r, cmp, "F*(p x q) -> F*p x F*q");
      break;
    }
    case LimitKind::equalizer: {
      auto const& a = L.maps.at(0);
      auto const& b = L.maps.at(1);
      auto E = psh_equalizer(a, b);
      auto Fp = kan_extend(F, a.source);
      auto Fq = kan_extend(F, a.target);
      auto FE = kan_extend(F, E.eq);
      auto Fa = kan_extend_map(F, a, Fp, Fq);
      auto Fb = kan_extend_map(F, b, Fp, Fq);
      auto E2 = psh_equalizer(Fa, Fb);
      auto cmp = psh_equalizer_factor(kan_extend_map(F, E.incl, FE, Fp), E2);
      detail::report_iso(r, *cmp, "F*(eq) -> eq(F*a, F*b)");
      break;
    }
    case LimitKind::pullback: {
      auto const& a = L.maps.at(0);
      auto const& b = L.maps.at(1);
      auto PB = psh_pullback(a, b);
      auto Fp = kan_extend(F, a.source);
      auto Fq = kan_extend(F, b.source);
      auto Fr = kan_extend(F, a.target);
      auto FPB = kan_extend(F, PB.pb);
      auto PB2 = psh_pullback(kan_extend_map(F, a, Fp, Fr), kan_extend_map(F, b, Fq, Fr));
      auto l = kan_extend_map(F, PB.pi1, FPB, Fp);
      auto rr = kan_extend_map(F, PB.pi2, FPB, Fq);
      PshMap cmp{FPB, PB2.pb, {}};
      for (Index y = 0; y < Y.num_objects(); ++y) {
        cmp.components.push_back(FinFn::tabulate(FPB.values[y], PB2.pb.values[y], [&](Elem const& e) {
          return Elem::tuple({l.components[y](e), rr.components[y](e)});
        }));
      }
      detail::report_iso(r, cmp, "F*(p x_r q) -> F*p x_F*r F*q");
      break;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// The counterexample functor on the fork: E ↦ ∅, A, B ↦ {0,1}, f ↦ id,
// g ↦ twist; a presheaf-valued functor into presheaves on the terminal
// category. It preserves the one nontrivial equalizer of the fork.
inline PshValuedFunctor fork_counterexample(FinCat const& fork, FinCat const& one) {
  FinSet two{"0"_e, "1"_e};
  FinSet none;
  auto val = [&](Elem const& o) { return o == "E"_e ? none : two; };
  PshValuedFunctor F{fork, one, {}, {}};
  for (auto const& o : fork.objects()) {
    F.obj.push_back(psh_constant(one, val(o)));
  }
  for (Index u = 0; u < fork.num_morphisms(); ++u) {
    auto const& src = F.obj[fork.src(u)];
    auto const& tgt = F.obj[fork.tgt(u)];
    FinFn c = FinFn::tabulate(src.values[0], tgt.values[0], [&](Elem const& e) {
      if (fork.label(u) == "g"_e) {
        return e == "0"_e ? "1"_e : "0"_e;
      }
      return e;
    });
    F.mor.push_back(PshMap{src, tgt, {c}});
  }
  return F;
}

// Two global sections 1 ⇉ Q on the fork whose equalizer is not carried to
// the equalizer by the extension of fork_counterexample. Q(B) = {b1, b2},
// Q(A) = {a}, Q(E) = {e}.
inline PshLimit fork_counterexample_sections(FinCat const& fork) {
  Presheaf Q{fork, {}, {}};
  for (auto const& o : fork.objects()) {
    Q.values.push_back(o == "B"_e ? FinSet{"b1"_e, "b2"_e} : FinSet{Elem::atom("q" + o.repr())});
  }
  for (Index u = 0; u < fork.num_morphisms(); ++u) {
    auto const& dom = Q.values[fork.tgt(u)];
    auto const& cod = Q.values[fork.src(u)];
    Q.restrict.push_back(fork.is_identity(u) ? FinFn::identity(dom)
                                             : FinFn{dom, cod, std::vector<Index>(dom.size(), 0)});
  }
  auto one = psh_terminal(fork);
  PshMap s1{one, Q, {}};
  PshMap s2{one, Q, {}};
  for (Index x = 0; x < fork.num_objects(); ++x) {
    bool b = fork.object(x) == "B"_e;
    s1.components.push_back(FinFn{one.values[x], Q.values[x], {0}});
    s2.components.push_back(FinFn{one.values[x], Q.values[x], {static_cast<Index>(b ? 1 : 0)}});
  }
  return PshLimit{{}, {s1, s2}};
}

}  // namespace ck
