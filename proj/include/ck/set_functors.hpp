#pragma once

// Set-valued functors on finite categories: covariant functors, presheaves,
// maps of presheaves, and object-indexed 2-cells between set-valued
// constructions.

#include <string>
#include <utility>
#include <vector>

#include "ck/fincat.hpp"

namespace ck {

// Covariant C → FinSet. action[m] : values[src m] → values[tgt m].
struct SetFunctor {
  FinCat base;
  std::vector<FinSet> values;
  std::vector<FinFn> action;

  FinSet const& at(Elem const& o) const { return values[base.object_index(o)]; }
};

// Contravariant X → FinSet. restrict[f] : values[tgt f] → values[src f].
struct Presheaf {
  FinCat base;
  std::vector<FinSet> values;
  std::vector<FinFn> restrict;

  FinSet const& at(Elem const& o) const { return values[base.object_index(o)]; }
  FinSet const& at(Index o) const { return values[o]; }

  std::size_t total_size() const {
    std::size_t n = 0;
    for (auto const& v : values) {
      n += v.size();
    }
    return n;
  }

  friend bool operator==(Presheaf const& a, Presheaf const& b) {
    return a.values == b.values && a.restrict == b.restrict && a.base == b.base;
  }
};

// Natural transformation between presheaves on a common base.
struct PshMap {
  Presheaf source;
  Presheaf target;
  std::vector<FinFn> components;

  friend bool operator==(PshMap const& a, PshMap const& b) {
    return a.components == b.components;
  }
};

inline ValidationReport validate_set_functor(SetFunctor const& F) {
  ValidationReport r;
  auto const& C = F.base;
  if (F.values.size() != C.num_objects() || F.action.size() != C.num_morphisms()) {
    r.add("set functor tables do not cover the base category");
    return r;
  }
  for (std::size_t m = 0; m < C.num_morphisms(); ++m) {
    Index mi = static_cast<Index>(m);
    if (!(F.action[m].dom == F.values[C.src(mi)]) || !(F.action[m].cod == F.values[C.tgt(mi)])) {
      r.add("action of " + C.label(mi).repr() + " has wrong endpoints");
    }
  }
  if (!r.ok()) {
    return r;
  }
  for (std::size_t a = 0; a < C.num_objects(); ++a) {
    if (!F.action[C.identity(static_cast<Index>(a))].is_identity()) {
      r.add("identity of " + C.object(static_cast<Index>(a)).repr() + " does not act trivially");
    }
  }
  for (auto const& [k, h] : C.composition_table()) {
    Index g = static_cast<Index>(k / C.num_morphisms());
    Index f = static_cast<Index>(k % C.num_morphisms());
    if (!(compose(F.action[g], F.action[f]) == F.action[h])) {
      r.add("action does not respect the composite " + C.label(g).repr() + " o "
            + C.label(f).repr());
    }
  }
  return r;
}

inline ValidationReport validate_presheaf(Presheaf const& p) {
  ValidationReport r;
  auto const& C = p.base;
  if (p.values.size() != C.num_objects() || p.restrict.size() != C.num_morphisms()) {
    r.add("presheaf tables do not cover the base category");
    return r;
  }
  for (std::size_t m = 0; m < C.num_morphisms(); ++m) {
    Index mi = static_cast<Index>(m);
    if (!(p.restrict[m].dom == p.values[C.tgt(mi)]) || !(p.restrict[m].cod == p.values[C.src(mi)])) {
      r.add("restriction along " + C.label(mi).repr() + " has wrong endpoints");
    }
  }
  if (!r.ok()) {
    return r;
  }
  for (std::size_t a = 0; a < C.num_objects(); ++a) {
    if (!p.restrict[C.identity(static_cast<Index>(a))].is_identity()) {
      r.add("restriction along the identity of " + C.object(static_cast<Index>(a)).repr()
            + " is not the identity");
    }
  }
  for (auto const& [k, h] : C.composition_table()) {
    Index g = static_cast<Index>(k / C.num_morphisms());
    Index f = static_cast<Index>(k % C.num_morphisms());
    // p(g ∘ f) = p(f) ∘ p(g)
    if (!(compose(p.restrict[f], p.restrict[g]) == p.restrict[h])) {
      r.add("restriction does not respect the composite " + C.label(g).repr() + " o "
            + C.label(f).repr());
    }
  }
  return r;
}

inline ValidationReport validate_psh_map(PshMap const& a) {
  ValidationReport r;
  auto const& C = a.source.base;
  if (!(a.source.base == a.target.base)) {
    r.add("presheaf map endpoints live on different bases");
    return r;
  }
  if (a.components.size() != C.num_objects()) {
    r.add("presheaf map does not have one component per object");
    return r;
  }
  for (std::size_t x = 0; x < C.num_objects(); ++x) {
    if (!(a.components[x].dom == a.source.values[x]) || !(a.components[x].cod == a.target.values[x])) {
      r.add("component at " + C.object(static_cast<Index>(x)).repr() + " has wrong endpoints");
    }
  }
  if (!r.ok()) {
    return r;
  }
  for (std::size_t m = 0; m < C.num_morphisms(); ++m) {
    Index mi = static_cast<Index>(m);
    auto lhs = compose(a.components[C.src(mi)], a.source.restrict[m]);
    auto rhs = compose(a.target.restrict[m], a.components[C.tgt(mi)]);
    if (auto d = lhs.first_difference(rhs)) {
      r.add("naturality square fails at " + C.label(mi).repr() + " on element "
            + lhs.dom[*d].repr());
    }
  }
  return r;
}

inline bool is_natural(PshMap const& a) { return validate_psh_map(a).ok(); }

// A presheaf on X is the same data as a covariant functor on op(X).
inline SetFunctor as_covariant(Presheaf const& p) {
  return SetFunctor{opposite(p.base), p.values, p.restrict};
}

inline Presheaf as_presheaf(SetFunctor const& F) {
  return Presheaf{opposite(F.base), F.values, F.action};
}

inline PshMap psh_identity(Presheaf const& p) {
  PshMap a{p, p, {}};
  for (auto const& v : p.values) {
    a.components.push_back(FinFn::identity(v));
  }
  return a;
}

// β ∘ α
inline PshMap psh_compose(PshMap const& b, PshMap const& a) {
  PshMap c{a.source, b.target, {}};
  if (a.components.size() != b.components.size()) {
    throw EndpointMismatch("psh_compose: maps live on different bases");
  }
  for (std::size_t x = 0; x < a.components.size(); ++x) {
    c.components.push_back(compose(b.components[x], a.components[x]));
  }
  return c;
}

inline PshMap psh_invert(PshMap const& a) {
  PshMap inv{a.target, a.source, {}};
  for (std::size_t x = 0; x < a.components.size(); ++x) {
    if (!a.components[x].is_bijective()) {
      throw NonInvertible("presheaf map component at " + a.source.base.object(static_cast<Index>(x)).repr()
                          + " is not bijective");
    }
    inv.components.push_back(a.components[x].inverse());
  }
  return inv;
}

inline bool psh_is_iso(PshMap const& a) {
  for (auto const& c : a.components) {
    if (!c.is_bijective()) {
      return false;
    }
  }
  return true;
}

// Witness for the first component/element where two parallel maps differ.
inline std::optional<json> psh_difference(PshMap const& lhs, PshMap const& rhs) {
  auto const& C = lhs.source.base;
  for (std::size_t x = 0; x < lhs.components.size(); ++x) {
    auto const& l = lhs.components[x];
    auto const& r = rhs.components[x];
    if (!(l.dom == r.dom) || !(l.cod == r.cod)) {
      return json{{"object", C.object(static_cast<Index>(x)).repr()},
                  {"problem", "the two sides have different endpoints"},
                  {"lhs_size", l.dom.size()},
                  {"rhs_size", r.dom.size()}};
    }
    if (auto d = l.first_difference(r)) {
      return json{{"object", C.object(static_cast<Index>(x)).repr()},
                  {"element", l.dom[*d].repr()},
                  {"lhs", l.cod[l.map[*d]].repr()},
                  {"rhs", r.cod[r.map[*d]].repr()}};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// TwoCell: an object-indexed family of finite functions.

struct TwoCell {
  std::vector<Elem> index;
  std::vector<FinFn> components;

  friend bool operator==(TwoCell const& a, TwoCell const& b) {
    return a.index == b.index && a.components == b.components;
  }
};

inline TwoCell twocell_identity(std::vector<Elem> index, std::vector<FinSet> const& sets) {
  TwoCell c{std::move(index), {}};
  for (auto const& s : sets) {
    c.components.push_back(FinFn::identity(s));
  }
  return c;
}

inline TwoCell twocell_of(SetFunctor const& F, std::vector<FinFn> comps) {
  return TwoCell{F.base.objects().elems(), std::move(comps)};
}

// β ∘ α
inline TwoCell twocell_vcompose(TwoCell const& b, TwoCell const& a) {
  if (a.index != b.index) {
    throw EndpointMismatch("twocell_vcompose: index sets differ");
  }
  TwoCell c{a.index, {}};
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    c.components.push_back(compose(b.components[i], a.components[i]));
  }
  return c;
}

inline TwoCell twocell_invert(TwoCell const& a) {
  TwoCell c{a.index, {}};
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    if (!a.components[i].is_bijective()) {
      throw NonInvertible("component at " + a.index[i].repr() + " is not bijective");
    }
    c.components.push_back(a.components[i].inverse());
  }
  return c;
}

// α H for α indexed by the objects of H's target.
inline TwoCell twocell_whisker_right(TwoCell const& a, Functor const& H) {
  TwoCell c{H.source.objects().elems(), {}};
  for (Index o : H.obj) {
    auto const& lbl = H.target.object(o);
    auto it = std::find(a.index.begin(), a.index.end(), lbl);
    if (it == a.index.end()) {
      throw EndpointMismatch("twocell_whisker_right: functor leaves the index set");
    }
    c.components.push_back(a.components[static_cast<std::size_t>(it - a.index.begin())]);
  }
  return c;
}

// K α for a set functor K on the common target of α's endpoints.
inline TwoCell twocell_whisker_left(SetFunctor const& K, NatTrans const& a) {
  if (!(K.base == a.source.target)) {
    throw EndpointMismatch("twocell_whisker_left: set functor lives on the wrong category");
  }
  TwoCell c{a.source.source.objects().elems(), {}};
  for (Index m : a.components) {
    c.components.push_back(K.action[m]);
  }
  return c;
}

// Naturality of a TwoCell between two set functors on the same base.
inline ValidationReport validate_twocell(TwoCell const& a, SetFunctor const& F, SetFunctor const& G) {
  ValidationReport r;
  auto const& C = F.base;
  if (a.components.size() != C.num_objects()) {
    r.add("2-cell does not have one component per object");
    return r;
  }
  for (std::size_t x = 0; x < C.num_objects(); ++x) {
    if (!(a.components[x].dom == F.values[x]) || !(a.components[x].cod == G.values[x])) {
      r.add("component at " + C.object(static_cast<Index>(x)).repr() + " has wrong endpoints");
    }
  }
  if (!r.ok()) {
    return r;
  }
  for (std::size_t m = 0; m < C.num_morphisms(); ++m) {
    Index mi = static_cast<Index>(m);
    auto lhs = compose(G.action[m], a.components[C.src(mi)]);
    auto rhs = compose(a.components[C.tgt(mi)], F.action[m]);
    if (!(lhs == rhs)) {
      r.add("naturality square fails at " + C.label(mi).repr());
    }
  }
  return r;
}

}  // namespace ck
