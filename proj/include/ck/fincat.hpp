#pragma once

// Finite sets, finite functions, finite categories, functors and natural
// transformations.
//
// All types are immutable handles: copying is cheap and values are never
// mutated after construction, so everything here is safe to share across
// threads.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ck/elem.hpp"
#include "ck/errors.hpp"
#include "ck/report.hpp"

namespace ck {

using Index = std::uint32_t;

// ---------------------------------------------------------------------------
// FinSet

class FinSet {
 public:
  FinSet() : impl_(empty_impl()) {}

  // Sorts into canonical order. Duplicate labels are rejected.
  explicit FinSet(std::vector<Elem> elems) {
    std::sort(elems.begin(), elems.end());
    for (std::size_t i = 1; i < elems.size(); ++i) {
      if (elems[i] == elems[i - 1]) {
        throw InvalidData("duplicate label in finite set: " + elems[i].repr());
      }
    }
    auto impl = std::make_shared<Impl>();
    impl->elems = std::move(elems);
    impl->index_all();
    impl_ = std::move(impl);
  }

  FinSet(std::initializer_list<Elem> elems) : FinSet(std::vector<Elem>(elems)) {}

  // A set of class representatives together with the carrier elements that
  // name each class. `reps` must already be sorted and distinct.
  static FinSet quotient(std::vector<Elem> reps,
                         std::vector<std::pair<Elem, Index>> aliases) {
    auto impl = std::make_shared<Impl>();
    impl->elems = std::move(reps);
    impl->index_all();
    for (auto& [e, i] : aliases) {
      if (!impl->index.count(e)) {
        impl->alias.emplace(std::move(e), i);
      }
    }
    FinSet s;
    s.impl_ = std::move(impl);
    return s;
  }

  static FinSet range(std::size_t n) {
    std::vector<Elem> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      v.push_back(Elem::atom(static_cast<long long>(i)));
    }
    return FinSet(std::move(v));
  }

  std::size_t size() const noexcept { return impl_->elems.size(); }
  bool empty() const noexcept { return impl_->elems.empty(); }
  Elem const& operator[](std::size_t i) const { return impl_->elems[i]; }
  std::vector<Elem> const& elems() const noexcept { return impl_->elems; }
  auto begin() const noexcept { return impl_->elems.begin(); }
  auto end() const noexcept { return impl_->elems.end(); }

  // Index of `e`, accepting any carrier element that names a class.
  std::optional<Index> find(Elem const& e) const {
    if (auto it = impl_->index.find(e); it != impl_->index.end()) {
      return it->second;
    }
    if (auto it = impl_->alias.find(e); it != impl_->alias.end()) {
      return it->second;
    }
    return std::nullopt;
  }

  Index index_of(Elem const& e) const {
    if (auto i = find(e)) {
      return *i;
    }
    throw InvalidData("label " + e.repr() + " is not an element of the set");
  }

  // The canonical member equal to (or naming the class of) `e`.
  Elem const& normalize(Elem const& e) const { return (*this)[index_of(e)]; }

  bool contains(Elem const& e) const { return find(e).has_value(); }

  bool is_quotient() const noexcept { return !impl_->alias.empty(); }

  bool same_handle(FinSet const& o) const noexcept { return impl_ == o.impl_; }

  friend bool operator==(FinSet const& a, FinSet const& b) {
    return a.impl_ == b.impl_ || a.impl_->elems == b.impl_->elems;
  }

  json to_json() const {
    json j = json::array();
    for (auto const& e : elems()) {
      j.push_back(e.repr());
    }
    return j;
  }

 private:
  struct Impl {
    std::vector<Elem> elems;
    std::unordered_map<Elem, Index> index;
    std::unordered_map<Elem, Index> alias;

    void index_all() {
      index.reserve(elems.size());
      for (std::size_t i = 0; i < elems.size(); ++i) {
        index.emplace(elems[i], static_cast<Index>(i));
      }
    }
  };

  static std::shared_ptr<Impl const> const& empty_impl() {
    static std::shared_ptr<Impl const> const e = std::make_shared<Impl>();
    return e;
  }

  std::shared_ptr<Impl const> impl_;
};

// ---------------------------------------------------------------------------
// FinFn

struct FinFn {
  FinSet dom;
  FinSet cod;
  std::vector<Index> map;

  static FinFn identity(FinSet s) {
    FinFn f{s, s, {}};
    f.map.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      f.map[i] = static_cast<Index>(i);
    }
    return f;
  }

  // Evaluates `fn` on every element of `dom` and normalizes the result in
  // `cod`. Throws InvalidData if a result is not an element of `cod`.
  template <typename F>
  static FinFn tabulate(FinSet dom, FinSet cod, F&& fn) {
    FinFn f{std::move(dom), std::move(cod), {}};
    f.map.reserve(f.dom.size());
    for (auto const& e : f.dom) {
      f.map.push_back(f.cod.index_of(fn(e)));
    }
    return f;
  }

  static FinFn from_pairs(FinSet dom, FinSet cod,
                          std::vector<std::pair<Elem, Elem>> const& pairs) {
    std::unordered_map<Elem, Elem> m;
    for (auto const& [a, b] : pairs) {
      m.emplace(a, b);
    }
    return tabulate(std::move(dom), std::move(cod), [&](Elem const& e) {
      auto it = m.find(e);
      if (it == m.end()) {
        throw InvalidData("function is not total: no image for " + e.repr());
      }
      return it->second;
    });
  }

  Index operator()(Index i) const { return map[i]; }
  Elem const& operator()(Elem const& e) const { return cod[map[dom.index_of(e)]]; }

  bool is_injective() const {
    std::vector<char> hit(cod.size(), 0);
    for (Index v : map) {
      if (hit[v]) {
        return false;
      }
      hit[v] = 1;
    }
    return true;
  }

  bool is_surjective() const {
    std::vector<char> hit(cod.size(), 0);
    for (Index v : map) {
      hit[v] = 1;
    }
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  }

  bool is_bijective() const { return dom.size() == cod.size() && is_injective(); }

  bool is_identity() const {
    if (!(dom == cod)) {
      return false;
    }
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (map[i] != i) {
        return false;
      }
    }
    return true;
  }

  FinFn inverse() const {
    if (!is_bijective()) {
      throw NonInvertible("function is not a bijection");
    }
    FinFn g{cod, dom, std::vector<Index>(map.size())};
    for (std::size_t i = 0; i < map.size(); ++i) {
      g.map[map[i]] = static_cast<Index>(i);
    }
    return g;
  }

  // First element where the two functions differ, if any. Endpoints must
  // already agree.
  std::optional<Index> first_difference(FinFn const& other) const {
    for (std::size_t i = 0; i < map.size() && i < other.map.size(); ++i) {
      if (map[i] != other.map[i]) {
        return static_cast<Index>(i);
      }
    }
    return std::nullopt;
  }

  friend bool operator==(FinFn const& a, FinFn const& b) {
    return a.map == b.map && a.dom == b.dom && a.cod == b.cod;
  }

  json to_json() const {
    json j = json::object();
    for (std::size_t i = 0; i < map.size(); ++i) {
      j[dom[i].repr()] = cod[map[i]].repr();
    }
    return j;
  }
};

// g ∘ f
inline FinFn compose(FinFn const& g, FinFn const& f) {
  if (!(f.cod == g.dom)) {
    throw EndpointMismatch("cannot compose finite functions: codomain/domain differ");
  }
  FinFn h{f.dom, g.cod, std::vector<Index>(f.map.size())};
  for (std::size_t i = 0; i < f.map.size(); ++i) {
    h.map[i] = g.map[f.map[i]];
  }
  return h;
}

// Swaps the images of the first two elements with distinct images. Used by
// fault-injection harnesses; returns false when no such pair exists.
inline bool corrupt_in_place(FinFn& f) {
  for (std::size_t i = 0; i < f.map.size(); ++i) {
    for (std::size_t j = i + 1; j < f.map.size(); ++j) {
      if (f.map[i] != f.map[j]) {
        std::swap(f.map[i], f.map[j]);
        return true;
      }
    }
  }
  if (!f.map.empty() && f.cod.size() > 1) {
    f.map[0] = (f.map[0] + 1) % static_cast<Index>(f.cod.size());
    return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// FinCat

struct Morphism {
  Elem label;
  Index src = 0;
  Index tgt = 0;
};

class FinCat {
 public:
  class Builder;

  FinCat() : impl_(std::make_shared<Impl>()) {}

  std::string const& name() const noexcept { return impl_->name; }
  FinSet const& objects() const noexcept { return impl_->objects; }
  std::size_t num_objects() const noexcept { return impl_->objects.size(); }
  std::size_t num_morphisms() const noexcept { return impl_->mors.size(); }
  std::vector<Morphism> const& morphisms() const noexcept { return impl_->mors; }
  Morphism const& morphism(Index m) const { return impl_->mors.at(m); }
  FinSet const& morphism_labels() const noexcept { return impl_->mor_labels; }
  Elem const& object(Index a) const { return impl_->objects[a]; }
  Elem const& label(Index m) const { return impl_->mors.at(m).label; }
  Index src(Index m) const { return impl_->mors[m].src; }
  Index tgt(Index m) const { return impl_->mors[m].tgt; }

  Index object_index(Elem const& e) const { return impl_->objects.index_of(e); }
  Index morphism_index(Elem const& e) const { return impl_->mor_labels.index_of(e); }

  Index identity(Index a) const { return impl_->ids.at(a); }
  bool is_identity(Index m) const { return impl_->ids[impl_->mors[m].src] == m; }

  // Morphism indices a → b in canonical label order.
  std::vector<Index> const& hom(Index a, Index b) const {
    return impl_->hom[static_cast<std::size_t>(a) * num_objects() + b];
  }
  // The same hom as a set of morphism labels.
  FinSet const& hom_set(Index a, Index b) const {
    return impl_->hom_sets[static_cast<std::size_t>(a) * num_objects() + b];
  }

  std::optional<Index> try_compose(Index g, Index f) const {
    auto it = impl_->comp.find(key(g, f));
    if (it == impl_->comp.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  // g ∘ f (f first).
  Index compose(Index g, Index f) const {
    if (auto h = try_compose(g, f)) {
      return *h;
    }
    throw InvalidData("composite " + label(g).repr() + " o " + label(f).repr()
                      + " is not defined in " + name());
  }

  Elem const& compose_labels(Elem const& g, Elem const& f) const {
    return label(compose(morphism_index(g), morphism_index(f)));
  }

  bool same_handle(FinCat const& o) const noexcept { return impl_ == o.impl_; }

  // Label-exact structural equality; names are ignored.
  friend bool operator==(FinCat const& a, FinCat const& b) {
    if (a.impl_ == b.impl_) {
      return true;
    }
    if (!(a.objects() == b.objects()) || !(a.morphism_labels() == b.morphism_labels())) {
      return false;
    }
    for (std::size_t m = 0; m < a.num_morphisms(); ++m) {
      if (a.src(m) != b.src(m) || a.tgt(m) != b.tgt(m)) {
        return false;
      }
    }
    return a.impl_->ids == b.impl_->ids && a.impl_->comp == b.impl_->comp;
  }

  std::unordered_map<std::uint64_t, Index> const& composition_table() const noexcept {
    return impl_->comp;
  }

  std::uint64_t key(Index g, Index f) const noexcept {
    return static_cast<std::uint64_t>(g) * num_morphisms() + f;
  }

 private:
  struct Impl {
    std::string name;
    FinSet objects;
    std::vector<Morphism> mors;
    FinSet mor_labels;
    std::vector<Index> ids;
    std::vector<std::vector<Index>> hom;
    std::vector<FinSet> hom_sets;
    std::unordered_map<std::uint64_t, Index> comp;
  };

  explicit FinCat(std::shared_ptr<Impl const> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<Impl const> impl_;
};

class FinCat::Builder {
 public:
  explicit Builder(std::string name = {}) : name_(std::move(name)) {}

  Builder& object(Elem o) {
    objects_.push_back(std::move(o));
    return *this;
  }

  Builder& morphism(Elem label, Elem src, Elem tgt) {
    mors_.push_back({std::move(label), std::move(src), std::move(tgt)});
    return *this;
  }

  // Adds `label` as the identity morphism of `obj`.
  Builder& identity(Elem obj, Elem label) {
    mors_.push_back({label, obj, obj});
    ids_.emplace_back(std::move(obj), std::move(label));
    return *this;
  }

  // Records g ∘ f = h.
  Builder& compose(Elem g, Elem f, Elem h) {
    comps_.push_back({std::move(g), std::move(f), std::move(h)});
    return *this;
  }

  // Fills every composable pair without an explicit entry.
  Builder& fill_composition(std::function<Elem(Elem const&, Elem const&)> fn) {
    filler_ = std::move(fn);
    return *this;
  }

  FinCat build() const {
    auto impl = std::make_shared<Impl>();
    impl->name = name_;
    impl->objects = FinSet(objects_);
    std::vector<Elem> labels;
    labels.reserve(mors_.size());
    for (auto const& m : mors_) {
      labels.push_back(m.label);
    }
    impl->mor_labels = FinSet(labels);
    std::size_t const n = impl->objects.size();
    std::size_t const nm = impl->mor_labels.size();
    impl->mors.resize(nm);
    for (auto const& m : mors_) {
      Index i = impl->mor_labels.index_of(m.label);
      impl->mors[i] = {m.label, impl->objects.index_of(m.src), impl->objects.index_of(m.tgt)};
    }
    impl->ids.assign(n, static_cast<Index>(-1));
    for (auto const& [o, l] : ids_) {
      Index a = impl->objects.index_of(o);
      if (impl->ids[a] != static_cast<Index>(-1)) {
        throw InvalidData("object " + o.repr() + " has two identities");
      }
      impl->ids[a] = impl->mor_labels.index_of(l);
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (impl->ids[a] == static_cast<Index>(-1)) {
        throw InvalidData("object " + impl->objects[a].repr() + " has no identity");
      }
    }
    impl->hom.assign(n * n, {});
    for (std::size_t m = 0; m < nm; ++m) {
      impl->hom[impl->mors[m].src * n + impl->mors[m].tgt].push_back(static_cast<Index>(m));
    }
    impl->hom_sets.reserve(n * n);
    for (auto const& h : impl->hom) {
      std::vector<Elem> ls;
      ls.reserve(h.size());
      for (Index m : h) {
        ls.push_back(impl->mors[m].label);
      }
      impl->hom_sets.emplace_back(std::move(ls));
    }
    auto key = [nm](Index g, Index f) { return static_cast<std::uint64_t>(g) * nm + f; };
    for (auto const& c : comps_) {
      Index g = impl->mor_labels.index_of(c.g);
      Index f = impl->mor_labels.index_of(c.f);
      Index h = impl->mor_labels.index_of(c.h);
      impl->comp[key(g, f)] = h;
    }
    // Unit entries and the filler cover all remaining composable pairs.
    for (std::size_t f = 0; f < nm; ++f) {
      Index s = impl->mors[f].src;
      Index t = impl->mors[f].tgt;
      impl->comp.emplace(key(impl->ids[t], static_cast<Index>(f)), static_cast<Index>(f));
      impl->comp.emplace(key(static_cast<Index>(f), impl->ids[s]), static_cast<Index>(f));
    }
    if (filler_) {
      for (std::size_t f = 0; f < nm; ++f) {
        for (std::size_t b = 0; b < n; ++b) {
          for (Index g : impl->hom[impl->mors[f].tgt * n + b]) {
            auto k = key(g, static_cast<Index>(f));
            if (!impl->comp.count(k)) {
              impl->comp[k] = impl->mor_labels.index_of(
                  filler_(impl->mors[g].label, impl->mors[f].label));
            }
          }
        }
      }
    }
    return FinCat(std::move(impl));
  }

 private:
  struct RawMor {
    Elem label, src, tgt;
  };
  struct RawComp {
    Elem g, f, h;
  };

  std::string name_;
  std::vector<Elem> objects_;
  std::vector<RawMor> mors_;
  std::vector<std::pair<Elem, Elem>> ids_;
  std::vector<RawComp> comps_;
  std::function<Elem(Elem const&, Elem const&)> filler_;
};

// Lists every violated closure, unit and associativity instance.
inline ValidationReport validate_category(FinCat const& c) {
  ValidationReport r;
  std::size_t const n = c.num_objects();
  auto const& L = [&](Index m) { return c.label(m).repr(); };
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
    for (std::size_t b = 0; b < n; ++b) {
      for (Index g : c.hom(c.tgt(f), static_cast<Index>(b))) {
        auto h = c.try_compose(g, static_cast<Index>(f));
        if (!h) {
          r.add("composite " + L(g) + " o " + L(static_cast<Index>(f)) + " is undefined");
        } else if (c.src(*h) != c.src(f) || c.tgt(*h) != b) {
          r.add("composite " + L(g) + " o " + L(static_cast<Index>(f)) + " = " + L(*h)
                + " lies in the wrong hom set");
        }
      }
    }
  }
  for (auto const& [k, h] : c.composition_table()) {
    Index g = static_cast<Index>(k / c.num_morphisms());
    Index f = static_cast<Index>(k % c.num_morphisms());
    if (c.tgt(f) != c.src(g)) {
      r.add("composition entry for non-composable pair " + L(g) + " o " + L(f));
    }
  }
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
    Index fi = static_cast<Index>(f);
    auto l = c.try_compose(c.identity(c.tgt(fi)), fi);
    auto rr = c.try_compose(fi, c.identity(c.src(fi)));
    if (!l || *l != fi) {
      r.add("left unit law fails at " + L(fi));
    }
    if (!rr || *rr != fi) {
      r.add("right unit law fails at " + L(fi));
    }
  }
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
    Index fi = static_cast<Index>(f);
    for (std::size_t b = 0; b < n; ++b) {
      for (Index g : c.hom(c.tgt(fi), static_cast<Index>(b))) {
        for (std::size_t d = 0; d < n; ++d) {
          for (Index h : c.hom(static_cast<Index>(b), static_cast<Index>(d))) {
            auto gf = c.try_compose(g, fi);
            auto hg = c.try_compose(h, g);
            if (!gf || !hg) {
              continue;
            }
            auto lhs = c.try_compose(h, *gf);
            auto rhs = c.try_compose(*hg, fi);
            if (!lhs || !rhs || *lhs != *rhs) {
              r.add("associativity fails at triple (" + L(h) + ", " + L(g) + ", " + L(fi) + ")");
            }
          }
        }
      }
    }
  }
  return r;
}

inline FinCat opposite(FinCat const& c) {
  FinCat::Builder b(c.name().rfind("op(", 0) == 0 && c.name().back() == ')'
                        ? c.name().substr(3, c.name().size() - 4)
                        : "op(" + c.name() + ")");
  for (auto const& o : c.objects()) {
    b.object(o);
  }
  for (std::size_t m = 0; m < c.num_morphisms(); ++m) {
    Index mi = static_cast<Index>(m);
    if (c.is_identity(mi)) {
      b.identity(c.object(c.src(mi)), c.label(mi));
    } else {
      b.morphism(c.label(mi), c.object(c.tgt(mi)), c.object(c.src(mi)));
    }
  }
  for (auto const& [k, h] : c.composition_table()) {
    Index g = static_cast<Index>(k / c.num_morphisms());
    Index f = static_cast<Index>(k % c.num_morphisms());
    b.compose(c.label(f), c.label(g), c.label(h));
  }
  return b.build();
}

// Objects and morphisms are pairs; composition is componentwise.
inline FinCat product(FinCat const& c, FinCat const& d) {
  FinCat::Builder b(c.name() + "x" + d.name());
  for (auto const& x : c.objects()) {
    for (auto const& y : d.objects()) {
      b.object(Elem::tuple({x, y}));
    }
  }
  for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
    for (std::size_t g = 0; g < d.num_morphisms(); ++g) {
      Index fi = static_cast<Index>(f);
      Index gi = static_cast<Index>(g);
      Elem label = Elem::tuple({c.label(fi), d.label(gi)});
      if (c.is_identity(fi) && d.is_identity(gi)) {
        b.identity(Elem::tuple({c.object(c.src(fi)), d.object(d.src(gi))}), label);
      } else {
        b.morphism(label, Elem::tuple({c.object(c.src(fi)), d.object(d.src(gi))}),
                   Elem::tuple({c.object(c.tgt(fi)), d.object(d.tgt(gi))}));
      }
    }
  }
  b.fill_composition([&](Elem const& g, Elem const& f) {
    return Elem::tuple({c.compose_labels(g[0], f[0]), d.compose_labels(g[1], f[1])});
  });
  return b.build();
}

// Full subcategory on the objects satisfying `keep`.
template <typename Pred>
FinCat full_subcategory(FinCat const& c, Pred&& keep, std::string name = {}) {
  FinCat::Builder b(name.empty() ? c.name() + "|sub" : std::move(name));
  std::vector<char> kept(c.num_objects());
  for (std::size_t a = 0; a < c.num_objects(); ++a) {
    kept[a] = keep(c.object(static_cast<Index>(a))) ? 1 : 0;
    if (kept[a]) {
      b.object(c.object(static_cast<Index>(a)));
    }
  }
  for (std::size_t m = 0; m < c.num_morphisms(); ++m) {
    Index mi = static_cast<Index>(m);
    if (!kept[c.src(mi)] || !kept[c.tgt(mi)]) {
      continue;
    }
    if (c.is_identity(mi)) {
      b.identity(c.object(c.src(mi)), c.label(mi));
    } else {
      b.morphism(c.label(mi), c.object(c.src(mi)), c.object(c.tgt(mi)));
    }
  }
  b.fill_composition([&](Elem const& g, Elem const& f) { return c.compose_labels(g, f); });
  return b.build();
}

// ---------------------------------------------------------------------------
// Functor

struct Functor {
  FinCat source;
  FinCat target;
  std::vector<Index> obj;
  std::vector<Index> mor;

  template <typename FO, typename FM>
  static Functor tabulate(FinCat s, FinCat t, FO&& fobj, FM&& fmor) {
    Functor F{std::move(s), std::move(t), {}, {}};
    for (auto const& o : F.source.objects()) {
      F.obj.push_back(F.target.object_index(fobj(o)));
    }
    for (auto const& m : F.source.morphisms()) {
      F.mor.push_back(F.target.morphism_index(fmor(m.label)));
    }
    return F;
  }

  static Functor from_labels(FinCat s, FinCat t, std::map<Elem, Elem> const& objs,
                             std::map<Elem, Elem> const& mors) {
    auto look = [](std::map<Elem, Elem> const& m, Elem const& e, char const* what) {
      auto it = m.find(e);
      if (it == m.end()) {
        throw InvalidData(std::string("functor has no image for ") + what + " " + e.repr());
      }
      return it->second;
    };
    return tabulate(
        std::move(s), std::move(t), [&](Elem const& o) { return look(objs, o, "object"); },
        [&](Elem const& m) { return look(mors, m, "morphism"); });
  }

  Elem const& on_object(Elem const& o) const {
    return target.object(obj[source.object_index(o)]);
  }
  Elem const& on_morphism(Elem const& m) const {
    return target.label(mor[source.morphism_index(m)]);
  }

  friend bool operator==(Functor const& a, Functor const& b) {
    return a.obj == b.obj && a.mor == b.mor && a.source == b.source && a.target == b.target;
  }
};

inline ValidationReport validate_functor(Functor const& F) {
  ValidationReport r;
  auto const& S = F.source;
  auto const& T = F.target;
  if (F.obj.size() != S.num_objects() || F.mor.size() != S.num_morphisms()) {
    r.add("functor tables do not cover the source category");
    return r;
  }
  for (std::size_t m = 0; m < S.num_morphisms(); ++m) {
    Index mi = static_cast<Index>(m);
    if (T.src(F.mor[m]) != F.obj[S.src(mi)] || T.tgt(F.mor[m]) != F.obj[S.tgt(mi)]) {
      r.add("functor does not preserve source/target of " + S.label(mi).repr());
    }
  }
  for (std::size_t a = 0; a < S.num_objects(); ++a) {
    if (F.mor[S.identity(static_cast<Index>(a))] != T.identity(F.obj[a])) {
      r.add("functor does not preserve the identity of " + S.object(static_cast<Index>(a)).repr());
    }
  }
  for (auto const& [k, h] : S.composition_table()) {
    Index g = static_cast<Index>(k / S.num_morphisms());
    Index f = static_cast<Index>(k % S.num_morphisms());
    auto img = T.try_compose(F.mor[g], F.mor[f]);
    if (!img || *img != F.mor[h]) {
      r.add("functor does not preserve the composite " + S.label(g).repr() + " o "
            + S.label(f).repr());
    }
  }
  return r;
}

inline Functor identity_functor(FinCat const& c) {
  Functor F{c, c, {}, {}};
  for (std::size_t a = 0; a < c.num_objects(); ++a) {
    F.obj.push_back(static_cast<Index>(a));
  }
  for (std::size_t m = 0; m < c.num_morphisms(); ++m) {
    F.mor.push_back(static_cast<Index>(m));
  }
  return F;
}

// G ∘ F
inline Functor functor_compose(Functor const& G, Functor const& F) {
  if (!(F.target == G.source)) {
    throw EndpointMismatch("functor_compose: target of F is not the source of G");
  }
  Functor H{F.source, G.target, {}, {}};
  for (Index o : F.obj) {
    H.obj.push_back(G.obj[o]);
  }
  for (Index m : F.mor) {
    H.mor.push_back(G.mor[m]);
  }
  return H;
}

// Functor sending everything to the object `o` of `t` and its identity.
inline Functor constant_functor(FinCat const& s, FinCat const& t, Elem const& o) {
  Index oi = t.object_index(o);
  Functor F{s, t, std::vector<Index>(s.num_objects(), oi),
            std::vector<Index>(s.num_morphisms(), t.identity(oi))};
  return F;
}

// ---------------------------------------------------------------------------
// NatTrans between functors of finite categories

struct NatTrans {
  Functor source;
  Functor target;
  std::vector<Index> components;  // per source object, a morphism of the target category
};

inline ValidationReport validate_nat_trans(NatTrans const& a) {
  ValidationReport r;
  auto const& C = a.source.source;
  auto const& D = a.source.target;
  for (std::size_t x = 0; x < C.num_objects(); ++x) {
    Index c = a.components[x];
    if (D.src(c) != a.source.obj[x] || D.tgt(c) != a.target.obj[x]) {
      r.add("component at " + C.object(static_cast<Index>(x)).repr() + " has wrong endpoints");
    }
  }
  if (!r.ok()) {
    return r;
  }
  for (std::size_t m = 0; m < C.num_morphisms(); ++m) {
    Index mi = static_cast<Index>(m);
    auto lhs = D.try_compose(a.target.mor[m], a.components[C.src(mi)]);
    auto rhs = D.try_compose(a.components[C.tgt(mi)], a.source.mor[m]);
    if (!lhs || !rhs || *lhs != *rhs) {
      r.add("naturality square fails at " + C.label(mi).repr());
    }
  }
  return r;
}

// K ∘ α
inline NatTrans nat_whisker_left(Functor const& K, NatTrans const& a) {
  NatTrans out{functor_compose(K, a.source), functor_compose(K, a.target), {}};
  for (Index c : a.components) {
    out.components.push_back(K.mor[c]);
  }
  return out;
}

// α ∘ H
inline NatTrans nat_whisker_right(NatTrans const& a, Functor const& H) {
  NatTrans out{functor_compose(a.source, H), functor_compose(a.target, H), {}};
  for (Index o : H.obj) {
    out.components.push_back(a.components[o]);
  }
  return out;
}

}  // namespace ck
