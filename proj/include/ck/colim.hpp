#pragma once

// Finite colimits in Set: coproducts, coequalizers and coends, plus the
// co-Yoneda and Fubini bijections.
//
// Quotients are computed with a union-find over the carrier and normalized so
// that classes are sorted by their minimal member, which also names the
// class. Any carrier element can be used to look up its class afterwards
// (see FinSet::find).

#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ck/set_functors.hpp"

namespace ck {

// ---------------------------------------------------------------------------
// Coproducts

struct Coproduct {
  FinSet sum;
  std::vector<FinFn> injections;
};

// Tagged union; the i-th summand's element e becomes <i|e>.
inline Coproduct coproduct(std::vector<FinSet> const& sets) {
  std::vector<Elem> all;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (auto const& e : sets[i]) {
      all.push_back(Elem::tag(Elem::atom(static_cast<long long>(i)), e));
    }
  }
  Coproduct c{FinSet(std::move(all)), {}};
  for (std::size_t i = 0; i < sets.size(); ++i) {
    Elem tag = Elem::atom(static_cast<long long>(i));
    c.injections.push_back(
        FinFn::tabulate(sets[i], c.sum, [&](Elem const& e) { return Elem::tag(tag, e); }));
  }
  return c;
}

// Cartesian product of finite sets, elements are tuples.
inline FinSet product_set(std::vector<FinSet> const& factors) {
  std::vector<Elem> out;
  std::vector<std::size_t> idx(factors.size(), 0);
  for (auto const& f : factors) {
    if (f.empty()) {
      return FinSet();
    }
  }
  while (true) {
    std::vector<Elem> t;
    t.reserve(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
      t.push_back(factors[i][idx[i]]);
    }
    out.push_back(Elem::tuple(std::move(t)));
    std::size_t k = factors.size();
    while (k > 0) {
      --k;
      if (++idx[k] < factors[k].size()) {
        break;
      }
      idx[k] = 0;
      if (k == 0) {
        return FinSet(std::move(out));
      }
    }
    if (factors.empty()) {
      return FinSet(std::move(out));
    }
  }
}

inline FinSet product_set(FinSet const& a, FinSet const& b) { return product_set({a, b}); }

// ---------------------------------------------------------------------------
// Quotients

struct QuotientSet {
  FinSet carrier;
  std::vector<std::vector<Index>> classes;  // carrier indices, sorted; first is the representative
  FinSet value;                             // class representatives, naming the classes
  FinFn projection;                         // carrier → value

  Index class_of(Elem const& e) const { return value.index_of(e); }
};

class QuotientBuilder {
 public:
  Index add(Elem const& e) {
    auto [it, fresh] = index_.emplace(e, static_cast<Index>(elems_.size()));
    if (fresh) {
      elems_.push_back(e);
      parent_.push_back(it->second);
    }
    return it->second;
  }

  Index index(Elem const& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) {
      throw InvalidData("element " + e.repr() + " is not in the quotient carrier");
    }
    return it->second;
  }

  void unite(Index a, Index b) {
    a = root(a);
    b = root(b);
    if (a != b) {
      // Keep the smaller label as root so roots are stable.
      if (elems_[b] < elems_[a]) {
        std::swap(a, b);
      }
      parent_[b] = a;
    }
  }

  void unite(Elem const& a, Elem const& b) { unite(index(a), index(b)); }

  std::size_t size() const noexcept { return elems_.size(); }

  QuotientSet build() {
    QuotientSet q;
    q.carrier = FinSet(elems_);
    std::unordered_map<Index, std::vector<Index>> groups;
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      groups[root(static_cast<Index>(i))].push_back(q.carrier.index_of(elems_[i]));
    }
    for (auto& [r, members] : groups) {
      std::sort(members.begin(), members.end());
      q.classes.push_back(std::move(members));
    }
    // Carrier is sorted, so comparing first members sorts classes by representative.
    std::sort(q.classes.begin(), q.classes.end(),
              [](auto const& a, auto const& b) { return a.front() < b.front(); });
    std::vector<Elem> reps;
    std::vector<std::pair<Elem, Index>> aliases;
    q.projection = FinFn{q.carrier, {}, std::vector<Index>(q.carrier.size())};
    for (std::size_t c = 0; c < q.classes.size(); ++c) {
      reps.push_back(q.carrier[q.classes[c].front()]);
      for (Index m : q.classes[c]) {
        aliases.emplace_back(q.carrier[m], static_cast<Index>(c));
        q.projection.map[m] = static_cast<Index>(c);
      }
    }
    q.value = FinSet::quotient(std::move(reps), std::move(aliases));
    q.projection.cod = q.value;
    return q;
  }

 private:
  Index root(Index a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }

  std::vector<Elem> elems_;
  std::vector<Index> parent_;
  std::unordered_map<Elem, Index> index_;
};

// A map out of a quotient induced by `fn` on carrier elements. Every member of
// every class is evaluated; differing results within a class throw InvalidData.
template <typename F>
FinFn induced_map(QuotientSet const& q, FinSet const& target, F&& fn) {
  FinFn out{q.value, target, std::vector<Index>(q.classes.size())};
  for (std::size_t c = 0; c < q.classes.size(); ++c) {
    Index img = target.index_of(fn(q.carrier[q.classes[c].front()]));
    for (std::size_t k = 1; k < q.classes[c].size(); ++k) {
      Index other = target.index_of(fn(q.carrier[q.classes[c][k]]));
      if (other != img) {
        throw InvalidData("induced map is not well defined on the class of "
                          + q.carrier[q.classes[c].front()].repr() + ": member "
                          + q.carrier[q.classes[c][k]].repr() + " maps elsewhere");
      }
    }
    out.map[c] = img;
  }
  return out;
}

// Quotient of the codomain by the equivalence generated by f(a) ~ g(a).
inline QuotientSet coequalizer(FinFn const& f, FinFn const& g) {
  if (!(f.dom == g.dom) || !(f.cod == g.cod)) {
    throw EndpointMismatch("coequalizer: the two functions are not parallel");
  }
  QuotientBuilder qb;
  for (auto const& e : f.cod) {
    qb.add(e);
  }
  for (std::size_t a = 0; a < f.dom.size(); ++a) {
    qb.unite(qb.index(f.cod[f.map[a]]), qb.index(g.cod[g.map[a]]));
  }
  return qb.build();
}

// Witness of the universal property: the unique factorization of `h` through
// the projection, if h ∘ f = h ∘ g. Returns nullopt otherwise.
inline std::optional<FinFn> coequalizer_factor(QuotientSet const& q, FinFn const& h) {
  try {
    return induced_map(q, h.cod, [&](Elem const& e) -> Elem const& { return h(e); });
  } catch (InvalidData const&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Bifunctors A^op × B → FinSet

struct Bifunctor {
  FinCat contra;
  FinCat co;
  std::vector<FinSet> values;  // [a * |Ob B| + b]
  std::vector<FinFn> left;     // [g * |Ob B| + b] : H(tgt g, b) → H(src g, b)
  std::vector<FinFn> right;    // [a * |Mor B| + f] : H(a, src f) → H(a, tgt f)

  FinSet const& at(Index a, Index b) const { return values[a * co.num_objects() + b]; }
  FinFn const& left_action(Index g, Index b) const { return left[g * co.num_objects() + b]; }
  FinFn const& right_action(Index a, Index f) const { return right[a * co.num_morphisms() + f]; }

  // vals(a, b) gives H(a, b); lft(g, b, e) acts on e ∈ H(tgt g, b); rgt(a, f, e)
  // acts on e ∈ H(a, src f). Indices refer to the two categories.
  template <typename V, typename L, typename R>
  static Bifunctor tabulate(FinCat A, FinCat B, V&& vals, L&& lft, R&& rgt) {
    Bifunctor H{std::move(A), std::move(B), {}, {}, {}};
    auto const& a_ = H.contra;
    auto const& b_ = H.co;
    H.values.reserve(a_.num_objects() * b_.num_objects());
    for (Index a = 0; a < a_.num_objects(); ++a) {
      for (Index b = 0; b < b_.num_objects(); ++b) {
        H.values.push_back(vals(a, b));
      }
    }
    for (Index g = 0; g < a_.num_morphisms(); ++g) {
      for (Index b = 0; b < b_.num_objects(); ++b) {
        H.left.push_back(FinFn::tabulate(H.at(a_.tgt(g), b), H.at(a_.src(g), b),
                                         [&](Elem const& e) { return lft(g, b, e); }));
      }
    }
    for (Index a = 0; a < a_.num_objects(); ++a) {
      for (Index f = 0; f < b_.num_morphisms(); ++f) {
        H.right.push_back(FinFn::tabulate(H.at(a, b_.src(f)), H.at(a, b_.tgt(f)),
                                          [&](Elem const& e) { return rgt(a, f, e); }));
      }
    }
    return H;
  }
};

inline ValidationReport validate_bifunctor(Bifunctor const& H) {
  ValidationReport r;
  auto const& A = H.contra;
  auto const& B = H.co;
  std::size_t nb = B.num_objects();
  if (H.values.size() != A.num_objects() * nb || H.left.size() != A.num_morphisms() * nb
      || H.right.size() != A.num_objects() * B.num_morphisms()) {
    r.add("bifunctor tables do not cover the categories");
    return r;
  }
  for (Index a = 0; a < A.num_objects(); ++a) {
    for (Index b = 0; b < nb; ++b) {
      if (!H.left_action(A.identity(a), b).is_identity()
          || !H.right_action(a, B.identity(b)).is_identity()) {
        r.add("identity does not act trivially at (" + A.object(a).repr() + ", "
              + B.object(b).repr() + ")");
      }
    }
  }
  for (auto const& [k, h] : A.composition_table()) {
    Index g2 = static_cast<Index>(k / A.num_morphisms());
    Index g1 = static_cast<Index>(k % A.num_morphisms());
    for (Index b = 0; b < nb; ++b) {
      if (!(compose(H.left_action(g1, b), H.left_action(g2, b)) == H.left_action(h, b))) {
        r.add("contravariant action fails on the pair (" + A.label(g2).repr() + ", "
              + A.label(g1).repr() + ") at " + B.object(b).repr());
      }
    }
  }
  for (auto const& [k, h] : B.composition_table()) {
    Index f2 = static_cast<Index>(k / B.num_morphisms());
    Index f1 = static_cast<Index>(k % B.num_morphisms());
    for (Index a = 0; a < A.num_objects(); ++a) {
      if (!(compose(H.right_action(a, f2), H.right_action(a, f1)) == H.right_action(a, h))) {
        r.add("covariant action fails on the pair (" + B.label(f2).repr() + ", "
              + B.label(f1).repr() + ") at " + A.object(a).repr());
      }
    }
  }
  for (Index g = 0; g < A.num_morphisms(); ++g) {
    for (Index f = 0; f < B.num_morphisms(); ++f) {
      auto lhs = compose(H.right_action(A.src(g), f), H.left_action(g, B.src(f)));
      auto rhs = compose(H.left_action(g, B.tgt(f)), H.right_action(A.tgt(g), f));
      if (!(lhs == rhs)) {
        r.add("actions do not commute on the morphism pair (" + A.label(g).repr() + ", "
              + B.label(f).repr() + ")");
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Coends

struct CoendResult {
  FinCat category;
  QuotientSet quotient;
  std::vector<FinFn> injections;  // H(y, y) → value

  FinSet const& value() const noexcept { return quotient.value; }
};

namespace detail {

// Coend of H over Y without validating H; shared by coend() and internal
// constructions whose bifunctoriality is established by construction.
inline CoendResult coend_unchecked(Bifunctor const& H) {
  auto const& Y = H.co;
  QuotientBuilder qb;
  for (Index y = 0; y < Y.num_objects(); ++y) {
    for (auto const& w : H.at(y, y)) {
      qb.add(Elem::tag(Y.object(y), w));
    }
  }
  for (Index f = 0; f < Y.num_morphisms(); ++f) {
    Index y = Y.src(f);
    Index y1 = Y.tgt(f);
    auto const& l = H.left_action(f, y);    // H(y1, y) → H(y, y)
    auto const& r = H.right_action(y1, f);  // H(y1, y) → H(y1, y1)
    for (Index i = 0; i < H.at(y1, y).size(); ++i) {
      qb.unite(qb.index(Elem::tag(Y.object(y), l.cod[l.map[i]])),
               qb.index(Elem::tag(Y.object(y1), r.cod[r.map[i]])));
    }
  }
  CoendResult res{Y, qb.build(), {}};
  for (Index y = 0; y < Y.num_objects(); ++y) {
    Elem const& yo = Y.object(y);
    res.injections.push_back(FinFn::tabulate(H.at(y, y), res.quotient.value,
                                             [&](Elem const& w) { return Elem::tag(yo, w); }));
  }
  return res;
}

}  // namespace detail

// ∫^y H(y, y): the quotient of ⊔_y H(y, y) by the relation generated by
// <y|H(f, id)(w)> ~ <y'|H(id, f)(w)> for f : y → y' and w ∈ H(y', y).
inline CoendResult coend(Bifunctor const& H) {
  if (!(H.contra == H.co)) {
    throw EndpointMismatch("coend: the two variances range over different categories");
  }
  auto v = validate_bifunctor(H);
  if (!v.ok()) {
    throw InvalidData("coend input is not a bifunctor: " + v.violations.front());
  }
  return detail::coend_unchecked(H);
}

// ---------------------------------------------------------------------------
// Co-Yoneda

struct CoYonedaIso {
  CoendResult coend;
  FinFn map;  // coend value → F(x)
};

// ∫^y F(y) × Y[y, x] → F(x), <y|(c, u)> ↦ F(u)(c), for covariant F.
inline CoYonedaIso coyoneda_covariant(SetFunctor const& F, Index x) {
  auto const& Y = F.base;
  auto H = Bifunctor::tabulate(
      Y, Y, [&](Index y1, Index y) { return product_set(F.values[y], Y.hom_set(y1, x)); },
      [&](Index g, Index, Elem const& e) {  // (c, u) ↦ (c, u ∘ g)
        return Elem::tuple({e[0], Y.compose_labels(e[1], Y.label(g))});
      },
      [&](Index, Index f, Elem const& e) {  // (c, u) ↦ (F(f)(c), u)
        return Elem::tuple({F.action[f](e[0]), e[1]});
      });
  CoYonedaIso iso{coend(H), {}};
  iso.map = induced_map(iso.coend.quotient, F.values[x], [&](Elem const& t) {
    Elem const& w = t.value();
    return F.action[Y.morphism_index(w[1])](w[0]);
  });
  if (!iso.map.is_bijective()) {
    throw NonInvertible("co-Yoneda comparison at " + Y.object(x).repr() + " is not a bijection");
  }
  return iso;
}

// ∫^y Y[x, y] × P(y) → P(x), <y|(u, c)> ↦ P(u)(c), for a presheaf P.
inline CoYonedaIso coyoneda_contravariant(Presheaf const& P, Index x) {
  auto const& Y = P.base;
  auto H = Bifunctor::tabulate(
      Y, Y, [&](Index y1, Index y) { return product_set(Y.hom_set(x, y), P.values[y1]); },
      [&](Index g, Index, Elem const& e) {  // (u, c) ↦ (u, P(g)(c))
        return Elem::tuple({e[0], P.restrict[g](e[1])});
      },
      [&](Index, Index f, Elem const& e) {  // (u, c) ↦ (f ∘ u, c)
        return Elem::tuple({Y.compose_labels(Y.label(f), e[0]), e[1]});
      });
  CoYonedaIso iso{coend(H), {}};
  iso.map = induced_map(iso.coend.quotient, P.values[x], [&](Elem const& t) {
    Elem const& w = t.value();
    return P.restrict[Y.morphism_index(w[0])](w[1]);
  });
  if (!iso.map.is_bijective()) {
    throw NonInvertible("co-Yoneda comparison at " + Y.object(x).repr() + " is not a bijection");
  }
  return iso;
}

// ---------------------------------------------------------------------------
// Fubini

// An iterated coend: one inner coend per pair of outer objects, then the
// outer coend of the induced bifunctor.
struct IteratedCoend {
  CoendResult outer;
  std::vector<CoendResult> inner;  // [o1 * |O| + o]

  CoendResult const& inner_at(Index o1, Index o) const {
    return inner[o1 * outer.category.num_objects() + o];
  }
  FinSet const& value() const noexcept { return outer.value(); }
};

struct FubiniIso {
  CoendResult joint;           // over Y × Z, carrier <(y,z)|w>
  IteratedCoend y_then_z;      // outer over Y, carrier <y|<z|w>>
  IteratedCoend z_then_y;      // outer over Z, carrier <z|<y|w>>
  FinFn joint_to_yz;
  FinFn joint_to_zy;
  FinFn zy_to_yz;              // direct re-tagging comparison
};

namespace detail {

// Iterated coend of H over P = Y × Z. When `outer_first` is true the outer
// variable is the first factor.
inline IteratedCoend iterated_coend(Bifunctor const& H, FinCat const& Y, FinCat const& Z,
                                    bool outer_first) {
  auto const& P = H.co;
  FinCat const& O = outer_first ? Y : Z;
  FinCat const& I = outer_first ? Z : Y;
  auto pobj = [&](Index o, Index i) {
    Elem oe = O.object(o);
    Elem ie = I.object(i);
    return P.object_index(outer_first ? Elem::tuple({oe, ie}) : Elem::tuple({ie, oe}));
  };
  auto pmor = [&](Index om, Index im) {
    Elem oe = O.label(om);
    Elem ie = I.label(im);
    return P.morphism_index(outer_first ? Elem::tuple({oe, ie}) : Elem::tuple({ie, oe}));
  };
  std::size_t no = O.num_objects();
  std::vector<CoendResult> inner;
  inner.reserve(no * no);
  for (Index o1 = 0; o1 < no; ++o1) {
    for (Index o = 0; o < no; ++o) {
      auto K = Bifunctor::tabulate(
          I, I, [&](Index i1, Index i) { return H.at(pobj(o1, i1), pobj(o, i)); },
          [&](Index g, Index i, Elem const& e) {
            return H.left_action(pmor(O.identity(o1), g), pobj(o, i))(e);
          },
          [&](Index i1, Index f, Elem const& e) {
            return H.right_action(pobj(o1, i1), pmor(O.identity(o), f))(e);
          });
      inner.push_back(coend_unchecked(K));
    }
  }
  auto inner_at = [&](Index o1, Index o) -> CoendResult const& { return inner[o1 * no + o]; };
  auto outer = Bifunctor::tabulate(
      O, O, [&](Index o1, Index o) { return inner_at(o1, o).value(); },
      [&](Index g, Index o, Elem const& cls) {
        // cls = <i|w>, w ∈ H((tgt g, i), (o, i))
        Index i = I.object_index(cls.key());
        Elem w = H.left_action(pmor(g, I.identity(i)), pobj(o, i))(cls.value());
        return Elem::tag(cls.key(), w);
      },
      [&](Index o1, Index f, Elem const& cls) {
        Index i = I.object_index(cls.key());
        Elem w = H.right_action(pobj(o1, i), pmor(f, I.identity(i)))(cls.value());
        return Elem::tag(cls.key(), w);
      });
  auto v = validate_bifunctor(outer);
  if (!v.ok()) {
    throw InvalidData("iterated coend: induced outer actions fail: " + v.violations.front());
  }
  return IteratedCoend{coend_unchecked(outer), std::move(inner)};
}

}  // namespace detail

// Joint coend over Y × Z against both iteration orders. H must be a
// bifunctor on the product category `product(Y, Z)`.
inline FubiniIso fubini_iso(FinCat const& Y, FinCat const& Z, Bifunctor const& H) {
  FubiniIso f{coend(H), detail::iterated_coend(H, Y, Z, true),
              detail::iterated_coend(H, Y, Z, false), {}, {}, {}};
  // Inner classes are renamed to their representatives before re-tagging.
  auto yz = [&](Elem const& y, Elem const& z, Elem const& w) {
    Index yi = Y.object_index(y);
    return Elem::tag(y, f.y_then_z.inner_at(yi, yi).value().normalize(Elem::tag(z, w)));
  };
  auto zy = [&](Elem const& y, Elem const& z, Elem const& w) {
    Index zi = Z.object_index(z);
    return Elem::tag(z, f.z_then_y.inner_at(zi, zi).value().normalize(Elem::tag(y, w)));
  };
  f.joint_to_yz = induced_map(f.joint.quotient, f.y_then_z.value(), [&](Elem const& t) {
    return yz(t.key()[0], t.key()[1], t.value());
  });
  f.joint_to_zy = induced_map(f.joint.quotient, f.z_then_y.value(), [&](Elem const& t) {
    return zy(t.key()[0], t.key()[1], t.value());
  });
  f.zy_to_yz = induced_map(f.z_then_y.outer.quotient, f.y_then_z.value(), [&](Elem const& t) {
    // t = <z|<y|w>>
    return yz(t.value().key(), t.key(), t.value().value());
  });
  if (!f.joint_to_yz.is_bijective() || !f.joint_to_zy.is_bijective()
      || !f.zy_to_yz.is_bijective()) {
    throw NonInvertible("Fubini comparison is not a bijection");
  }
  return f;
}

}  // namespace ck
