#pragma once

// The free symmetric strict monoidal category S(X), truncated at a length
// bound, categorical symmetric sequences and their substitution product.
//
//   auto S = free_sym_cat(X, 3);             // tuples of length ≤ 3
//   auto I = subst_identity(X, 3);
//   auto GF = subst_compose(G, F, 3);        // (G∘F)[x̄; z]
//   check_subst_assoc(H, G, F, 3);
//
// A morphism (σ, f̄) : x̄ → x̄′ has f_i : x_i → x′_σ(i) and is labelled
// ((σ(0), …), (f_0, …)).

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ck/prof.hpp"
#include "ck/random.hpp"
#include "ck/seeds.hpp"

namespace ck {

using Perm = std::vector<std::size_t>;

namespace sym {

inline Elem perm_label(Perm const& p) {
  std::vector<Elem> v;
  for (auto i : p) {
    v.push_back(Elem::atom(static_cast<long long>(i)));
  }
  return Elem::tuple(std::move(v));
}

inline Perm perm_of(Elem const& m) {
  Perm p;
  for (auto const& e : m[0].items()) {
    p.push_back(static_cast<std::size_t>(std::stoul(e.name())));
  }
  return p;
}

inline std::vector<Elem> const& comps_of(Elem const& m) { return m[1].items(); }

inline Elem mor_label(Perm const& p, std::vector<Elem> comps) {
  return Elem::tuple({perm_label(p), Elem::tuple(std::move(comps))});
}

inline Elem concat(std::vector<Elem> const& tuples) {
  std::vector<Elem> out;
  for (auto const& t : tuples) {
    out.insert(out.end(), t.items().begin(), t.items().end());
  }
  return Elem::tuple(std::move(out));
}

// A tuple of position atoms, read as a permutation or listing.
inline Perm positions(Elem const& t) { return perm_of(Elem::tuple({t, Elem::tuple({})})); }

inline Perm identity_perm(std::size_t k) {
  Perm p(k);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline Perm inverse(Perm const& p) {
  Perm q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    q[p[i]] = i;
  }
  return q;
}

}  // namespace sym

struct TruncatedSymCat {
  FinCat base;
  std::size_t max_len = 0;
  FinCat cat;
  std::vector<std::vector<Index>> by_len;  // objects of each length

  Index object(std::vector<Elem> const& xs) const { return cat.object_index(Elem::tuple(xs)); }
  std::size_t length(Index o) const { return cat.object(o).size(); }

  Elem identity_label(Elem const& tuple) const {
    std::vector<Elem> ids;
    for (auto const& x : tuple.items()) {
      ids.push_back(base.label(base.identity(base.object_index(x))));
    }
    return sym::mor_label(sym::identity_perm(tuple.size()), std::move(ids));
  }
};

inline TruncatedSymCat free_sym_cat(FinCat const& X, std::size_t n) {
  FinCat::Builder b("S" + std::to_string(n) + "(" + X.name() + ")");
  std::vector<std::vector<Elem>> tuples_by_len(n + 1);
  tuples_by_len[0].push_back(Elem::tuple({}));
  for (std::size_t k = 1; k <= n; ++k) {
    for (auto const& t : tuples_by_len[k - 1]) {
      for (auto const& x : X.objects()) {
        auto items = t.items();
        items.push_back(x);
        tuples_by_len[k].push_back(Elem::tuple(std::move(items)));
      }
    }
  }
  TruncatedSymCat S{X, n, {}, {}};
  auto id_of = [&](Elem const& t) { return S.identity_label(t); };
  for (std::size_t k = 0; k <= n; ++k) {
    for (auto const& t : tuples_by_len[k]) {
      b.object(t).identity(t, id_of(t));
    }
  }
  for (std::size_t k = 0; k <= n; ++k) {
    Perm p = sym::identity_perm(k);
    do {
      for (auto const& s : tuples_by_len[k]) {
        for (auto const& t : tuples_by_len[k]) {
          // f_i : s_i → t_p(i), all combinations
          std::vector<std::vector<Index>> homs;
          bool empty = false;
          for (std::size_t i = 0; i < k; ++i) {
            homs.push_back(X.hom(X.object_index(s[i]), X.object_index(t[p[i]])));
            empty = empty || homs.back().empty();
          }
          if (empty) {
            continue;
          }
          std::vector<std::size_t> pick(k, 0);
          for (;;) {
            std::vector<Elem> comps;
            bool ident = s == t;
            for (std::size_t i = 0; i < k; ++i) {
              comps.push_back(X.label(homs[i][pick[i]]));
              ident = ident && p[i] == i && X.is_identity(homs[i][pick[i]]);
            }
            if (!ident) {
              b.morphism(sym::mor_label(p, std::move(comps)), s, t);
            }
            std::size_t i = 0;
            while (i < k && ++pick[i] == homs[i].size()) {
              pick[i++] = 0;
            }
            if (i == k) {
              break;
            }
          }
        }
      }
    } while (std::next_permutation(p.begin(), p.end()));
  }
  // (τ, ḡ) ∘ (σ, f̄) = (τσ, (g_σ(i) ∘ f_i)_i)
  b.fill_composition([&X](Elem const& g, Elem const& f) {
    Perm s = sym::perm_of(f);
    Perm t = sym::perm_of(g);
    auto const& fc = sym::comps_of(f);
    auto const& gc = sym::comps_of(g);
    Perm r(s.size());
    std::vector<Elem> comps;
    for (std::size_t i = 0; i < s.size(); ++i) {
      r[i] = t[s[i]];
      comps.push_back(X.compose_labels(gc[s[i]], fc[i]));
    }
    return sym::mor_label(r, std::move(comps));
  });
  S.cat = b.build();
  S.by_len.assign(n + 1, {});
  for (Index o = 0; o < S.cat.num_objects(); ++o) {
    S.by_len[S.cat.object(o).size()].push_back(o);
  }
  return S;
}

// e_X : x ↦ (x).
inline Functor sym_unit(TruncatedSymCat const& S) {
  if (S.max_len < 1) {
    throw BoundExceeded("the unit needs tuples of length 1", "use a length bound of at least 1");
  }
  return Functor::tabulate(
      S.base, S.cat, [](Elem const& x) { return Elem::tuple({x}); },
      [](Elem const& f) { return sym::mor_label({0}, {f}); });
}

// Flattening S(S(X)) → S(X) on labels. Nested objects are tuples of tuples;
// a nested morphism is (σ, (F_i)) with each F_i a morphism label (τ_i, c̄_i).
inline Elem flatten_object(Elem const& nested, std::size_t bound) {
  Elem out = sym::concat(nested.items());
  if (out.size() > bound) {
    throw BoundExceeded("flattened tuple has length " + std::to_string(out.size()),
                        "raise the length bound to at least " + std::to_string(out.size()));
  }
  return out;
}

inline Elem flatten_morphism(Elem const& nested, std::size_t bound) {
  Perm s = sym::perm_of(nested);
  auto const& blocks = sym::comps_of(nested);
  std::size_t m = blocks.size();
  std::vector<std::size_t> len(m), src_off(m + 1, 0), tgt_len(m, 0), tgt_off(m + 1, 0);
  for (std::size_t i = 0; i < m; ++i) {
    len[i] = blocks[i][0].size();
    src_off[i + 1] = src_off[i] + len[i];
    tgt_len[s[i]] = len[i];
  }
  for (std::size_t j = 0; j < m; ++j) {
    tgt_off[j + 1] = tgt_off[j] + tgt_len[j];
  }
  if (src_off[m] > bound) {
    throw BoundExceeded("flattened morphism has length " + std::to_string(src_off[m]),
                        "raise the length bound to at least " + std::to_string(src_off[m]));
  }
  Perm p(src_off[m]);
  std::vector<Elem> comps;
  for (std::size_t i = 0; i < m; ++i) {
    Perm t = sym::perm_of(blocks[i]);
    auto const& c = sym::comps_of(blocks[i]);
    for (std::size_t j = 0; j < len[i]; ++j) {
      p[src_off[i] + j] = tgt_off[s[i]] + t[j];
      comps.push_back(c[j]);
    }
  }
  return sym::mor_label(p, std::move(comps));
}

// ---------------------------------------------------------------------------
// Symmetric sequences

// F : X → Y with values F[x̄; y]; contravariant in S(X), covariant in Y.
struct SymSeq {
  TruncatedSymCat source;
  FinCat target;
  Bifunctor data;
  bool bounded_search = false;

  FinSet const& at(Elem const& tuple, Elem const& y) const {
    return data.at(source.cat.object_index(tuple), target.object_index(y));
  }

  bool has_nullary() const {
    for (Index o : source.by_len[0]) {
      for (Index y = 0; y < target.num_objects(); ++y) {
        if (!data.at(o, y).empty()) {
          return true;
        }
      }
    }
    return false;
  }
};

inline ValidationReport validate_symseq(SymSeq const& F) {
  ValidationReport r;
  if (!(F.data.contra == F.source.cat) || !(F.data.co == F.target)) {
    r.add("data is not indexed by S(X) and Y");
    return r;
  }
  r.merge(validate_bifunctor(F.data));
  return r;
}

// Permutation morphisms act as a group on each arity: identity and composition.
inline ValidationReport check_sigma_action(SymSeq const& F) {
  ValidationReport r;
  auto const& C = F.source.cat;
  for (Index y = 0; y < F.target.num_objects(); ++y) {
    for (Index o = 0; o < C.num_objects(); ++o) {
      auto const& ends = C.hom(o, o);
      for (Index g : ends) {
        for (Index f : ends) {
          auto lhs = F.data.left_action(C.compose(g, f), y);
          auto rhs = compose(F.data.left_action(f, y), F.data.left_action(g, y));
          if (!(lhs == rhs)) {
            r.add("permutation action is not a group action at " + C.object(o).repr());
            return r;
          }
        }
      }
    }
  }
  return r;
}

// I[x̄; y] = S(X)[x̄, (y)]; nonempty only in arity 1.
inline SymSeq subst_identity(FinCat const& X, std::size_t n) {
  auto S = free_sym_cat(X, n);
  auto const& C = S.cat;
  auto data = Bifunctor::tabulate(
      C, X,
      [&](Index o, Index y) {
        if (C.object(o).size() != 1) {
          return FinSet();
        }
        return C.hom_set(o, C.object_index(Elem::tuple({X.object(y)})));
      },
      [&](Index w, Index, Elem const& e) { return C.compose_labels(e, C.label(w)); },
      [&](Index, Index v, Elem const& e) {
        return C.compose_labels(sym::mor_label({0}, {X.label(v)}), e);
      });
  return SymSeq{S, X, std::move(data), false};
}

// Builds a SymSeq from value and action callbacks on labels.
template <typename V, typename L, typename R>
SymSeq make_symseq(TruncatedSymCat const& S, FinCat const& Y, V&& vals, L&& left, R&& right) {
  auto data = Bifunctor::tabulate(
      S.cat, Y, [&](Index o, Index y) { return vals(S.cat.object(o), Y.object(y)); },
      [&](Index w, Index y, Elem const& e) { return left(S.cat.label(w), Y.object(y), e); },
      [&](Index o, Index v, Elem const& e) { return right(S.cat.object(o), Y.label(v), e); });
  return SymSeq{S, Y, std::move(data), false};
}

// F[x̄; y] = S(X)[x̄, ā] × Y[b, y]; Σ_k acts freely.
inline SymSeq representable_symseq(TruncatedSymCat const& S, FinCat const& Y, Elem const& abar,
                                   Elem const& b) {
  auto const& C = S.cat;
  Index a = C.object_index(abar);
  Index bi = Y.object_index(b);
  return make_symseq(
      S, Y,
      [&](Elem const& t, Elem const& y) {
        std::vector<Elem> v;
        for (auto const& h : C.hom_set(C.object_index(t), a)) {
          for (auto const& u : Y.hom_set(bi, Y.object_index(y))) {
            v.push_back(Elem::tuple({h, u}));
          }
        }
        return FinSet(v);
      },
      [&](Elem const& w, Elem const&, Elem const& e) {
        return Elem::tuple({C.compose_labels(e[0], w), e[1]});
      },
      [&](Elem const&, Elem const& v, Elem const& e) {
        return Elem::tuple({e[0], Y.compose_labels(v, e[1])});
      });
}

// A point at every tuple of length k, for every colour.
inline SymSeq point_symseq(TruncatedSymCat const& S, FinCat const& Y, std::size_t k) {
  return make_symseq(
      S, Y, [&](Elem const& t, Elem const&) { return t.size() == k ? FinSet{"*"_e} : FinSet(); },
      [](Elem const&, Elem const&, Elem const& e) { return e; },
      [](Elem const&, Elem const&, Elem const& e) { return e; });
}

// Summands are tagged by their position.
inline SymSeq symseq_sum(std::vector<SymSeq> const& parts) {
  auto const& S = parts.at(0).source;
  auto const& Y = parts.at(0).target;
  auto tagged = [](std::size_t i, Elem const& e) { return Elem::tag(Elem::atom(static_cast<long long>(i)), e); };
  auto which = [](Elem const& e) { return static_cast<std::size_t>(std::stoul(e.key().name())); };
  return make_symseq(
      S, Y,
      [&](Elem const& t, Elem const& y) {
        std::vector<Elem> v;
        for (std::size_t i = 0; i < parts.size(); ++i) {
          for (auto const& e : parts[i].at(t, y)) {
            v.push_back(tagged(i, e));
          }
        }
        return FinSet(v);
      },
      [&](Elem const& w, Elem const& y, Elem const& e) {
        std::size_t i = which(e);
        return tagged(i, parts[i].data.left_action(S.cat.morphism_index(w), Y.object_index(y))(e.value()));
      },
      [&](Elem const& t, Elem const& v, Elem const& e) {
        std::size_t i = which(e);
        return tagged(i, parts[i].data.right_action(S.cat.object_index(t), Y.morphism_index(v))(e.value()));
      });
}

// A sum of `pieces` representables and points in arities min_arity..n.
inline SymSeq random_symseq(Rng& rng, TruncatedSymCat const& S, FinCat const& Y, std::size_t pieces,
                            std::size_t min_arity = 1) {
  std::vector<SymSeq> parts;
  for (std::size_t i = 0; i < pieces; ++i) {
    std::size_t k = rng.between(min_arity, S.max_len);
    if (rng.below(3) == 0) {
      parts.push_back(point_symseq(S, Y, k));
    } else {
      Elem abar = S.cat.object(rng.pick(S.by_len[k]));
      parts.push_back(representable_symseq(S, Y, abar, Y.object(static_cast<Index>(rng.below(Y.num_objects())))));
    }
  }
  return symseq_sum(parts);
}

// ---------------------------------------------------------------------------
// F♯ : the extension of F to S(Y) in its covariant variable.
//
// F♯[x̄; ȳ] = ∫^{x̄_1..x̄_m} Π F[x̄_i; y_i] × S(X)[x̄, x̄_1 ⊕ … ⊕ x̄_m], with
// pre-elements <(x̄_1,…,x̄_m)|((f_1,…,f_m), h)>.

class SharpBuilder {
 public:
  SharpBuilder(SymSeq const& F, TruncatedSymCat const& out) : F_(F), out_(out) {}

  // Block lists of total length k whose F-values at ȳ are all nonempty.
  std::vector<std::vector<Index>> const& blocks(std::size_t k, Elem const& ybar) {
    auto key = std::make_pair(k, ybar);
    auto it = blocks_.find(key);
    if (it != blocks_.end()) {
      return it->second;
    }
    std::vector<std::vector<Index>> out;
    std::vector<Index> cur;
    auto const& S = F_.source;
    std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t left) {
      if (i == ybar.size()) {
        if (left == 0) {
          out.push_back(cur);
        }
        return;
      }
      Index y = F_.target.object_index(ybar[i]);
      for (std::size_t len = 0; len <= std::min(left, S.max_len); ++len) {
        for (Index o : S.by_len[len]) {
          if (F_.data.at(o, y).empty()) {
            continue;
          }
          cur.push_back(o);
          go(i + 1, left - len);
          cur.pop_back();
        }
      }
    };
    go(0, k);
    return blocks_.emplace(key, std::move(out)).first->second;
  }

  std::vector<Elem> block_labels(std::vector<Index> const& bl) const {
    std::vector<Elem> v;
    for (Index o : bl) {
      v.push_back(F_.source.cat.object(o));
    }
    return v;
  }

  // Calls fn(label) for every pre-element at (x̄, ȳ).
  template <typename Fn>
  void for_each_pre(Index xbar, Elem const& ybar, Fn&& fn) {
    auto const& O = out_.cat;
    std::size_t k = O.object(xbar).size();
    for (auto const& bl : blocks(k, ybar)) {
      auto labels = block_labels(bl);
      Index c = O.object_index(sym::concat(labels));
      auto const& hs = O.hom_set(xbar, c);
      if (hs.empty()) {
        continue;
      }
      for_each_choice(bl, ybar, [&](std::vector<Elem> const& fs) {
        for (auto const& h : hs) {
          fn(pre(labels, fs, h));
        }
      });
    }
  }

  // Calls fn(a, b) for generating relations at (x̄, ȳ): a morphism u into
  // block i moves F's left action into the S(X) component.
  template <typename Fn>
  void for_each_relation(Index xbar, Elem const& ybar, Fn&& fn) {
    auto const& O = out_.cat;
    auto const& S = F_.source;
    std::size_t k = O.object(xbar).size();
    for (auto const& bl : blocks(k, ybar)) {
      auto labels = block_labels(bl);
      for (std::size_t i = 0; i < bl.size(); ++i) {
        Index y = F_.target.object_index(ybar[i]);
        for (Index src : S.by_len[S.length(bl[i])]) {
          for (Index u : S.cat.hom(src, bl[i])) {
            if (S.cat.is_identity(u)) {
              continue;
            }
            auto left_labels = labels;
            left_labels[i] = S.cat.object(src);
            Index cl = O.object_index(sym::concat(left_labels));
            auto const& hs = O.hom_set(xbar, cl);
            if (hs.empty()) {
              continue;
            }
            Elem plus = block_sum(labels, i, S.cat.label(u));
            auto const& act = F_.data.left_action(u, y);
            for_each_choice(bl, ybar, [&](std::vector<Elem> const& fs) {
              auto fl = fs;
              fl[i] = act(fs[i]);
              for (auto const& h0 : hs) {
                fn(pre(left_labels, fl, h0), pre(labels, fs, O.compose_labels(plus, h0)));
              }
            });
          }
        }
      }
    }
  }

  // F♯(w) for w = (σ, v̄) : ȳ → ȳ′ in S(Y).
  Elem transport(Elem const& w, Elem const& t) const {
    auto const& O = out_.cat;
    Perm s = sym::perm_of(w);
    auto const& v = sym::comps_of(w);
    auto const& bl = t.key().items();
    auto const& fs = t.value()[0].items();
    std::size_t m = bl.size();
    std::vector<Elem> nb(m), nf(m);
    for (std::size_t i = 0; i < m; ++i) {
      nb[s[i]] = bl[i];
      Index xo = F_.source.cat.object_index(bl[i]);
      nf[s[i]] = F_.data.right_action(xo, F_.target.morphism_index(v[i]))(fs[i]);
    }
    Elem pi = block_permutation(bl, s);
    return pre(nb, nf, O.compose_labels(pi, t.value()[1]));
  }

  static Elem pre(std::vector<Elem> const& blocks, std::vector<Elem> const& fs, Elem const& h) {
    return Elem::tag(Elem::tuple(blocks), Elem::tuple({Elem::tuple(fs), h}));
  }

  // x̄_1 ⊕ … ⊕ x̄_m → x̄_σ⁻¹(0) ⊕ …, moving block i to position σ(i).
  Elem block_permutation(std::vector<Elem> const& bl, Perm const& s) const {
    std::size_t m = bl.size();
    std::vector<std::size_t> src_off(m + 1, 0), tgt_len(m), tgt_off(m + 1, 0);
    for (std::size_t i = 0; i < m; ++i) {
      src_off[i + 1] = src_off[i] + bl[i].size();
      tgt_len[s[i]] = bl[i].size();
    }
    for (std::size_t j = 0; j < m; ++j) {
      tgt_off[j + 1] = tgt_off[j] + tgt_len[j];
    }
    Perm p(src_off[m]);
    std::vector<Elem> comps;
    auto const& X = F_.source.base;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < bl[i].size(); ++j) {
        p[src_off[i] + j] = tgt_off[s[i]] + j;
        comps.push_back(X.label(X.identity(X.object_index(bl[i][j]))));
      }
    }
    return sym::mor_label(p, std::move(comps));
  }

  SymSeq const& seq() const { return F_; }
  TruncatedSymCat const& out() const { return out_; }

 private:
  // id ⊕ … ⊕ u ⊕ … ⊕ id with u in block i.
  Elem block_sum(std::vector<Elem> const& labels, std::size_t i, Elem const& u) const {
    auto const& X = F_.source.base;
    Perm p;
    std::vector<Elem> comps;
    Perm up = sym::perm_of(u);
    auto const& uc = sym::comps_of(u);
    std::size_t off = 0;
    for (std::size_t b = 0; b < labels.size(); ++b) {
      for (std::size_t j = 0; j < labels[b].size(); ++j) {
        if (b == i) {
          p.push_back(off + up[j]);
          comps.push_back(uc[j]);
        } else {
          p.push_back(off + j);
          comps.push_back(X.label(X.identity(X.object_index(labels[b][j]))));
        }
      }
      off += labels[b].size();
    }
    return sym::mor_label(p, std::move(comps));
  }

  template <typename Fn>
  void for_each_choice(std::vector<Index> const& bl, Elem const& ybar, Fn&& fn) const {
    std::vector<FinSet const*> sets;
    for (std::size_t i = 0; i < bl.size(); ++i) {
      sets.push_back(&F_.data.at(bl[i], F_.target.object_index(ybar[i])));
      if (sets.back()->empty()) {
        return;
      }
    }
    std::vector<std::size_t> pick(bl.size(), 0);
    std::vector<Elem> fs(bl.size());
    for (;;) {
      for (std::size_t i = 0; i < bl.size(); ++i) {
        fs[i] = (*sets[i])[pick[i]];
      }
      fn(fs);
      std::size_t i = 0;
      while (i < bl.size() && ++pick[i] == sets[i]->size()) {
        pick[i++] = 0;
      }
      if (i == bl.size()) {
        return;
      }
    }
  }

  SymSeq const& F_;
  TruncatedSymCat const& out_;
  std::map<std::pair<std::size_t, Elem>, std::vector<std::vector<Index>>> blocks_;
};

// F♯ as a bifunctor on S(X)ᵒᵖ × S(Y), with S(Y) given.
inline Bifunctor sharp(SymSeq const& F, TruncatedSymCat const& out, TruncatedSymCat const& SY) {
  SharpBuilder sb(F, out);
  auto const& O = out.cat;
  auto const& C = SY.cat;
  std::size_t ny = C.num_objects();
  std::vector<QuotientSet> qs;
  for (Index x = 0; x < O.num_objects(); ++x) {
    for (Index yb = 0; yb < ny; ++yb) {
      QuotientBuilder qb;
      Elem const& ybar = C.object(yb);
      sb.for_each_pre(x, ybar, [&](Elem const& t) { qb.add(t); });
      sb.for_each_relation(x, ybar, [&](Elem const& a, Elem const& b) { qb.unite(a, b); });
      qs.push_back(qb.build());
    }
  }
  Bifunctor H{O, C, {}, {}, {}};
  for (auto const& q : qs) {
    H.values.push_back(q.value);
  }
  for (Index w = 0; w < O.num_morphisms(); ++w) {
    for (Index yb = 0; yb < ny; ++yb) {
      H.left.push_back(induced_map(qs[O.tgt(w) * ny + yb], H.at(O.src(w), yb), [&](Elem const& t) {
        return SharpBuilder::pre(t.key().items(), t.value()[0].items(),
                                 O.compose_labels(t.value()[1], O.label(w)));
      }));
    }
  }
  for (Index x = 0; x < O.num_objects(); ++x) {
    for (Index w = 0; w < C.num_morphisms(); ++w) {
      H.right.push_back(induced_map(qs[x * ny + C.src(w)], H.at(x, C.tgt(w)),
                                    [&](Elem const& t) { return sb.transport(C.label(w), t); }));
    }
  }
  return H;
}

// ---------------------------------------------------------------------------
// Substitution

struct SubstComposite {
  SymSeq value;
  std::vector<QuotientSet> quotients;  // [x̄ * |Z| + z]
};

namespace detail {

// <(ȳ, blocks)|(g, f̄, h)> from ȳ, g and an F♯ pre-element.
inline Elem subst_pre(Elem const& ybar, Elem const& g, Elem const& s) {
  return Elem::tag(Elem::tuple({ybar, s.key()}), Elem::tuple({g, s.value()[0], s.value()[1]}));
}

inline Elem sharp_part(Elem const& t) {
  return Elem::tag(t.key()[1], Elem::tuple({t.value()[1], t.value()[2]}));
}

}  // namespace detail

// G ∘ F at output arities ≤ bound. When F has nonempty arity-0 values the
// number of blocks is unbounded and `m_bound` must be declared; the result is
// then stamped as a bounded search.
inline SubstComposite subst_composite(SymSeq const& G, SymSeq const& F, std::size_t bound,
                                      std::optional<std::size_t> m_bound = std::nullopt) {
  if (!(F.target == G.source.base)) {
    throw EndpointMismatch("subst_compose: colours of F's target and G's source differ");
  }
  bool nullary = F.has_nullary();
  std::size_t m_max = bound;
  if (nullary) {
    if (!m_bound) {
      throw BoundExceeded("F has nonempty arity-0 values, so the number of blocks is unbounded",
                          "declare an m-bound; the result is then a bounded search");
    }
    m_max = *m_bound;
  }
  if (F.source.max_len < bound) {
    throw BoundExceeded("output arity " + std::to_string(bound) + " needs F up to arity "
                            + std::to_string(bound) + " but F is truncated at "
                            + std::to_string(F.source.max_len),
                        "F is supported in arities >= 1, so output arity k needs only m <= k and "
                        "blocks of total length k; truncate F at k or above");
  }
  if (G.source.max_len < m_max) {
    throw BoundExceeded("output arity " + std::to_string(bound) + " needs G up to arity "
                            + std::to_string(m_max) + " but G is truncated at "
                            + std::to_string(G.source.max_len),
                        nullary ? "lower the declared m-bound or truncate G higher"
                                : "F is supported in arities >= 1, so output arity k needs only "
                                  "m <= k; truncate G at k or above");
  }
  auto out = F.source.max_len == bound ? F.source : free_sym_cat(F.source.base, bound);
  SharpBuilder sb(F, out);
  auto const& O = out.cat;
  auto const& SY = G.source;
  auto const& Z = G.target;
  std::size_t nz = Z.num_objects();
  SubstComposite R{SymSeq{out, Z, Bifunctor{O, Z, {}, {}, {}}, nullary}, {}};
  for (Index x = 0; x < O.num_objects(); ++x) {
    for (Index z = 0; z < nz; ++z) {
      QuotientBuilder qb;
      for (std::size_t m = 0; m <= m_max; ++m) {
        for (Index yb : SY.by_len[m]) {
          auto const& gs = G.data.at(yb, z);
          if (gs.empty()) {
            continue;
          }
          Elem const& ybar = SY.cat.object(yb);
          sb.for_each_pre(x, ybar, [&](Elem const& s) {
            for (auto const& g : gs) {
              qb.add(detail::subst_pre(ybar, g, s));
            }
          });
          sb.for_each_relation(x, ybar, [&](Elem const& a, Elem const& b) {
            for (auto const& g : gs) {
              qb.unite(detail::subst_pre(ybar, g, a), detail::subst_pre(ybar, g, b));
            }
          });
        }
      }
      // w : ȳ → ȳ′ in S(Y): <ȳ|(G(w)g′, s)> ~ <ȳ′|(g′, F♯(w)s)>
      for (Index w = 0; w < SY.cat.num_morphisms(); ++w) {
        if (SY.cat.is_identity(w) || SY.length(SY.cat.src(w)) > m_max) {
          continue;
        }
        Elem const& ysrc = SY.cat.object(SY.cat.src(w));
        Elem const& ytgt = SY.cat.object(SY.cat.tgt(w));
        auto const& act = G.data.left_action(w, z);
        if (act.dom.empty()) {
          continue;
        }
        Elem const& wl = SY.cat.label(w);
        sb.for_each_pre(x, ysrc, [&](Elem const& s) {
          Elem moved = sb.transport(wl, s);
          for (Index gi = 0; gi < act.dom.size(); ++gi) {
            qb.unite(detail::subst_pre(ysrc, act.cod[act.map[gi]], s),
                     detail::subst_pre(ytgt, act.dom[gi], moved));
          }
        });
      }
      R.quotients.push_back(qb.build());
      R.value.data.values.push_back(R.quotients.back().value);
    }
  }
  auto& D = R.value.data;
  for (Index w = 0; w < O.num_morphisms(); ++w) {
    for (Index z = 0; z < nz; ++z) {
      D.left.push_back(induced_map(R.quotients[O.tgt(w) * nz + z], D.at(O.src(w), z), [&](Elem const& t) {
        return Elem::tag(t.key(), Elem::tuple({t.value()[0], t.value()[1],
                                               O.compose_labels(t.value()[2], O.label(w))}));
      }));
    }
  }
  for (Index x = 0; x < O.num_objects(); ++x) {
    for (Index v = 0; v < Z.num_morphisms(); ++v) {
      D.right.push_back(induced_map(R.quotients[x * nz + Z.src(v)], D.at(x, Z.tgt(v)), [&](Elem const& t) {
        Index yb = SY.cat.object_index(t.key()[0]);
        return Elem::tag(t.key(), Elem::tuple({G.data.right_action(yb, v)(t.value()[0]),
                                               t.value()[1], t.value()[2]}));
      }));
    }
  }
  return R;
}

inline SymSeq subst_compose(SymSeq const& G, SymSeq const& F, std::size_t bound,
                            std::optional<std::size_t> m_bound = std::nullopt) {
  return subst_composite(G, F, bound, m_bound).value;
}

// Cells between symmetric sequences: components [x̄ * |Y| + y].
using SymCell = std::vector<FinFn>;

inline SymCell symcell_identity(SymSeq const& F) {
  SymCell c;
  for (auto const& v : F.data.values) {
    c.push_back(FinFn::identity(v));
  }
  return c;
}

// β ∘ α : G∘F → G′∘F′ on representatives.
inline SymCell subst_map(SymCell const& beta, SymSeq const& G, SymCell const& alpha, SymSeq const& F,
                         SubstComposite const& src, SymSeq const& tgt) {
  auto const& O = src.value.source.cat;
  std::size_t nz = src.value.target.num_objects();
  std::size_t ny = F.target.num_objects();
  SymCell out;
  for (Index x = 0; x < O.num_objects(); ++x) {
    for (Index z = 0; z < nz; ++z) {
      out.push_back(induced_map(src.quotients[x * nz + z], tgt.data.at(x, z), [&](Elem const& t) {
        Index yb = G.source.cat.object_index(t.key()[0]);
        Elem g = beta[yb * nz + z](t.value()[0]);
        auto const& bl = t.key()[1].items();
        auto const& fs = t.value()[1].items();
        auto const& ybar = t.key()[0];
        std::vector<Elem> nf;
        for (std::size_t i = 0; i < bl.size(); ++i) {
          Index xo = F.source.cat.object_index(bl[i]);
          Index y = F.target.object_index(ybar[i]);
          nf.push_back(alpha[xo * ny + y](fs[i]));
        }
        return Elem::tag(t.key(), Elem::tuple({g, Elem::tuple(std::move(nf)), t.value()[2]}));
      }));
    }
  }
  return out;
}

// I ∘ F → F : [((y′), (x̄_1))|(((0),(v)), (f), h)] ↦ F(v)(F(h) f).
inline SymCell subst_left_unitor(SymSeq const& F, SubstComposite const& IF) {
  auto const& O = IF.value.source.cat;
  auto const& Y = F.target;
  std::size_t ny = Y.num_objects();
  SymCell out;
  for (Index x = 0; x < O.num_objects(); ++x) {
    for (Index y = 0; y < ny; ++y) {
      Index fx = F.source.cat.object_index(O.object(x));
      out.push_back(induced_map(IF.quotients[x * ny + y], F.data.at(fx, y), [&](Elem const& t) {
        Elem const& ybar = t.key()[0];
        Index y1 = Y.object_index(ybar[0]);
        Index v = Y.morphism_index(sym::comps_of(t.value()[0])[0]);
        Index h = F.source.cat.morphism_index(t.value()[2]);
        Elem pulled = F.data.left_action(h, y1)(t.value()[1][0]);
        return F.data.right_action(fx, v)(pulled);
      }));
    }
  }
  return out;
}

// G ∘ I → G : [(ȳ′, ((y″_i)))|(g, (((0),(u_i))), h)] ↦ G((⊕u)∘h)(g).
inline SymCell subst_right_unitor(SymSeq const& G, SubstComposite const& GI) {
  auto const& O = GI.value.source.cat;
  auto const& Z = G.target;
  std::size_t nz = Z.num_objects();
  SymCell out;
  for (Index x = 0; x < O.num_objects(); ++x) {
    for (Index z = 0; z < nz; ++z) {
      Index gx = G.source.cat.object_index(O.object(x));
      out.push_back(induced_map(GI.quotients[x * nz + z], G.data.at(gx, z), [&](Elem const& t) {
        auto const& fs = t.value()[1].items();
        std::vector<Elem> comps;
        for (auto const& f : fs) {
          comps.push_back(sym::comps_of(f)[0]);
        }
        Elem usum = sym::mor_label(sym::identity_perm(fs.size()), comps);
        Elem w = G.source.cat.compose_labels(usum, t.value()[2]);
        return G.data.left_action(G.source.cat.morphism_index(w), z)(t.value()[0]);
      }));
    }
  }
  return out;
}

namespace detail {

inline void compare_symcells(CheckReport& r, SymSeq const& on, SymCell const& lhs, SymCell const& rhs,
                             std::string const& what) {
  std::size_t ny = on.target.num_objects();
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    if (auto d = lhs[k].first_difference(rhs[k])) {
      r.fail(json{{"map", what},
                  {"tuple", on.source.cat.object(static_cast<Index>(k / ny)).repr()},
                  {"colour", on.target.object(static_cast<Index>(k % ny)).repr()},
                  {"element", lhs[k].dom[*d].repr()},
                  {"lhs", lhs[k].cod[lhs[k].map[*d]].repr()},
                  {"rhs", rhs[k].cod[rhs[k].map[*d]].repr()}});
      return;
    }
  }
}

inline void require_bijective(CheckReport& r, SymSeq const& on, SymCell const& c, std::string const& what) {
  std::size_t ny = on.target.num_objects();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (!c[k].is_bijective()) {
      r.fail(json{{"map", what},
                  {"tuple", on.source.cat.object(static_cast<Index>(k / ny)).repr()},
                  {"colour", on.target.object(static_cast<Index>(k % ny)).repr()},
                  {"source_size", c[k].dom.size()},
                  {"target_size", c[k].cod.size()}});
      return;
    }
  }
}

inline void require_natural(CheckReport& r, Bifunctor const& src, Bifunctor const& tgt,
                            SymCell const& c, std::string const& what) {
  auto v = validate_prof_cell(ProfCell{src, tgt, c});
  if (!v.ok()) {
    r.fail(json{{"map", what}, {"problem", v.violations.front()}});
  }
}

}  // namespace detail

inline CheckReport check_subst_unit(SymSeq const& F, std::size_t bound) {
  CheckReport all("substitution unit");
  all.add(detail::guarded("I o F = F", [&](CheckReport& r) {
    auto I = subst_identity(F.target, bound);
    auto IF = subst_composite(I, F, bound);
    auto l = subst_left_unitor(F, IF);
    detail::require_bijective(r, IF.value, l, "left unitor");
  }));
  all.add(detail::guarded("F o I = F", [&](CheckReport& r) {
    auto I = subst_identity(F.source.base, bound);
    auto FI = subst_composite(F, I, bound);
    auto rho = subst_right_unitor(F, FI);
    detail::require_bijective(r, FI.value, rho, "right unitor");
  }));
  return all;
}

// (H∘G)∘F → H∘(G∘F):
// [(ȳ, X̄)|([(z̄, Ȳ)|(η, ḡ, k)], f̄, h)] ↦ [(z̄, X̄′)|(η, (d_j), h′)] where the
// F-blocks are moved along k, regrouped by the blocks Ȳ_j, and
// d_j = [(Ȳ_j, group j)|(g_j, f̄_j, 1)].
inline SymCell subst_associator(SymSeq const& G, SymSeq const& F, SubstComposite const& HG_F,
                                SubstComposite const& H_GF, SubstComposite const& GF) {
  auto const& O = HG_F.value.source.cat;
  std::size_t nw = HG_F.value.target.num_objects();
  SharpBuilder sb(F, HG_F.value.source);
  SymCell out;
  for (Index x = 0; x < O.num_objects(); ++x) {
    for (Index w = 0; w < nw; ++w) {
      out.push_back(induced_map(HG_F.quotients[x * nw + w], H_GF.value.data.at(x, w), [&](Elem const& t) {
        Elem const& e = t.value()[0];
        Elem const& zbar = e.key()[0];
        auto const& Ybl = e.key()[1].items();
        auto const& gs = e.value()[1].items();
        Elem const& k = e.value()[2];
        Elem moved = sb.transport(k, detail::sharp_part(t));
        auto const& nb = moved.key().items();
        auto const& nf = moved.value()[0].items();
        std::vector<Elem> groups, ds;
        std::size_t off = 0;
        for (std::size_t j = 0; j < Ybl.size(); ++j) {
          std::size_t len = Ybl[j].size();
          std::vector<Elem> gb(nb.begin() + off, nb.begin() + off + len);
          std::vector<Elem> gf(nf.begin() + off, nf.begin() + off + len);
          off += len;
          Elem xj = sym::concat(gb);
          Elem idj = GF.value.source.identity_label(xj);
          Elem d = Elem::tag(Elem::tuple({Ybl[j], Elem::tuple(gb)}),
                             Elem::tuple({gs[j], Elem::tuple(gf), idj}));
          Index xi = GF.value.source.cat.object_index(xj);
          Index zi = G.target.object_index(zbar[j]);
          groups.push_back(xj);
          ds.push_back(GF.value.data.at(xi, zi).normalize(d));
        }
        return Elem::tag(Elem::tuple({zbar, Elem::tuple(groups)}),
                         Elem::tuple({e.value()[0], Elem::tuple(ds), moved.value()[1]}));
      }));
    }
  }
  return out;
}

inline CheckReport check_subst_assoc(SymSeq const& H, SymSeq const& G, SymSeq const& F,
                                     std::size_t bound) {
  return detail::guarded("substitution associativity", [&](CheckReport& r) {
    auto GF = subst_composite(G, F, bound);
    auto HG = subst_composite(H, G, bound);
    auto HG_F = subst_composite(HG.value, F, bound);
    auto H_GF = subst_composite(H, GF.value, bound);
    auto a = subst_associator(G, F, HG_F, H_GF, GF);
    detail::require_bijective(r, HG_F.value, a, "associator");
    if (r.passed) {
      detail::require_natural(r, HG_F.value.data, H_GF.value.data, a, "associator");
    }
    if (HG_F.value.bounded_search || H_GF.value.bounded_search) {
      r.note("bounded search");
    }
  });
}

// Substitution against Kleisli composition in Kl(P) over S(Y): G∘F is
// compared with τ⁻¹(τ(F♯)* ∘ τ(G)), bijection exhibited.
inline CheckReport check_subst_kleisli(SymSeq const& G, SymSeq const& F, std::size_t bound) {
  return detail::guarded("substitution is Kleisli composition", [&](CheckReport& r) {
    auto GF = subst_composite(G, F, bound);
    auto const& out = GF.value.source;
    auto Fs = sharp(F, out, G.source);
    PresheafRelPsm T;
    auto kl = tau_inv(T.compose(tau(Fs), tau(G.data)));
    auto const& O = out.cat;
    std::size_t nz = G.target.num_objects();
    SymCell m;
    for (Index x = 0; x < O.num_objects(); ++x) {
      for (Index z = 0; z < nz; ++z) {
        m.push_back(induced_map(GF.quotients[x * nz + z], kl.at(x, z), [&](Elem const& t) {
          Index yb = G.source.cat.object_index(t.key()[0]);
          Elem s = Fs.at(x, yb).normalize(detail::sharp_part(t));
          return Elem::tag(t.key()[0], Elem::tuple({s, t.value()[0]}));
        }));
      }
    }
    detail::require_bijective(r, GF.value, m, "comparison");
    if (r.passed) {
      detail::require_natural(r, GF.value.data, kl, m, "comparison");
    }
  });
}

// ---------------------------------------------------------------------------
// Coloured operads

struct ColouredOperad {
  std::string name;
  SymSeq ops;
  std::size_t bound = 0;
  SymSeq identity;
  SubstComposite square;  // ops ∘ ops
  SymCell unit;           // identity → ops
  SymCell mult;           // ops ∘ ops → ops
};

inline CheckReport check_operad(ColouredOperad const& P) {
  CheckReport all("operad " + P.name);
  auto const& O = P.ops;
  auto n = P.bound;
  all.add(detail::guarded("cells are natural", [&](CheckReport& r) {
    auto v = validate_symseq(O);
    if (!v.ok()) {
      r.fail(json{{"problem", v.violations.front()}});
      return;
    }
    detail::require_natural(r, P.identity.data, O.data, P.unit, "unit");
    detail::require_natural(r, P.square.value.data, O.data, P.mult, "composition");
  }));
  auto id = symcell_identity(O);
  all.add(detail::guarded("left unit", [&](CheckReport& r) {
    auto IO = subst_composite(P.identity, O, n);
    auto lhs = subst_map(P.unit, P.identity, id, O, IO, P.square.value);
    SymCell comp;
    for (std::size_t k = 0; k < lhs.size(); ++k) {
      comp.push_back(compose(P.mult[k], lhs[k]));
    }
    detail::compare_symcells(r, IO.value, comp, subst_left_unitor(O, IO), "mult after unit o 1");
  }));
  all.add(detail::guarded("right unit", [&](CheckReport& r) {
    auto OI = subst_composite(O, P.identity, n);
    auto lhs = subst_map(id, O, P.unit, P.identity, OI, P.square.value);
    SymCell comp;
    for (std::size_t k = 0; k < lhs.size(); ++k) {
      comp.push_back(compose(P.mult[k], lhs[k]));
    }
    detail::compare_symcells(r, OI.value, comp, subst_right_unitor(O, OI), "mult after 1 o unit");
  }));
  all.add(detail::guarded("associativity", [&](CheckReport& r) {
    auto const& OO = P.square;
    auto OO_O = subst_composite(OO.value, O, n);
    auto O_OO = subst_composite(O, OO.value, n);
    auto a = subst_associator(O, O, OO_O, O_OO, OO);
    auto left = subst_map(P.mult, OO.value, id, O, OO_O, OO.value);
    auto right = subst_map(id, O, P.mult, OO.value, O_OO, OO.value);
    SymCell lhs, rhs;
    for (std::size_t k = 0; k < left.size(); ++k) {
      lhs.push_back(compose(P.mult[k], left[k]));
      rhs.push_back(compose(P.mult[k], compose(right[k], a[k])));
    }
    detail::compare_symcells(r, OO_O.value, lhs, rhs, "associativity square");
  }));
  return all;
}

namespace operads {

namespace detail {

// Single-colour sequence with O[k] given for 1 ≤ k ≤ n, Σ_k acting through
// `act(σ, e)` for a permutation morphism x̄ → x̄′ sending e ∈ O[k] to O[k].
template <typename Vals, typename Act>
SymSeq single_colour(std::size_t n, Vals&& vals, Act&& act) {
  auto X = seeds::terminal();
  auto S = free_sym_cat(X, n);
  return make_symseq(
      S, X, [&](Elem const& t, Elem const&) { return t.size() == 0 ? FinSet() : vals(t.size()); },
      [&](Elem const& w, Elem const&, Elem const& e) { return act(sym::perm_of(w), e); },
      [](Elem const&, Elem const&, Elem const& e) { return e; });
}

template <typename Mult>
ColouredOperad finish(std::string name, SymSeq ops, std::size_t n, Elem unit_op, Mult&& mult) {
  auto I = subst_identity(ops.target, n);
  auto sq = subst_composite(ops, ops, n);
  ColouredOperad P{std::move(name), ops, n, I, sq, {}, {}};
  for (Index x = 0; x < I.source.cat.num_objects(); ++x) {
    P.unit.push_back(FinFn::tabulate(I.data.at(x, 0), ops.data.at(x, 0), [&](Elem const&) { return unit_op; }));
    P.mult.push_back(induced_map(sq.quotients[x], ops.data.at(x, 0), mult));
  }
  return P;
}

}  // namespace detail

// Every O[k] is a point, 1 ≤ k ≤ n.
inline ColouredOperad terminal(std::size_t n) {
  auto ops = detail::single_colour(
      n, [](std::size_t) { return FinSet{"*"_e}; }, [](Perm const&, Elem const& e) { return e; });
  return detail::finish("terminal", ops, n, "*"_e, [](Elem const&) { return "*"_e; });
}

// O[k] = linear orders of k inputs, listed as tuples of positions; Σ_k acts
// freely. A permutation morphism π : x̄ → x̄′ pulls a listing ℓ back to π⁻¹∘ℓ.
inline ColouredOperad associative(std::size_t n) {
  auto listing = [](Perm const& p) { return sym::perm_label(p); };
  auto ops = detail::single_colour(
      n,
      [&](std::size_t k) {
        std::vector<Elem> v;
        Perm p = sym::identity_perm(k);
        do {
          v.push_back(listing(p));
        } while (std::next_permutation(p.begin(), p.end()));
        return FinSet(v);
      },
      [&](Perm const& pi, Elem const& e) {
        Perm inv = sym::inverse(pi);
        Perm l = sym::positions(e);
        for (auto& i : l) {
          i = inv[i];
        }
        return listing(l);
      });
  // [(ȳ, blocks)|(g, (f_i), h)]: read blocks in the order g, each block in
  // the order f_i, then pull back along h.
  auto mult = [listing](Elem const& t) {
    auto const& bl = t.key()[1].items();
    auto const& fs = t.value()[1].items();
    Perm g = sym::positions(t.value()[0]);
    std::vector<std::size_t> off(bl.size() + 1, 0);
    for (std::size_t i = 0; i < bl.size(); ++i) {
      off[i + 1] = off[i] + bl[i].size();
    }
    Perm L;
    for (auto b : g) {
      Perm f = sym::positions(fs[b]);
      for (auto j : f) {
        L.push_back(off[b] + j);
      }
    }
    Perm inv = sym::inverse(sym::perm_of(t.value()[2]));
    for (auto& i : L) {
      i = inv[i];
    }
    return listing(L);
  };
  return detail::finish("associative", ops, n, listing({0}), mult);
}

}  // namespace operads

// ---------------------------------------------------------------------------
// Species re-indexing: a symmetric sequence X → Y is a functor
// S(Xᵒᵖ) × (Yᵒᵖ)ᵒᵖ → Set. The morphism (σ, f̄) of S(Xᵒᵖ) : x̄ → x̄′ is read as
// (σ⁻¹, (f_σ⁻¹(j))_j) : x̄′ → x̄ in S(X).

struct Species {
  TruncatedSymCat source;  // S(Xᵒᵖ)
  FinCat target;           // Yᵒᵖ
  Bifunctor data;          // contravariant in Yᵒᵖ, covariant in S(Xᵒᵖ)
};

inline Elem reverse_sym_morphism(Elem const& m) {
  Perm s = sym::perm_of(m);
  Perm inv = sym::inverse(s);
  auto const& c = sym::comps_of(m);
  std::vector<Elem> comps;
  for (std::size_t j = 0; j < s.size(); ++j) {
    comps.push_back(c[inv[j]]);
  }
  return sym::mor_label(inv, std::move(comps));
}

inline Species to_species(SymSeq const& F) {
  auto S = free_sym_cat(opposite(F.source.base), F.source.max_len);
  auto Yop = opposite(F.target);
  auto const& C = F.source.cat;
  Bifunctor H{Yop, S.cat, {}, {}, {}};
  for (Index y = 0; y < Yop.num_objects(); ++y) {
    for (Index o = 0; o < S.cat.num_objects(); ++o) {
      H.values.push_back(F.data.at(C.object_index(S.cat.object(o)), y));
    }
  }
  for (Index v = 0; v < Yop.num_morphisms(); ++v) {
    for (Index o = 0; o < S.cat.num_objects(); ++o) {
      H.left.push_back(F.data.right_action(C.object_index(S.cat.object(o)), v));
    }
  }
  for (Index y = 0; y < Yop.num_objects(); ++y) {
    for (Index w = 0; w < S.cat.num_morphisms(); ++w) {
      H.right.push_back(F.data.left_action(C.morphism_index(reverse_sym_morphism(S.cat.label(w))), y));
    }
  }
  return Species{S, Yop, std::move(H)};
}

inline SymSeq from_species(Species const& P) {
  auto X = opposite(P.source.base);
  auto Y = opposite(P.target);
  auto S = free_sym_cat(X, P.source.max_len);
  auto const& C = P.source.cat;
  Bifunctor H{S.cat, Y, {}, {}, {}};
  for (Index o = 0; o < S.cat.num_objects(); ++o) {
    for (Index y = 0; y < Y.num_objects(); ++y) {
      H.values.push_back(P.data.at(y, C.object_index(S.cat.object(o))));
    }
  }
  for (Index w = 0; w < S.cat.num_morphisms(); ++w) {
    for (Index y = 0; y < Y.num_objects(); ++y) {
      H.left.push_back(P.data.right_action(y, C.morphism_index(reverse_sym_morphism(S.cat.label(w)))));
    }
  }
  for (Index o = 0; o < S.cat.num_objects(); ++o) {
    for (Index v = 0; v < Y.num_morphisms(); ++v) {
      H.right.push_back(P.data.left_action(v, C.object_index(S.cat.object(o))));
    }
  }
  return SymSeq{S, Y, std::move(H), false};
}

}  // namespace ck
