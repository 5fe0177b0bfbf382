#pragma once

// Seeded random instances. All draws go through Rng so that a seed fixes the
// whole instance stream on every platform.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ck/presheaf.hpp"
#include "ck/seeds.hpp"

namespace ck {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, n); n must be positive.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool coin() { return (gen_() & 1U) != 0; }

  template <typename T>
  T const& pick(std::vector<T> const& v) {
    return v[below(v.size())];
  }

  // Independent stream for sub-instance number `k`.
  Rng split(std::uint64_t k) { return Rng(gen_() ^ (0x9e3779b97f4a7c15ULL * (k + 1))); }

 private:
  std::mt19937_64 gen_;
};

// A set of morphisms that generates C under composition, chosen greedily in
// index order.
inline std::vector<Index> generating_morphisms(FinCat const& C) {
  std::size_t nm = C.num_morphisms();
  std::vector<char> reached(nm, 0);
  for (std::size_t a = 0; a < C.num_objects(); ++a) {
    reached[C.identity(static_cast<Index>(a))] = 1;
  }
  std::vector<Index> gens;
  auto close = [&] {
    bool grew = true;
    while (grew) {
      grew = false;
      for (Index g : gens) {
        for (std::size_t f = 0; f < nm; ++f) {
          if (!reached[f]) {
            continue;
          }
          if (auto h = C.try_compose(g, static_cast<Index>(f)); h && !reached[*h]) {
            reached[*h] = 1;
            grew = true;
          }
        }
      }
    }
  };
  for (std::size_t m = 0; m < nm; ++m) {
    if (!reached[m]) {
      gens.push_back(static_cast<Index>(m));
      reached[m] = 1;
      close();
    }
  }
  return gens;
}

namespace detail {

inline FinSet sized_set(std::string const& prefix, std::size_t n) {
  std::vector<Elem> v;
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back(Elem::atom(prefix + std::to_string(i)));
  }
  return FinSet(std::move(v));
}

// Extends restriction maps given on generators to every morphism, or
// returns false when the choice is inconsistent.
inline bool extend_restrictions(FinCat const& C, std::vector<FinSet> const& values,
                                std::vector<Index> const& gens,
                                std::vector<std::optional<FinFn>>& res) {
  std::size_t nm = C.num_morphisms();
  std::vector<Index> frontier;
  for (std::size_t a = 0; a < C.num_objects(); ++a) {
    Index i = C.identity(static_cast<Index>(a));
    res[i] = FinFn::identity(values[a]);
    frontier.push_back(i);
  }
  for (Index g : gens) {
    if (res[g]) {
      continue;
    }
    frontier.push_back(g);
  }
  // Breadth-first over composites g ∘ m with g a generator.
  std::vector<char> seen(nm, 0);
  for (Index m : frontier) {
    seen[m] = 1;
  }
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    Index m = frontier[head];
    for (Index g : gens) {
      auto h = C.try_compose(g, m);
      if (!h) {
        continue;
      }
      // p(g ∘ m) = p(m) ∘ p(g)
      FinFn val = compose(*res[m], *res[g]);
      if (res[*h]) {
        if (!(*res[*h] == val)) {
          return false;
        }
      } else {
        res[*h] = std::move(val);
      }
      if (!seen[*h]) {
        seen[*h] = 1;
        frontier.push_back(*h);
      }
    }
  }
  for (auto const& r : res) {
    if (!r) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

// Random presheaf on X with value sets of size ≤ max_values. Rejection
// sampling over restriction maps on a generating set; after `tries` failed
// attempts, falls back to a constant presheaf.
inline Presheaf random_presheaf(Rng& rng, FinCat const& X, std::size_t max_values,
                                std::string const& prefix = "v", int tries = 200) {
  auto gens = generating_morphisms(X);
  for (int t = 0; t < tries; ++t) {
    std::vector<FinSet> values;
    for (std::size_t a = 0; a < X.num_objects(); ++a) {
      values.push_back(detail::sized_set(prefix, rng.between(0, max_values)));
    }
    std::vector<std::optional<FinFn>> res(X.num_morphisms());
    bool ok = true;
    for (Index g : gens) {
      auto const& dom = values[X.tgt(g)];
      auto const& cod = values[X.src(g)];
      if (!dom.empty() && cod.empty()) {
        ok = false;
        break;
      }
      FinFn f{dom, cod, {}};
      for (std::size_t i = 0; i < dom.size(); ++i) {
        f.map.push_back(static_cast<Index>(rng.below(cod.size())));
      }
      res[g] = std::move(f);
    }
    if (!ok || !detail::extend_restrictions(X, values, gens, res)) {
      continue;
    }
    Presheaf p{X, values, {}};
    for (auto& r : res) {
      p.restrict.push_back(std::move(*r));
    }
    if (validate_presheaf(p).ok()) {
      return p;
    }
  }
  std::size_t n = rng.between(1, max_values == 0 ? 1 : max_values);
  FinSet s = detail::sized_set(prefix, max_values == 0 ? 0 : n);
  Presheaf p{X, std::vector<FinSet>(X.num_objects(), s), {}};
  for (std::size_t m = 0; m < X.num_morphisms(); ++m) {
    p.restrict.push_back(FinFn::identity(s));
  }
  return p;
}

// Random non-identity functor between seed categories, by rejection.
inline std::optional<Functor> random_functor(Rng& rng, FinCat const& S, FinCat const& T,
                                             int tries = 400) {
  auto gens = generating_morphisms(S);
  for (int t = 0; t < tries; ++t) {
    std::vector<Index> obj(S.num_objects());
    for (auto& o : obj) {
      o = static_cast<Index>(rng.below(T.num_objects()));
    }
    std::vector<std::optional<Index>> mor(S.num_morphisms());
    bool ok = true;
    for (std::size_t a = 0; a < S.num_objects(); ++a) {
      mor[S.identity(static_cast<Index>(a))] = T.identity(obj[a]);
    }
    for (Index g : gens) {
      auto const& h = T.hom(obj[S.src(g)], obj[S.tgt(g)]);
      if (h.empty()) {
        ok = false;
        break;
      }
      mor[g] = h[rng.below(h.size())];
    }
    if (!ok) {
      continue;
    }
    // Extend along composites.
    bool grew = true;
    while (grew && ok) {
      grew = false;
      for (auto const& [k, h] : S.composition_table()) {
        Index g = static_cast<Index>(k / S.num_morphisms());
        Index f = static_cast<Index>(k % S.num_morphisms());
        if (!mor[g] || !mor[f]) {
          continue;
        }
        Index v = T.compose(*mor[g], *mor[f]);
        if (!mor[h]) {
          mor[h] = v;
          grew = true;
        } else if (*mor[h] != v) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) {
      continue;
    }
    Functor F{S, T, obj, {}};
    for (auto const& m : mor) {
      if (!m) {
        ok = false;
        break;
      }
      F.mor.push_back(*m);
    }
    if (ok && validate_functor(F).ok()) {
      return F;
    }
  }
  return std::nullopt;
}

// Reads a presheaf P on Y × op(X) as the functor x ↦ P(-, x) into P(Y).
inline PshValuedFunctor psh_functor_from_presheaf(FinCat const& X, FinCat const& Y,
                                                  Presheaf const& P) {
  auto const& YX = P.base;
  auto obj = [&](Index y, Index x) { return YX.object_index(Elem::tuple({Y.object(y), X.object(x)})); };
  auto mor = [&](Elem const& v, Elem const& u) { return YX.morphism_index(Elem::tuple({v, u})); };
  PshValuedFunctor F{X, Y, {}, {}};
  for (Index x = 0; x < X.num_objects(); ++x) {
    Presheaf p{Y, {}, {}};
    for (Index y = 0; y < Y.num_objects(); ++y) {
      p.values.push_back(P.values[obj(y, x)]);
    }
    Elem const& idx = X.label(X.identity(x));
    for (Index v = 0; v < Y.num_morphisms(); ++v) {
      p.restrict.push_back(P.restrict[mor(Y.label(v), idx)]);
    }
    F.obj.push_back(std::move(p));
  }
  for (Index u = 0; u < X.num_morphisms(); ++u) {
    PshMap m{F.obj[X.src(u)], F.obj[X.tgt(u)], {}};
    for (Index y = 0; y < Y.num_objects(); ++y) {
      m.components.push_back(P.restrict[mor(Y.label(Y.identity(y)), X.label(u))]);
    }
    F.mor.push_back(std::move(m));
  }
  return F;
}

inline PshValuedFunctor random_psh_functor(Rng& rng, FinCat const& X, FinCat const& Y,
                                           std::size_t max_values, std::string const& prefix = "w") {
  auto P = random_presheaf(rng, product(Y, opposite(X)), max_values, prefix);
  return psh_functor_from_presheaf(X, Y, P);
}

}  // namespace ck
