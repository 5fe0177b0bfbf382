#pragma once

// Profunctors and the Kleisli bicategory of the presheaf construction.
//
// A profunctor X ⇸ Y is a Bifunctor with contravariant slot Y and covariant
// slot X, so values are indexed (y, x). Kleisli morphisms X → Y are
// presheaf-valued functors; tau/tau_inv pass between the two views without
// changing any label.
//
//   PresheafRelPsm T;
//   auto gf = T.compose(g, f);              // x ↦ g*(f x)
//   auto a = T.associator_of(h, g, f);      // (h∘g)∘f ⇒ h∘(g∘f)
//   CheckReport r = check_pentagon(T, k, h, g, f);

#include <optional>
#include <string>
#include <vector>

#include "ck/presheaf.hpp"

namespace ck {

using Profunctor = Bifunctor;

struct ProfCell {
  Profunctor source;
  Profunctor target;
  std::vector<FinFn> components;  // [y * |X| + x]
};

inline ValidationReport validate_prof_cell(ProfCell const& c) {
  ValidationReport r;
  auto const& F = c.source;
  auto const& G = c.target;
  auto const& Y = F.contra;
  auto const& X = F.co;
  std::size_t nx = X.num_objects();
  if (c.components.size() != Y.num_objects() * nx) {
    r.add("profunctor cell does not cover all object pairs");
    return r;
  }
  for (Index g = 0; g < Y.num_morphisms(); ++g) {
    for (Index x = 0; x < nx; ++x) {
      auto lhs = compose(c.components[Y.src(g) * nx + x], F.left_action(g, x));
      auto rhs = compose(G.left_action(g, x), c.components[Y.tgt(g) * nx + x]);
      if (!(lhs == rhs)) {
        r.add("cell does not commute with " + Y.label(g).repr() + " at " + X.object(x).repr());
      }
    }
  }
  for (Index y = 0; y < Y.num_objects(); ++y) {
    for (Index f = 0; f < X.num_morphisms(); ++f) {
      auto lhs = compose(c.components[y * nx + X.tgt(f)], F.right_action(y, f));
      auto rhs = compose(G.right_action(y, f), c.components[y * nx + X.src(f)]);
      if (!(lhs == rhs)) {
        r.add("cell does not commute with " + X.label(f).repr() + " at " + Y.object(y).repr());
      }
    }
  }
  return r;
}

// Id_X(a, b) = X[a, b] with composition actions.
inline Profunctor prof_identity(FinCat const& X) {
  return Bifunctor::tabulate(
      X, X, [&](Index a, Index b) { return X.hom_set(a, b); },
      [&](Index g, Index, Elem const& v) { return X.compose_labels(v, X.label(g)); },
      [&](Index, Index f, Elem const& v) { return X.compose_labels(X.label(f), v); });
}

struct ProfComposite {
  Profunctor value;
  std::vector<QuotientSet> quotients;  // [z * |X| + x]
};

// (G∘F)(z, x) = ∫^y G(z, y) × F(y, x); elements are classes of <y|(g, f)>.
inline ProfComposite prof_composite(Profunctor const& G, Profunctor const& F) {
  if (!(G.co == F.contra)) {
    throw EndpointMismatch("prof_compose: the middle categories differ");
  }
  auto const& Z = G.contra;
  auto const& Y = G.co;
  auto const& X = F.co;
  std::size_t nx = X.num_objects();
  std::vector<QuotientSet> qs;
  qs.reserve(Z.num_objects() * nx);
  for (Index z = 0; z < Z.num_objects(); ++z) {
    for (Index x = 0; x < nx; ++x) {
      QuotientBuilder qb;
      for (Index y = 0; y < Y.num_objects(); ++y) {
        for (auto const& g : G.at(z, y)) {
          for (auto const& f : F.at(y, x)) {
            qb.add(Elem::tag(Y.object(y), Elem::tuple({g, f})));
          }
        }
      }
      // v : y → y', g ∈ G(z, y), f ∈ F(y', x): <y|(g, F(v)f)> ~ <y'|(G(v)g, f)>
      for (Index v = 0; v < Y.num_morphisms(); ++v) {
        if (Y.is_identity(v)) {
          continue;
        }
        Index y = Y.src(v);
        Index y1 = Y.tgt(v);
        auto const& Fv = F.left_action(v, x);
        auto const& Gv = G.right_action(z, v);
        for (Index gi = 0; gi < Gv.dom.size(); ++gi) {
          for (Index fi = 0; fi < Fv.dom.size(); ++fi) {
            qb.unite(qb.index(Elem::tag(Y.object(y), Elem::tuple({Gv.dom[gi], Fv.cod[Fv.map[fi]]}))),
                     qb.index(Elem::tag(Y.object(y1), Elem::tuple({Gv.cod[Gv.map[gi]], Fv.dom[fi]}))));
          }
        }
      }
      qs.push_back(qb.build());
    }
  }
  Profunctor H{Z, X, {}, {}, {}};
  for (auto const& q : qs) {
    H.values.push_back(q.value);
  }
  for (Index h = 0; h < Z.num_morphisms(); ++h) {
    for (Index x = 0; x < nx; ++x) {
      H.left.push_back(induced_map(qs[Z.tgt(h) * nx + x], H.at(Z.src(h), x), [&](Elem const& t) {
        Index y = Y.object_index(t.key());
        return Elem::tag(t.key(), Elem::tuple({G.left_action(h, y)(t.value()[0]), t.value()[1]}));
      }));
    }
  }
  for (Index z = 0; z < Z.num_objects(); ++z) {
    for (Index u = 0; u < X.num_morphisms(); ++u) {
      H.right.push_back(induced_map(qs[z * nx + X.src(u)], H.at(z, X.tgt(u)), [&](Elem const& t) {
        Index y = Y.object_index(t.key());
        return Elem::tag(t.key(), Elem::tuple({t.value()[0], F.right_action(y, u)(t.value()[1])}));
      }));
    }
  }
  return {std::move(H), std::move(qs)};
}

inline Profunctor prof_compose(Profunctor const& G, Profunctor const& F) {
  return prof_composite(G, F).value;
}

// τ(F)(x) is the presheaf y ↦ F(y, x).
inline PshValuedFunctor tau(Profunctor const& F) {
  auto const& Y = F.contra;
  auto const& X = F.co;
  PshValuedFunctor T{X, Y, {}, {}};
  for (Index x = 0; x < X.num_objects(); ++x) {
    Presheaf p{Y, {}, {}};
    for (Index y = 0; y < Y.num_objects(); ++y) {
      p.values.push_back(F.at(y, x));
    }
    for (Index v = 0; v < Y.num_morphisms(); ++v) {
      p.restrict.push_back(F.left_action(v, x));
    }
    T.obj.push_back(std::move(p));
  }
  for (Index u = 0; u < X.num_morphisms(); ++u) {
    PshMap m{T.obj[X.src(u)], T.obj[X.tgt(u)], {}};
    for (Index y = 0; y < Y.num_objects(); ++y) {
      m.components.push_back(F.right_action(y, u));
    }
    T.mor.push_back(std::move(m));
  }
  return T;
}

inline Profunctor tau_inv(PshValuedFunctor const& T) {
  auto const& X = T.source;
  auto const& Y = T.target;
  Profunctor F{Y, X, {}, {}, {}};
  for (Index y = 0; y < Y.num_objects(); ++y) {
    for (Index x = 0; x < X.num_objects(); ++x) {
      F.values.push_back(T.obj[x].values[y]);
    }
  }
  for (Index v = 0; v < Y.num_morphisms(); ++v) {
    for (Index x = 0; x < X.num_objects(); ++x) {
      F.left.push_back(T.obj[x].restrict[v]);
    }
  }
  for (Index y = 0; y < Y.num_objects(); ++y) {
    for (Index u = 0; u < X.num_morphisms(); ++u) {
      F.right.push_back(T.mor[u].components[y]);
    }
  }
  return F;
}

inline bool operator==(Profunctor const& a, Profunctor const& b) {
  return a.values == b.values && a.left == b.left && a.right == b.right && a.contra == b.contra
         && a.co == b.co;
}

// Co-Yoneda unitors of Prof: Id ∘ F ≅ F and F ∘ Id ≅ F.
inline ProfCell prof_left_unitor(Profunctor const& F, Profunctor const& IdF) {
  auto const& Y = F.contra;
  ProfCell c{IdF, F, {}};
  std::size_t nx = F.co.num_objects();
  for (Index y = 0; y < Y.num_objects(); ++y) {
    for (Index x = 0; x < nx; ++x) {
      // <y'|(v, a)> with v : y → y', a ∈ F(y', x) ↦ F(v)(a)
      c.components.push_back(FinFn::tabulate(IdF.at(y, x), F.at(y, x), [&](Elem const& t) {
        return F.left_action(Y.morphism_index(t.value()[0]), x)(t.value()[1]);
      }));
    }
  }
  return c;
}

inline ProfCell prof_right_unitor(Profunctor const& F, Profunctor const& FId) {
  auto const& X = F.co;
  ProfCell c{FId, F, {}};
  std::size_t nx = X.num_objects();
  for (Index y = 0; y < F.contra.num_objects(); ++y) {
    for (Index x = 0; x < nx; ++x) {
      // <x'|(a, u)> with a ∈ F(y, x'), u : x' → x ↦ F(u)(a)
      c.components.push_back(FinFn::tabulate(FId.at(y, x), F.at(y, x), [&](Elem const& t) {
        return F.right_action(y, X.morphism_index(t.value()[1]))(t.value()[0]);
      }));
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// The presheaf relative pseudomonad

enum class Fault { none, mu, eta, theta, unit };

inline std::string to_string(Fault f) {
  switch (f) {
    case Fault::none: return "none";
    case Fault::mu: return "mu";
    case Fault::eta: return "eta";
    case Fault::theta: return "theta";
    case Fault::unit: return "unit";
  }
  return "?";
}

inline std::optional<Fault> parse_fault(std::string const& s) {
  for (Fault f : {Fault::none, Fault::mu, Fault::eta, Fault::theta, Fault::unit}) {
    if (to_string(f) == s) {
      return f;
    }
  }
  return std::nullopt;
}

namespace detail {

inline void corrupt_map(PshMap& m) {
  for (auto& c : m.components) {
    if (corrupt_in_place(c)) {
      return;
    }
  }
}

}  // namespace detail

// Unit i = Yoneda, extension (-)* = kan_extend, and the structure cells μ, η,
// θ. A fault corrupts one component of every evaluation of the named cell.
class PresheafRelPsm {
 public:
  explicit PresheafRelPsm(Fault fault = Fault::none) : fault_(fault) {}

  Fault fault() const noexcept { return fault_; }

  PshValuedFunctor unit(FinCat const& X) const {
    auto i = yoneda_embedding(X);
    if (fault_ == Fault::unit) {
      for (Index u = 0; u < X.num_morphisms(); ++u) {
        if (!X.is_identity(u)) {
          detail::corrupt_map(i.mor[u]);
          break;
        }
      }
    }
    return i;
  }

  Presheaf ext(PshValuedFunctor const& f, Presheaf const& p) const { return kan_extend(f, p); }

  PshMap ext_map(PshValuedFunctor const& f, PshMap const& phi, Presheaf const& fp,
                 Presheaf const& fq) const {
    return kan_extend_map(f, phi, fp, fq);
  }

  // g ∘ f : x ↦ g*(f(x)).
  PshValuedFunctor compose(PshValuedFunctor const& g, PshValuedFunctor const& f) const {
    if (!(f.target == g.source)) {
      throw EndpointMismatch("Kleisli composite: middle categories differ");
    }
    PshValuedFunctor h{f.source, g.target, {}, {}};
    for (auto const& p : f.obj) {
      h.obj.push_back(kan_extend(g, p));
    }
    for (Index u = 0; u < f.source.num_morphisms(); ++u) {
      auto const& X = f.source;
      h.mor.push_back(kan_extend_map(g, f.mor[u], h.obj[X.src(u)], h.obj[X.tgt(u)]));
    }
    return h;
  }

  // η_f at x : f(x) → f*(y x).
  PshMap eta(PshValuedFunctor const& f, Index x, Presheaf const& fyx) const {
    auto e = eta_iso(f, x, fyx);
    if (fault_ == Fault::eta) {
      detail::corrupt_map(e);
    }
    return e;
  }

  // η_f as a cell f ⇒ f ∘ i.
  PshCell eta_cell(PshValuedFunctor const& f, PshValuedFunctor const& fi) const {
    PshCell c{f, fi, {}};
    for (Index x = 0; x < f.source.num_objects(); ++x) {
      c.components.push_back(eta(f, x, fi.obj[x]));
    }
    return c;
  }

  // θ_X at p : i*(p) → p, [x,(u,c)] ↦ p(u)(c).
  PshMap theta(Presheaf const& p, Presheaf const& ip) const {
    auto const& X = p.base;
    PshMap m{ip, p, {}};
    for (Index x1 = 0; x1 < X.num_objects(); ++x1) {
      m.components.push_back(FinFn::tabulate(ip.values[x1], p.values[x1], [&](Elem const& t) {
        return p.restrict[X.morphism_index(t.value()[0])](t.value()[1]);
      }));
      if (!m.components.back().is_bijective()) {
        throw NonInvertible("theta at " + X.object(x1).repr() + " is not a bijection");
      }
    }
    if (fault_ == Fault::theta) {
      detail::corrupt_map(m);
    }
    return m;
  }

  PshMap theta(Presheaf const& p) const { return theta(p, kan_extend(unit(p.base), p)); }

  // μ_{g,f} at p : (g∘f)*(p) → g*(f*(p)),
  // [x,(<y|(a,b)>, c)] ↦ [y,(a, [x,(b,c)])].
  PshMap mu(Presheaf const& gf_p, Presheaf const& f_p, Presheaf const& g_fp) const {
    PshMap m{gf_p, g_fp, {}};
    for (Index z = 0; z < gf_p.base.num_objects(); ++z) {
      m.components.push_back(FinFn::tabulate(gf_p.values[z], g_fp.values[z], [&](Elem const& t) {
        Elem const& A = t.value()[0];
        Elem const& c = t.value()[1];
        Elem const& y = A.key();
        Index yi = f_p.base.object_index(y);
        Elem inner = f_p.values[yi].normalize(Elem::tag(t.key(), Elem::tuple({A.value()[1], c})));
        return Elem::tag(y, Elem::tuple({A.value()[0], inner}));
      }));
    }
    if (fault_ == Fault::mu) {
      detail::corrupt_map(m);
    }
    return m;
  }

  PshMap mu(PshValuedFunctor const& g, PshValuedFunctor const& f, PshValuedFunctor const& gf,
            Presheaf const& p) const {
    auto f_p = kan_extend(f, p);
    return mu(kan_extend(gf, p), f_p, kan_extend(g, f_p));
  }

  // α_{h,g,f} : (h∘g)∘f ⇒ h∘(g∘f); at x it is μ_{h,g} at f(x).
  PshCell associator(PshValuedFunctor const& hg_f, PshValuedFunctor const& h_gf,
                     PshValuedFunctor const& gf) const {
    PshCell a{hg_f, h_gf, {}};
    for (Index x = 0; x < gf.source.num_objects(); ++x) {
      // (h∘g)*(f x) → h*(g*(f x)) with g*(f x) = (g∘f)(x)
      a.components.push_back(mu(hg_f.obj[x], gf.obj[x], h_gf.obj[x]));
    }
    return a;
  }

  PshCell associator_of(PshValuedFunctor const& h, PshValuedFunctor const& g,
                        PshValuedFunctor const& f) const {
    auto hg = compose(h, g);
    auto gf = compose(g, f);
    return associator(compose(hg, f), compose(h, gf), gf);
  }

  // ρ_f : f ∘ i ⇒ f, the inverse of η_f.
  PshCell right_unitor(PshValuedFunctor const& f, PshValuedFunctor const& fi) const {
    PshCell r{fi, f, {}};
    for (Index x = 0; x < f.source.num_objects(); ++x) {
      r.components.push_back(psh_invert(eta(f, x, fi.obj[x])));
    }
    return r;
  }

  // λ_f : i ∘ f ⇒ f; at x it is θ at f(x).
  PshCell left_unitor(PshValuedFunctor const& f, PshValuedFunctor const& i_f) const {
    PshCell l{i_f, f, {}};
    for (Index x = 0; x < f.source.num_objects(); ++x) {
      l.components.push_back(theta(f.obj[x], i_f.obj[x]));
    }
    return l;
  }

  // β ∘ f for β : g ⇒ g'; at x it is β* at f(x).
  PshCell whisker_right(PshCell const& beta, PshValuedFunctor const& gf,
                        PshValuedFunctor const& g1f) const {
    PshCell c{gf, g1f, {}};
    for (Index x = 0; x < gf.source.num_objects(); ++x) {
      c.components.push_back(kan_extend_cell(beta, gf.obj[x], g1f.obj[x]));
    }
    return c;
  }

  // k ∘ β for β : f ⇒ f'; at x it is k*(β_x).
  PshCell whisker_left(PshValuedFunctor const& k, PshCell const& beta, PshValuedFunctor const& kf,
                       PshValuedFunctor const& kf1) const {
    PshCell c{kf, kf1, {}};
    for (Index x = 0; x < kf.source.num_objects(); ++x) {
      c.components.push_back(kan_extend_map(k, beta.components[x], kf.obj[x], kf1.obj[x]));
    }
    return c;
  }

 private:
  Fault fault_;
};

// ---------------------------------------------------------------------------
// Coherence checks

namespace detail {

// Compares two parallel cells, recording the first differing element.
inline void compare_cells(CheckReport& r, PshCell const& lhs, PshCell const& rhs) {
  if (auto d = psh_cell_difference(lhs, rhs)) {
    r.fail(*d);
  }
}

template <typename Body>
CheckReport guarded(std::string name, Body&& body) {
  CheckReport r(std::move(name));
  try {
    body(r);
  } catch (BoundExceeded const&) {
    throw;
  } catch (Error const& e) {
    r.fail(json{{"error", e.what()}});
  }
  return r;
}

}  // namespace detail

// Pentagon for f : X → Y, g : Y → Z, h : Z → W, k : W → V.
inline CheckReport check_pentagon(PresheafRelPsm const& T, PshValuedFunctor const& k,
                                  PshValuedFunctor const& h, PshValuedFunctor const& g,
                                  PshValuedFunctor const& f) {
  return detail::guarded("pentagon", [&](CheckReport& r) {
    auto kh = T.compose(k, h);
    auto hg = T.compose(h, g);
    auto gf = T.compose(g, f);
    auto kh_g = T.compose(kh, g);
    auto h_gf = T.compose(h, gf);
    auto hg_f = T.compose(hg, f);
    auto k_hg = T.compose(k, hg);
    auto khg_f = T.compose(kh_g, f);       // ((k∘h)∘g)∘f
    auto kh_gf = T.compose(kh, gf);        // (k∘h)∘(g∘f)
    auto k_h_gf = T.compose(k, h_gf);      // k∘(h∘(g∘f))
    auto k_hg__f = T.compose(k_hg, f);     // (k∘(h∘g))∘f
    auto k_hg_f = T.compose(k, hg_f);      // k∘((h∘g)∘f)

    // top: α_{k∘h,g,f} then α_{k,h,g∘f}
    auto a1 = T.associator(khg_f, kh_gf, gf);
    auto a2 = T.associator(kh_gf, k_h_gf, h_gf);
    auto top = psh_cell_vcompose(a2, a1);

    // bottom: α_{k,h,g} ∘ f, then α_{k,h∘g,f}, then k ∘ α_{h,g,f}
    auto akhg = T.associator(kh_g, k_hg, hg);
    auto b1 = T.whisker_right(akhg, khg_f, k_hg__f);
    auto b2 = T.associator(k_hg__f, k_hg_f, hg_f);
    auto ahgf = T.associator(hg_f, h_gf, gf);
    auto b3 = T.whisker_left(k, ahgf, k_hg_f, k_h_gf);
    auto bottom = psh_cell_vcompose(b3, psh_cell_vcompose(b2, b1));
    detail::compare_cells(r, top, bottom);
  });
}

// The three triangle identities for f : X → Y and g : Y → Z.
inline CheckReport check_triangle(PresheafRelPsm const& T, PshValuedFunctor const& g,
                                  PshValuedFunctor const& f) {
  CheckReport all("triangles");
  auto const& Y = f.target;
  auto const& X = f.source;
  all.add(detail::guarded("middle: (g.lambda_f)(alpha_{g,i,f}) = rho_g.f", [&](CheckReport& r) {
    auto iY = T.unit(Y);
    auto gi = T.compose(g, iY);
    auto i_f = T.compose(iY, f);
    auto gf = T.compose(g, f);
    auto gi_f = T.compose(gi, f);
    auto g_if = T.compose(g, i_f);
    auto alpha = T.associator(gi_f, g_if, i_f);
    auto lam = T.left_unitor(f, i_f);
    auto lhs = psh_cell_vcompose(T.whisker_left(g, lam, g_if, gf), alpha);
    auto rhs = T.whisker_right(T.right_unitor(g, gi), gi_f, gf);
    detail::compare_cells(r, lhs, rhs);
  }));
  all.add(detail::guarded("left: lambda_{g.f}(alpha_{i,g,f}) = lambda_g.f", [&](CheckReport& r) {
    auto Z = g.target;
    auto iZ = T.unit(Z);
    auto gf = T.compose(g, f);
    auto ig = T.compose(iZ, g);
    auto ig_f = T.compose(ig, f);
    auto i_gf = T.compose(iZ, gf);
    auto alpha = T.associator(ig_f, i_gf, gf);
    auto lhs = psh_cell_vcompose(T.left_unitor(gf, i_gf), alpha);
    auto rhs = T.whisker_right(T.left_unitor(g, ig), ig_f, gf);
    detail::compare_cells(r, lhs, rhs);
  }));
  all.add(detail::guarded("right: (g.rho_f)(alpha_{g,f,i}) = rho_{g.f}", [&](CheckReport& r) {
    auto iX = T.unit(X);
    auto fi = T.compose(f, iX);
    auto gf = T.compose(g, f);
    auto gf_i = T.compose(gf, iX);
    auto g_fi = T.compose(g, fi);
    auto alpha = T.associator(gf_i, g_fi, fi);
    auto lhs = psh_cell_vcompose(T.whisker_left(g, T.right_unitor(f, fi), g_fi, gf), alpha);
    auto rhs = T.right_unitor(gf, gf_i);
    detail::compare_cells(r, lhs, rhs);
  }));
  return all;
}

// τ of a Kleisli composite against the coend composite of profunctors.
inline CheckReport check_tau_composite(PresheafRelPsm const& T, Profunctor const& G,
                                       Profunctor const& F) {
  return detail::guarded("tau of composite", [&](CheckReport& r) {
    auto kl = tau_inv(T.compose(tau(G), tau(F)));
    auto pc = prof_compose(G, F);
    std::size_t nx = F.co.num_objects();
    for (Index z = 0; z < G.contra.num_objects(); ++z) {
      for (Index x = 0; x < nx; ++x) {
        auto const& a = kl.at(z, x);
        auto const& b = pc.at(z, x);
        // both sides name <y|(g,f)> classes; the comparison re-reads labels
        auto m = FinFn::tabulate(a, b, [](Elem const& e) { return e; });
        if (!m.is_bijective()) {
          r.fail(json{{"z", G.contra.object(z).repr()},
                      {"x", F.co.object(x).repr()},
                      {"kleisli_size", a.size()},
                      {"coend_size", b.size()}});
        }
      }
    }
    if (r.passed && !(kl == pc)) {
      r.fail(json{{"problem", "actions differ under the bijection"}});
    }
  });
}

}  // namespace ck
