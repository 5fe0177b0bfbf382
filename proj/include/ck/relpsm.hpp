#pragma once

// Axiom suites for the presheaf relative pseudomonad, evaluated on a finite
// family of presheaf arguments.
//
//   auto fam = default_family(X);
//   check_assoc_axiom(T, f, g, h, fam);    // the associativity hexagon
//   check_unit_axiom(T, f, fam);
//   check_derived_coherences(T, f, g, fam);
//   check_lax_idempotent(T, f, g, {h1, h2}, fam);

#include <string>
#include <vector>

#include "ck/prof.hpp"

namespace ck {

struct TestFamily {
  FinCat base;
  std::vector<std::string> names;
  std::vector<Presheaf> members;

  void add(std::string name, Presheaf p) {
    if (!(p.base == base)) {
      throw EndpointMismatch("family member " + name + " has a different base");
    }
    names.push_back(std::move(name));
    members.push_back(std::move(p));
  }
};

// Representables, terminal, empty, and y(first) + y(last).
inline TestFamily default_family(FinCat const& X) {
  TestFamily fam{X, {}, {}};
  for (Index x = 0; x < X.num_objects(); ++x) {
    fam.add("y(" + X.object(x).repr() + ")", yoneda(X, x));
  }
  fam.add("terminal", psh_terminal(X));
  fam.add("empty", psh_initial(X));
  if (X.num_objects() > 0) {
    Index last = static_cast<Index>(X.num_objects() - 1);
    fam.add("y(" + X.object(0).repr() + ")+y(" + X.object(last).repr() + ")",
            psh_coproduct(yoneda(X, 0), yoneda(X, last)).sum);
  }
  return fam;
}

namespace detail {

inline void compare_maps(CheckReport& r, std::string const& where, PshMap const& lhs,
                         PshMap const& rhs) {
  if (auto d = psh_difference(lhs, rhs)) {
    json w{{"member", where}};
    for (auto const& [k, v] : d->items()) {
      w[k] = v;
    }
    r.fail(w);
  }
}

}  // namespace detail

// Both paths ((h∘g)∘f)*(p) ⇉ h*(g*(f*(p))) for every p in the family.
inline CheckReport check_assoc_axiom(PresheafRelPsm const& T, PshValuedFunctor const& f,
                                     PshValuedFunctor const& g, PshValuedFunctor const& h,
                                     TestFamily const& fam) {
  return detail::guarded("associativity axiom", [&](CheckReport& r) {
    auto hg = T.compose(h, g);
    auto gf = T.compose(g, f);
    auto hg_f = T.compose(hg, f);
    auto h_gf = T.compose(h, gf);
    auto alpha = T.associator(hg_f, h_gf, gf);
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
      auto const& p = fam.members[i];
      auto fp = T.ext(f, p);
      auto gfp = T.ext(g, fp);
      auto hgfp = T.ext(h, gfp);
      auto hg_f_p = T.ext(hg_f, p);
      auto h_gf_p = T.ext(h_gf, p);
      auto gf_p = T.ext(gf, p);
      auto h_gf__p = T.ext(h, gf_p);
      auto hg_fp = T.ext(hg, fp);
      // (μ_{h,g} f)*, then μ_{h,g∘f}, then h*(μ_{g,f})
      auto a1 = kan_extend_cell(alpha, hg_f_p, h_gf_p);
      auto a2 = T.mu(h_gf_p, gf_p, h_gf__p);
      auto a3 = T.ext_map(h, T.mu(gf_p, fp, gfp), h_gf__p, hgfp);
      auto lhs = psh_compose(a3, psh_compose(a2, a1));
      // μ_{h∘g,f}, then μ_{h,g} at f*(p)
      auto b1 = T.mu(hg_f_p, fp, hg_fp);
      auto b2 = T.mu(hg_fp, gfp, hgfp);
      auto rhs = psh_compose(b2, b1);
      detail::compare_maps(r, fam.names[i], lhs, rhs);
    }
  });
}

// f*(p) → (f∘i)*(p) → f*(i*(p)) → f*(p) is the identity.
inline CheckReport check_unit_axiom(PresheafRelPsm const& T, PshValuedFunctor const& f,
                                    TestFamily const& fam) {
  return detail::guarded("unit axiom", [&](CheckReport& r) {
    auto i = T.unit(f.source);
    auto fi = T.compose(f, i);
    auto eta = T.eta_cell(f, fi);
    for (std::size_t k = 0; k < fam.members.size(); ++k) {
      auto const& p = fam.members[k];
      auto fp = T.ext(f, p);
      auto fi_p = T.ext(fi, p);
      auto ip = T.ext(i, p);
      auto f_ip = T.ext(f, ip);
      auto step1 = kan_extend_cell(eta, fp, fi_p);
      auto step2 = T.mu(fi_p, ip, f_ip);
      auto step3 = T.ext_map(f, T.theta(p, ip), f_ip, fp);
      detail::compare_maps(r, fam.names[k], psh_compose(step3, psh_compose(step2, step1)),
                           psh_identity(fp));
    }
  });
}

// (i): μ_{g,f} at y(x) ∘ η_{g∘f} = g*(η_f), per object x.
inline CheckReport check_derived_i(PresheafRelPsm const& T, PshValuedFunctor const& f,
                                   PshValuedFunctor const& g) {
  return detail::guarded("(i) eta of a composite", [&](CheckReport& r) {
    auto const& X = f.source;
    auto gf = T.compose(g, f);
    for (Index x = 0; x < X.num_objects(); ++x) {
      auto yx = yoneda(X, x);
      auto f_yx = T.ext(f, yx);
      auto gf_yx = T.ext(gf, yx);
      auto g_f_yx = T.ext(g, f_yx);
      auto lhs = psh_compose(T.mu(gf_yx, f_yx, g_f_yx), T.eta(gf, x, gf_yx));
      auto rhs = T.ext_map(g, T.eta(f, x, f_yx), gf.obj[x], g_f_yx);
      detail::compare_maps(r, "y(" + X.object(x).repr() + ")", lhs, rhs);
    }
  });
}

// (ii): θ at f*(p) ∘ μ_{i,f} at p = (λ_f)* at p.
inline CheckReport check_derived_ii(PresheafRelPsm const& T, PshValuedFunctor const& f,
                                    TestFamily const& fam) {
  return detail::guarded("(ii) theta against mu", [&](CheckReport& r) {
    auto i = T.unit(f.target);
    auto i_f = T.compose(i, f);
    auto lambda = T.left_unitor(f, i_f);
    for (std::size_t k = 0; k < fam.members.size(); ++k) {
      auto const& p = fam.members[k];
      auto fp = T.ext(f, p);
      auto if_p = T.ext(i_f, p);
      auto i_fp = T.ext(i, fp);
      auto lhs = psh_compose(T.theta(fp, i_fp), T.mu(if_p, fp, i_fp));
      auto rhs = kan_extend_cell(lambda, if_p, fp);
      detail::compare_maps(r, fam.names[k], lhs, rhs);
    }
  });
}

// (iii): θ at y(x) ∘ η_i at x = 1.
inline CheckReport check_derived_iii(PresheafRelPsm const& T, FinCat const& X) {
  return detail::guarded("(iii) theta after eta", [&](CheckReport& r) {
    auto i = T.unit(X);
    for (Index x = 0; x < X.num_objects(); ++x) {
      auto yx = yoneda(X, x);
      auto i_yx = T.ext(i, yx);
      auto lhs = psh_compose(T.theta(yx, i_yx), T.eta(i, x, i_yx));
      detail::compare_maps(r, "y(" + X.object(x).repr() + ")", lhs, psh_identity(i.obj[x]));
    }
  });
}

inline CheckReport check_derived_coherences(PresheafRelPsm const& T, PshValuedFunctor const& f,
                                            PshValuedFunctor const& g, TestFamily const& fam) {
  CheckReport all("derived coherences");
  all.add(check_derived_i(T, f, g));
  all.add(check_derived_ii(T, f, fam));
  all.add(check_derived_iii(T, f.source));
  return all;
}

// ε at p : (f∘i)*(p) → f*(i*(p)) → f*(p), one component per family member.
struct EpsilonCell {
  std::vector<PshMap> components;
  CheckReport report{"epsilon invertible"};
};

inline EpsilonCell epsilon_cell(PresheafRelPsm const& T, PshValuedFunctor const& f,
                                TestFamily const& fam) {
  EpsilonCell e;
  auto i = T.unit(f.source);
  auto fi = T.compose(f, i);
  for (std::size_t k = 0; k < fam.members.size(); ++k) {
    auto const& p = fam.members[k];
    auto fp = T.ext(f, p);
    auto ip = T.ext(i, p);
    auto f_ip = T.ext(f, ip);
    auto fi_p = T.ext(fi, p);
    auto m = psh_compose(T.ext_map(f, T.theta(p, ip), f_ip, fp), T.mu(fi_p, ip, f_ip));
    if (!psh_is_iso(m)) {
      json w{{"member", fam.names[k]}};
      for (Index y = 0; y < m.components.size(); ++y) {
        if (!m.components[y].is_bijective()) {
          w["object"] = f.target.object(y).repr();
          w["source_size"] = m.components[y].dom.size();
          w["target_size"] = m.components[y].cod.size();
          break;
        }
      }
      e.report.fail(w);
    }
    e.components.push_back(std::move(m));
  }
  return e;
}

// All cells A ⇒ B between presheaf-valued functors on a common source. Throws
// BoundExceeded when more than `cap` candidates arise at one object.
inline std::vector<PshCell> all_psh_cells(PshValuedFunctor const& A, PshValuedFunctor const& B,
                                          std::size_t cap = 4096) {
  auto const& X = A.source;
  std::size_t n = X.num_objects();
  std::vector<std::vector<PshMap>> choices(n);
  for (Index x = 0; x < n; ++x) {
    choices[x] = all_psh_maps(A.obj[x], B.obj[x], cap + 1);
    if (choices[x].size() > cap) {
      throw BoundExceeded("too many candidate components at " + X.object(x).repr(),
                          "lower --max-values or use a smaller category");
    }
  }
  std::vector<std::size_t> pick(n, 0);
  std::vector<PshCell> out;
  auto natural_at = [&](Index u) {
    auto lhs = psh_compose(B.mor[u], choices[X.src(u)][pick[X.src(u)]]);
    auto rhs = psh_compose(choices[X.tgt(u)][pick[X.tgt(u)]], A.mor[u]);
    return lhs == rhs;
  };
  std::function<void(Index)> go = [&](Index x) {
    if (x == n) {
      PshCell c{A, B, {}};
      for (Index y = 0; y < n; ++y) {
        c.components.push_back(choices[y][pick[y]]);
      }
      out.push_back(std::move(c));
      if (out.size() > cap) {
        throw BoundExceeded("too many candidate cells", "lower --max-values");
      }
      return;
    }
    for (std::size_t c = 0; c < choices[x].size(); ++c) {
      pick[x] = c;
      bool ok = true;
      for (Index u = 0; u < X.num_morphisms() && ok; ++u) {
        if (X.is_identity(u)) {
          continue;
        }
        Index hi = std::max(X.src(u), X.tgt(u));
        if (hi == x) {
          ok = natural_at(u);
        }
      }
      if (ok) {
        go(x + 1);
      }
    }
  };
  go(0);
  return out;
}

// Cells (f∘i) ⇒ (h∘i) against cells f ⇒ (h∘i), by precomposition with η_f.
inline CheckReport check_left_extension(PresheafRelPsm const& T, PshValuedFunctor const& f,
                                        PshValuedFunctor const& h, std::string const& name) {
  return detail::guarded("left extension against " + name, [&](CheckReport& r) {
    auto i = T.unit(f.source);
    auto fi = T.compose(f, i);
    auto hi = T.compose(h, i);
    auto eta = T.eta_cell(f, fi);
    auto extended = all_psh_cells(fi, hi);
    auto restricted = all_psh_cells(f, hi);
    r.note("competitor set is declared and finite; cells enumerated exhaustively");
    std::vector<char> hit(restricted.size(), 0);
    for (auto const& beta : extended) {
      auto img = psh_cell_vcompose(beta, eta);
      bool found = false;
      for (std::size_t j = 0; j < restricted.size(); ++j) {
        if (!psh_cell_difference(img, restricted[j])) {
          if (hit[j]) {
            r.fail(json{{"problem", "two cells restrict to the same cell"}, {"index", j}});
          }
          hit[j] = 1;
          found = true;
          break;
        }
      }
      if (!found) {
        json w{{"problem", "restriction is not a cell"}};
        auto v = validate_psh_cell(img);
        if (!v.ok()) {
          w["detail"] = v.violations.front();
        }
        r.fail(w);
      }
    }
    for (std::size_t j = 0; j < restricted.size(); ++j) {
      if (!hit[j]) {
        r.fail(json{{"problem", "cell is not a restriction"}, {"index", j}});
        break;
      }
    }
    if (r.passed) {
      r.note("bijection between " + std::to_string(extended.size()) + " and "
             + std::to_string(restricted.size()) + " cells");
    }
  });
}

inline CheckReport check_lax_idempotent(PresheafRelPsm const& T, PshValuedFunctor const& f,
                                        PshValuedFunctor const& g,
                                        std::vector<PshValuedFunctor> const& competitors,
                                        TestFamily const& fam) {
  CheckReport all("lax idempotency");
  all.add(check_derived_i(T, f, g));
  all.add(check_derived_iii(T, f.source));
  all.add(detail::guarded("epsilon invertible", [&](CheckReport& r) {
    auto e = epsilon_cell(T, f, fam);
    r = std::move(e.report);
  }));
  for (std::size_t k = 0; k < competitors.size(); ++k) {
    all.add(check_left_extension(T, f, competitors[k], "competitor " + std::to_string(k)));
  }
  return all;
}

}  // namespace ck
