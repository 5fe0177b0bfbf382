#include <catch_amalgamated.hpp>

#include "ck/day.hpp"
#include "ck/random.hpp"

using namespace ck;

namespace {

// |(F1 ⊗ F2)(b)| through the generic coend of
// ((a1,a2),(b1,b2)) ↦ F1(a1) × F2(a2) × A[b, b1⊗b2].
std::size_t coend_oracle(StrictMonoidalFinCat const& M, Presheaf const& F1, Presheaf const& F2,
                         Index b) {
  auto const& A = M.base;
  auto const& S = M.square;
  auto split = [&](Index s) {
    auto const& o = S.object(s);
    return std::pair{A.object_index(o[0]), A.object_index(o[1])};
  };
  auto H = Bifunctor::tabulate(
      S, S,
      [&](Index s, Index t) {
        auto [a1, a2] = split(s);
        auto [b1, b2] = split(t);
        std::vector<Elem> v;
        for (auto const& c1 : F1.values[a1]) {
          for (auto const& c2 : F2.values[a2]) {
            for (auto const& h : A.hom_set(b, M.obj(b1, b2))) {
              v.push_back(Elem::tuple({c1, c2, h}));
            }
          }
        }
        return FinSet(v);
      },
      [&](Index g, Index, Elem const& e) {
        Index u1 = A.morphism_index(S.label(g)[0]);
        Index u2 = A.morphism_index(S.label(g)[1]);
        return Elem::tuple({F1.restrict[u1](e[0]), F2.restrict[u2](e[1]), e[2]});
      },
      [&](Index, Index f, Elem const& e) {
        Index v1 = A.morphism_index(S.label(f)[0]);
        Index v2 = A.morphism_index(S.label(f)[1]);
        return Elem::tuple({e[0], e[1], A.compose_labels(A.label(M.mor(v1, v2)), e[2])});
      });
  return coend(H).value().size();
}

std::vector<Presheaf> sample_presheaves(Rng& rng, FinCat const& A, std::size_t count) {
  std::vector<Presheaf> out;
  for (Index a = 0; a < A.num_objects(); ++a) {
    out.push_back(yoneda(A, a));
  }
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(random_presheaf(rng, A, 2, "p" + std::to_string(k) + "_"));
  }
  return out;
}

}  // namespace

TEST_CASE("monoidal seeds are valid strict monoidal categories") {
  for (auto const& M : monoidal::library()) {
    INFO(M.name);
    auto v = validate_monoidal(M);
    INFO((v.ok() ? std::string() : v.violations.front()));
    CHECK(v.ok());
  }
  CHECK_FALSE(monoidal::discrete_left_zero().symmetry.has_value());
}

TEST_CASE("a broken symmetry is rejected") {
  auto M = monoidal::one_object_z2();
  // σ = z1 is natural and self-inverse but fails the hexagon.
  (*M.symmetry)[0] = M.base.morphism_index("z1"_e);
  auto v = validate_monoidal(M);
  REQUIRE_FALSE(v.ok());
  CHECK(v.violations.front().find("hexagon") != std::string::npos);
}

TEST_CASE("convolution over the terminal category is the product") {
  auto M = monoidal::terminal();
  auto A = M.base;
  for (std::size_t m = 0; m <= 3; ++m) {
    for (std::size_t n = 0; n <= 3; ++n) {
      auto p = psh_constant(A, detail::sized_set("a", m));
      auto q = psh_constant(A, detail::sized_set("b", n));
      CHECK(day_convolve(M, p, q).values[0].size() == m * n);
    }
  }
}

TEST_CASE("convolution over a discrete monoid is graded convolution") {
  Rng rng(5);
  std::vector<std::tuple<StrictMonoidalFinCat, std::vector<std::string>,
                         std::function<std::size_t(std::size_t, std::size_t)>>>
      cases{{monoidal::discrete_cyclic(2), {"g0", "g1"}, [](auto i, auto j) { return (i + j) % 2; }},
            {monoidal::discrete_cyclic(3), {"g0", "g1", "g2"}, [](auto i, auto j) { return (i + j) % 3; }},
            {monoidal::discrete_left_zero(), {"1", "a", "b"}, [](auto i, auto j) { return i == 0 ? j : i; }}};
  for (auto const& [M, names, mul] : cases) {
    auto const& A = M.base;
    auto at = [&](std::size_t i) { return A.object_index(Elem::atom(names[i])); };
    for (int trial = 0; trial < 10; ++trial) {
      auto p = random_presheaf(rng, A, 3, "p");
      auto q = random_presheaf(rng, A, 3, "q");
      auto pq = day_convolve(M, p, q);
      for (std::size_t m = 0; m < names.size(); ++m) {
        std::size_t sum = 0;
        for (std::size_t i = 0; i < names.size(); ++i) {
          for (std::size_t j = 0; j < names.size(); ++j) {
            if (mul(i, j) == m) {
              sum += p.values[at(i)].size() * q.values[at(j)].size();
            }
          }
        }
        CHECK(pq.values[at(m)].size() == sum);
      }
    }
  }
}

TEST_CASE("empty factor gives the empty presheaf") {
  for (auto const& M : monoidal::library()) {
    auto z = psh_initial(M.base);
    auto y = yoneda(M.base, M.unit);
    CHECK(day_convolve(M, z, y).total_size() == 0);
    CHECK(day_convolve(M, y, z).total_size() == 0);
  }
}

TEST_CASE("day unit is the representable at the unit object") {
  auto M = monoidal::discrete_cyclic(3);
  auto I = day_unit(M);
  for (Index a = 0; a < M.size(); ++a) {
    CHECK(I.values[a].size() == (a == M.unit ? 1u : 0u));
  }
  CHECK(day_unit(monoidal::terminal()).values[0].size() == 1);
}

TEST_CASE("single coend agrees with the generic coend on the square") {
  Rng rng(7);
  for (auto const& M : monoidal::library()) {
    INFO(M.name);
    auto ps = sample_presheaves(rng, M.base, 2);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      auto const& p = ps[i];
      auto const& q = ps[(i + 1) % ps.size()];
      auto pq = day_convolution(M, p, q);
      CHECK(validate_presheaf(pq.value).ok());
      for (Index b = 0; b < M.size(); ++b) {
        CHECK(pq.value.values[b].size() == coend_oracle(M, p, q, b));
      }
    }
  }
}

TEST_CASE("Yoneda is strong monoidal") {
  for (auto const& M : monoidal::library()) {
    for (Index a1 = 0; a1 < M.size(); ++a1) {
      for (Index a2 = 0; a2 < M.size(); ++a2) {
        auto r = check_yoneda_strong_monoidal(M, a1, a2);
        INFO(M.name << " " << to_json(r).dump());
        CHECK(r.passed);
      }
    }
  }
}

TEST_CASE("unit, associativity, pentagon and symmetry of convolution") {
  Rng rng(9);
  for (auto const& M : monoidal::library()) {
    INFO(M.name);
    auto ps = sample_presheaves(rng, M.base, 3);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      auto const& p = ps[i];
      auto const& q = ps[(i + 1) % ps.size()];
      auto const& r = ps[(i + 2) % ps.size()];
      auto const& s = ps[(i + 3) % ps.size()];
      auto u = check_convolution_unit(M, p);
      INFO(to_json(u).dump());
      CHECK(u.passed);
      auto a = check_convolution_assoc(M, p, q, r, s);
      INFO(to_json(a).dump());
      CHECK(a.passed);
      CHECK(a.children.size() == 2);
      auto y = check_convolution_symmetry(M, p, q);
      CHECK(y.passed);
      CHECK(y.applicable == M.symmetry.has_value());
    }
  }
}

TEST_CASE("symmetry over a commutative discrete monoid swaps tags") {
  auto M = monoidal::discrete_cyclic(2);
  Rng rng(10);
  auto p = random_presheaf(rng, M.base, 2, "p");
  auto q = random_presheaf(rng, M.base, 2, "q");
  auto d12 = day_convolution(M, p, q);
  auto d21 = day_convolution(M, q, p);
  auto s = day_symmetry(M, d12, d21.value);
  for (Index b = 0; b < M.size(); ++b) {
    for (auto const& t : d12.value.values[b]) {
      auto img = s.components[b](t);
      CHECK(img.key()[0] == t.key()[1]);
      CHECK(img.value()[0] == t.value()[1]);
      CHECK(img.value()[1] == t.value()[0]);
    }
  }
}

TEST_CASE("extensions of strong monoidal functors are strong monoidal") {
  Rng rng(12);
  struct Case {
    StrictMonoidalFinCat A, B;
    Functor G;
  };
  std::vector<Case> cases;
  for (auto const& M : monoidal::library()) {
    cases.push_back({M, M, identity_functor(M.base)});
    auto T = monoidal::terminal();
    cases.push_back({M, T, constant_functor(M.base, T.base, T.base.object(0))});
  }
  {
    // The trivial monoid map L2 → Z2.
    auto A = monoidal::discrete_left_zero();
    auto B = monoidal::discrete_cyclic(2);
    cases.push_back({A, B, constant_functor(A.base, B.base, B.base.object(B.unit))});
  }
  for (auto const& c : cases) {
    INFO(c.A.name << " -> " << c.B.name);
    REQUIRE(validate_strict_monoidal_functor(c.A, c.B, c.G).ok());
    auto S = yoneda_along(c.A, c.B, c.G);
    auto ps = sample_presheaves(rng, c.A.base, 1);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      auto r = check_kan_monoidal(c.A, c.B, S, ps[i], ps[(i + 1) % ps.size()]);
      INFO(to_json(r).dump());
      CHECK(r.passed);
    }
  }
}
