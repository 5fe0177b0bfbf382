#include <catch_amalgamated.hpp>

#include "ck/random.hpp"
#include "ck/seeds.hpp"
#include "ck/set_functors.hpp"

using namespace ck;

TEST_CASE("seed library is valid") {
  for (auto const& c : seeds::library()) {
    INFO(c.name());
    CHECK(validate_category(c).ok());
  }
}

TEST_CASE("validate_category names a broken entry") {
  CHECK(validate_category(seeds::terminal()).ok());
  CHECK(validate_category(seeds::cyclic(2)).ok());
  // fork with f∘e = d but g∘e = e is not closed
  auto b = FinCat::Builder("broken");
  for (Elem o : {"E"_e, "A"_e, "B"_e}) {
    b.object(o).identity(o, seeds::id_label(o));
  }
  b.morphism("e"_e, "E"_e, "A"_e)
      .morphism("f"_e, "A"_e, "B"_e)
      .morphism("g"_e, "A"_e, "B"_e)
      .morphism("d"_e, "E"_e, "B"_e)
      .compose("f"_e, "e"_e, "d"_e)
      .compose("g"_e, "e"_e, "e"_e);
  auto r = validate_category(b.build());
  REQUIRE_FALSE(r.ok());
  bool named = false;
  for (auto const& v : r.violations) {
    named = named || (v.find("g") != std::string::npos && v.find("e") != std::string::npos);
  }
  CHECK(named);
}

TEST_CASE("opposite is an involution and reverses homs") {
  for (auto const& c : seeds::library()) {
    auto op = opposite(c);
    CHECK(validate_category(op).ok());
    CHECK(opposite(op) == c);
    for (Index a = 0; a < c.num_objects(); ++a) {
      for (Index b = 0; b < c.num_objects(); ++b) {
        CHECK(op.hom_set(a, b) == c.hom_set(b, a));
      }
    }
  }
  auto a = seeds::arrow();
  CHECK(opposite(a).hom(1, 0).size() == 1);
  CHECK(opposite(a).hom(0, 1).empty());
}

TEST_CASE("products multiply counts and commute with opposite") {
  auto p = product(seeds::discrete(2), seeds::discrete(3));
  CHECK(p.num_objects() == 6);
  CHECK(p.num_morphisms() == 6);
  CHECK(product(seeds::arrow(), seeds::arrow()).num_morphisms() == 9);
  CHECK(validate_category(product(seeds::fork(), seeds::arrow())).ok());
  auto c = seeds::fork();
  auto d = seeds::cyclic(3);
  CHECK(opposite(product(c, d)) == product(opposite(c), opposite(d)));
  auto t = product(seeds::square(), seeds::terminal());
  CHECK(t.num_objects() == 4);
  CHECK(t.num_morphisms() == seeds::square().num_morphisms());
}

TEST_CASE("functor composition") {
  auto X = seeds::fork();
  auto id = identity_functor(X);
  CHECK(validate_functor(id).ok());
  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    auto F = random_functor(rng, X, seeds::chain(3));
    auto G = random_functor(rng, seeds::chain(3), seeds::square());
    REQUIRE(F);
    REQUIRE(G);
    CHECK(functor_compose(identity_functor(seeds::chain(3)), *F) == *F);
    CHECK(functor_compose(*F, id) == *F);
    CHECK(validate_functor(functor_compose(*G, *F)).ok());
  }
  auto k1 = constant_functor(X, seeds::arrow(), "1"_e);
  auto k2 = constant_functor(seeds::arrow(), seeds::chain(2), "0"_e);
  auto k = functor_compose(k2, k1);
  for (Index o : k.obj) {
    CHECK(k.target.object(o) == "0"_e);
  }
}

TEST_CASE("two-cell algebra") {
  FinSet s{"a"_e, "b"_e, "c"_e};
  FinFn swap = FinFn::from_pairs(s, s, {{"a"_e, "b"_e}, {"b"_e, "a"_e}, {"c"_e, "c"_e}});
  TwoCell alpha{{"x"_e, "y"_e}, {swap, FinFn::identity(s)}};
  auto idc = twocell_identity({"x"_e, "y"_e}, {s, s});
  CHECK(twocell_invert(idc) == idc);
  CHECK(twocell_vcompose(twocell_invert(alpha), alpha) == idc);
  CHECK(twocell_vcompose(idc, alpha) == alpha);

  // whisker a 2-component cell against a 3-object functor
  auto D2 = FinCat::Builder("D2")
                .object("x"_e).identity("x"_e, "1x"_e)
                .object("y"_e).identity("y"_e, "1y"_e)
                .build();
  auto F = Functor::tabulate(
      seeds::discrete(3), D2,
      [](Elem const& o) { return o == "1"_e ? "y"_e : "x"_e; },
      [](Elem const& m) { return m == seeds::id_label("1"_e) ? "1y"_e : "1x"_e; });
  auto w = twocell_whisker_right(alpha, F);
  REQUIRE(w.components.size() == 3);
  CHECK(w.components[0] == swap);
  CHECK(w.components[1] == FinFn::identity(s));
  CHECK(w.components[2] == swap);

  TwoCell bad{{"x"_e}, {FinFn::from_pairs(s, s, {{"a"_e, "a"_e}, {"b"_e, "a"_e}, {"c"_e, "c"_e}})}};
  CHECK_THROWS_AS(twocell_invert(bad), NonInvertible);
}

TEST_CASE("vertical composition is associative on random cells") {
  Rng rng(3);
  FinSet s = FinSet::range(3);
  auto rnd = [&] {
    FinFn f{s, s, {}};
    for (int i = 0; i < 3; ++i) {
      f.map.push_back(static_cast<Index>(rng.below(3)));
    }
    return f;
  };
  for (int i = 0; i < 50; ++i) {
    TwoCell a{{"p"_e, "q"_e}, {rnd(), rnd()}};
    TwoCell b{{"p"_e, "q"_e}, {rnd(), rnd()}};
    TwoCell c{{"p"_e, "q"_e}, {rnd(), rnd()}};
    CHECK(twocell_vcompose(c, twocell_vcompose(b, a)) == twocell_vcompose(twocell_vcompose(c, b), a));
  }
}

TEST_CASE("random presheaves are valid") {
  Rng rng(11);
  for (auto const& c : seeds::library()) {
    for (int i = 0; i < 5; ++i) {
      auto p = random_presheaf(rng, c, 3);
      INFO(c.name());
      CHECK(validate_presheaf(p).ok());
    }
  }
}
