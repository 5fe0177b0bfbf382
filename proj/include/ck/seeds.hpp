#pragma once

// The seed library of small categories used by tests, random instances and
// the command-line suites.

#include <string>
#include <vector>

#include "ck/fincat.hpp"

namespace ck::seeds {

inline Elem id_label(Elem const& o) { return Elem::atom("1_" + o.repr()); }

// terminal: one object *, one morphism.
inline FinCat terminal() {
  return FinCat::Builder("1").object("*"_e).identity("*"_e, id_label("*"_e)).build();
}

inline FinCat discrete(std::size_t n) {
  FinCat::Builder b("discrete" + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    Elem o = Elem::atom(static_cast<long long>(i));
    b.object(o).identity(o, id_label(o));
  }
  return b.build();
}

// 0 --u--> 1
inline FinCat arrow() {
  FinCat::Builder b("arrow");
  for (Elem o : {"0"_e, "1"_e}) {
    b.object(o).identity(o, id_label(o));
  }
  b.morphism("u"_e, "0"_e, "1"_e);
  return b.build();
}

// 0 ==f,g==> 1
inline FinCat parallel_pair() {
  FinCat::Builder b("parallel");
  for (Elem o : {"0"_e, "1"_e}) {
    b.object(o).identity(o, id_label(o));
  }
  b.morphism("f"_e, "0"_e, "1"_e).morphism("g"_e, "0"_e, "1"_e);
  return b.build();
}

// The generic equalizer: E --e--> A ==f,g==> B with f∘e = g∘e = d.
inline FinCat fork() {
  FinCat::Builder b("fork");
  for (Elem o : {"E"_e, "A"_e, "B"_e}) {
    b.object(o).identity(o, id_label(o));
  }
  b.morphism("e"_e, "E"_e, "A"_e)
      .morphism("f"_e, "A"_e, "B"_e)
      .morphism("g"_e, "A"_e, "B"_e)
      .morphism("d"_e, "E"_e, "B"_e)
      .compose("f"_e, "e"_e, "d"_e)
      .compose("g"_e, "e"_e, "d"_e);
  return b.build();
}

// a --p--> b, a --q--> c, b --r--> d, c --s--> d, with r∘p = s∘q = t.
inline FinCat square() {
  FinCat::Builder b("square");
  for (Elem o : {"a"_e, "b"_e, "c"_e, "d"_e}) {
    b.object(o).identity(o, id_label(o));
  }
  b.morphism("p"_e, "a"_e, "b"_e)
      .morphism("q"_e, "a"_e, "c"_e)
      .morphism("r"_e, "b"_e, "d"_e)
      .morphism("s"_e, "c"_e, "d"_e)
      .morphism("t"_e, "a"_e, "d"_e)
      .compose("r"_e, "p"_e, "t"_e)
      .compose("s"_e, "q"_e, "t"_e);
  return b.build();
}

// The poset 0 < 1 < ... < n-1; the morphism i → j is labelled "i<=j".
inline FinCat chain(std::size_t n) {
  FinCat::Builder b("chain" + std::to_string(n));
  auto lbl = [](std::size_t i, std::size_t j) {
    return Elem::atom(std::to_string(i) + "<=" + std::to_string(j));
  };
  for (std::size_t i = 0; i < n; ++i) {
    Elem o = Elem::atom(static_cast<long long>(i));
    b.object(o).identity(o, lbl(i, i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      b.morphism(lbl(i, j), Elem::atom(static_cast<long long>(i)),
                 Elem::atom(static_cast<long long>(j)));
    }
  }
  b.fill_composition([](Elem const& g, Elem const& f) {
    auto const& gs = g.name();
    auto const& fs = f.name();
    return Elem::atom(fs.substr(0, fs.find('<')) + "<=" + gs.substr(gs.find('=') + 1));
  });
  return b.build();
}

// One-object category from a monoid table. `mul(i, j)` is the product of
// elements i and j (i applied after j); element 0 must be the unit.
template <typename Mul>
FinCat monoid(std::string name, std::vector<std::string> const& elems, Mul&& mul) {
  FinCat::Builder b(std::move(name));
  b.object("*"_e).identity("*"_e, Elem::atom(elems[0]));
  for (std::size_t i = 1; i < elems.size(); ++i) {
    b.morphism(Elem::atom(elems[i]), "*"_e, "*"_e);
  }
  for (std::size_t i = 1; i < elems.size(); ++i) {
    for (std::size_t j = 1; j < elems.size(); ++j) {
      b.compose(Elem::atom(elems[i]), Elem::atom(elems[j]), Elem::atom(elems[mul(i, j)]));
    }
  }
  return b.build();
}

// Z/n with elements z0 (unit), z1, ...
inline FinCat cyclic(std::size_t n) {
  std::vector<std::string> el;
  for (std::size_t i = 0; i < n; ++i) {
    el.push_back("z" + std::to_string(i));
  }
  return monoid("Z" + std::to_string(n), el, [n](std::size_t i, std::size_t j) { return (i + j) % n; });
}

// {1, a, b} with xy = x for x ≠ 1: a noncommutative monoid.
inline FinCat left_zero_monoid() {
  return monoid("L2", {"1", "a", "b"}, [](std::size_t i, std::size_t) { return i; });
}

// {1, 0} with 0 absorbing.
inline FinCat zero_monoid() {
  return monoid("Z0", {"1", "0"}, [](std::size_t, std::size_t) { return std::size_t{1}; });
}

// Every seed category, in a fixed order.
inline std::vector<FinCat> library() {
  return {terminal(),   discrete(1),      discrete(2), discrete(3), arrow(),
          parallel_pair(), fork(),        square(),    chain(2),    chain(3),
          cyclic(2),    cyclic(3),        cyclic(4),   cyclic(6),   left_zero_monoid(),
          zero_monoid()};
}

// Seeds with at most `max_objects` objects and at most 3 morphisms between
// any two objects; used where nested coends would otherwise grow quickly.
inline std::vector<FinCat> small_library(std::size_t max_objects) {
  std::vector<FinCat> out;
  for (auto const& c : library()) {
    if (c.num_objects() <= max_objects && c.num_morphisms() <= 6) {
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace ck::seeds
