#include <catch_amalgamated.hpp>

#include "ck/serialize.hpp"
#include "ck/random.hpp"

using namespace ck;

namespace {

json doc(char const* section, json item, std::vector<FinCat> const& cats) {
  json d{{"schema_version", schema_version}, {"categories", json::array()}, {section, json::array({item})}};
  for (auto const& C : cats) {
    d["categories"].push_back(to_json(C));
  }
  return d;
}

}  // namespace

TEST_CASE("labels parse back from their printed form") {
  for (Elem e : {"x"_e, Elem::tuple({"a"_e, Elem::tuple({})}), Elem::tag("k"_e, Elem::tuple({"1"_e, "2"_e})),
                 Elem::atom("with space"), Elem::atom("(")}) {
    CHECK(parse_elem(e.repr()) == e);
  }
  CHECK_THROWS_AS(parse_elem("(a,"), ParseError);
}

TEST_CASE("seed categories round-trip") {
  for (auto const& C : seeds::library()) {
    auto ws = load_workspace(json{{"schema_version", schema_version}, {"categories", {to_json(C)}}});
    REQUIRE(ws.report.ok());
    auto const& D = ws.ws.category(C.name());
    CHECK(D == C);
  }
}

TEST_CASE("presheaves, profunctors, symmetric sequences and monoidal structures round-trip") {
  Rng rng(3);
  auto X = seeds::arrow();
  auto Y = seeds::cyclic(2);
  auto p = random_presheaf(rng, X, 3, "p");
  auto F = tau_inv(random_psh_functor(rng, X, Y, 2, "f"));

  auto j = to_json(p);
  j["name"] = "p";
  auto r = load_workspace(doc("presheaves", j, {X}));
  REQUIRE(r.report.ok());
  CHECK(r.ws.presheaves.at("p").values == p.values);
  CHECK(r.ws.presheaves.at("p").restrict == p.restrict);

  j = to_json(F);
  j["name"] = "F";
  r = load_workspace(doc("profunctors", j, {X, Y}));
  REQUIRE(r.report.ok());
  CHECK(r.ws.profunctors.at("F") == F);

  auto S = random_symseq(rng, free_sym_cat(X, 2), Y, 2);
  j = to_json(S);
  j["name"] = "S";
  r = load_workspace(doc("symseqs", j, {X, Y}));
  REQUIRE(r.report.ok());
  CHECK(r.ws.symseqs.at("S").data == S.data);

  auto M = monoidal::discrete_cyclic(3);
  j = to_json(M);
  j["name"] = "M";
  r = load_workspace(doc("monoidal", j, {M.base}));
  REQUIRE(r.report.ok());
  CHECK(r.ws.monoidal.at("M").base == M.base);
}

TEST_CASE("problems are reported per object") {
  CHECK_THROWS_AS(load_workspace(std::string("{\"categories\": [")), ParseError);
  auto bad = json::parse(R"({"schema_version": 1,
    "categories": [{"name": "C", "objects": ["a"]}],
    "presheaves": [{"name": "p", "base": "C", "values": [["b", ["x"]]]}]})");
  auto r = load_workspace(bad);
  REQUIRE_FALSE(r.report.ok());
  CHECK(r.report.violations[0].rfind("p: ", 0) == 0);
  CHECK(r.ws.has("C"));
}
