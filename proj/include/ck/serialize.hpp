#pragma once

// JSON documents for the core objects. Labels are written in their printed
// form and read back with parse_elem.
//
//   {"schema_version": 1,
//    "categories": [{"name": "arrow", "objects": ["0", "1"],
//                    "morphisms": [["f", "0", "1"]],
//                    "identities": [["0", "id0"], ["1", "id1"]],
//                    "composition": []}],
//    "presheaves": [{"name": "p", "base": "arrow",
//                    "values": [["0", ["a", "b"]], ["1", ["c"]]],
//                    "restrict": [["f", [["c", "a"]]]]}]}
//
// Other sections: "functors", "profunctors", "monoidal", "symseqs".
// Identity actions may be omitted.

#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ck/day.hpp"
#include "ck/symmon.hpp"

namespace ck {

inline constexpr int schema_version = 1;

namespace detail {

class ElemParser {
 public:
  explicit ElemParser(std::string_view s) : s_(s) {}

  Elem parse() {
    Elem e = item();
    if (pos_ != s_.size()) {
      fail("trailing characters");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(std::string const& what) const {
    throw ParseError("label '" + std::string(s_) + "': " + what + " at offset " + std::to_string(pos_));
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void expect(char c) {
    if (peek() != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  Elem item() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      std::vector<Elem> items;
      if (peek() != ')') {
        items.push_back(item());
        while (peek() == ',') {
          ++pos_;
          items.push_back(item());
        }
      }
      expect(')');
      return Elem::tuple(std::move(items));
    }
    if (c == '<') {
      ++pos_;
      Elem k = item();
      expect('|');
      Elem v = item();
      expect('>');
      return Elem::tag(std::move(k), std::move(v));
    }
    if (c == '"') {
      ++pos_;
      std::string name;
      while (peek() != '"') {
        if (pos_ >= s_.size()) {
          fail("unterminated quote");
        }
        if (peek() == '\\') {
          ++pos_;
        }
        name += s_[pos_++];
      }
      ++pos_;
      return Elem::atom(name);
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::string_view("()<>|,\"\\ \t\n").find(s_[pos_]) == std::string_view::npos) {
      ++pos_;
    }
    if (pos_ == start) {
      fail("expected a label");
    }
    return Elem::atom(s_.substr(start, pos_ - start));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Elem parse_elem(std::string_view s) { return detail::ElemParser(s).parse(); }

namespace detail {

inline Elem elem_of(json const& j) {
  if (!j.is_string()) {
    throw ParseError("expected a label string, got " + j.dump());
  }
  return parse_elem(j.get<std::string>());
}

inline json const& field(json const& j, char const* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

inline json const& array_field(json const& j, char const* key) {
  auto const& a = field(j, key);
  if (!a.is_array()) {
    throw ParseError(std::string("field '") + key + "' is not an array");
  }
  return a;
}

// An absent array field reads as empty.
inline json const& optional_array(json const& j, char const* key) {
  static json const empty = json::array();
  return j.contains(key) ? array_field(j, key) : empty;
}

inline FinSet set_of(json const& j) {
  if (!j.is_array()) {
    throw ParseError("expected an array of labels");
  }
  std::vector<Elem> v;
  for (auto const& e : j) {
    v.push_back(elem_of(e));
  }
  return FinSet(std::move(v));
}

inline json set_json(FinSet const& s) {
  json a = json::array();
  for (auto const& e : s) {
    a.push_back(e.repr());
  }
  return a;
}

inline json fn_json(FinFn const& f) {
  json a = json::array();
  for (Index i = 0; i < f.dom.size(); ++i) {
    a.push_back({f.dom[i].repr(), f.cod[f.map[i]].repr()});
  }
  return a;
}

inline FinFn fn_of(json const& j, FinSet const& dom, FinSet const& cod) {
  std::map<Elem, Elem> m;
  if (!j.is_array()) {
    throw ParseError("expected an array of [element, image] pairs");
  }
  for (auto const& p : j) {
    if (!p.is_array() || p.size() != 2) {
      throw ParseError("expected an [element, image] pair");
    }
    m[elem_of(p[0])] = elem_of(p[1]);
  }
  return FinFn::tabulate(dom, cod, [&](Elem const& e) {
    auto it = m.find(e);
    if (it == m.end()) {
      throw InvalidData("no image given for " + e.repr());
    }
    return it->second;
  });
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline json to_json(FinCat const& C) {
  json objs = json::array(), mors = json::array(), ids = json::array(), comp = json::array();
  for (auto const& o : C.objects()) {
    objs.push_back(o.repr());
  }
  for (Index m = 0; m < C.num_morphisms(); ++m) {
    if (!C.is_identity(m)) {
      mors.push_back({C.label(m).repr(), C.object(C.src(m)).repr(), C.object(C.tgt(m)).repr()});
    }
  }
  for (Index o = 0; o < C.num_objects(); ++o) {
    ids.push_back({C.object(o).repr(), C.label(C.identity(o)).repr()});
  }
  // Sorted for stable output; unit laws are implied.
  std::vector<std::array<std::string, 3>> rows;
  for (auto const& [k, h] : C.composition_table()) {
    Index g = static_cast<Index>(k / C.num_morphisms());
    Index f = static_cast<Index>(k % C.num_morphisms());
    if (!C.is_identity(g) && !C.is_identity(f)) {
      rows.push_back({C.label(g).repr(), C.label(f).repr(), C.label(h).repr()});
    }
  }
  std::sort(rows.begin(), rows.end());
  for (auto const& r : rows) {
    comp.push_back({r[0], r[1], r[2]});
  }
  return {{"name", C.name()}, {"objects", objs}, {"morphisms", mors}, {"identities", ids}, {"composition", comp}};
}

// `morphisms` and `composition` may be omitted. Without `identities`, each
// object gets the identity 1_<object>.
inline FinCat fincat_from_json(json const& j) {
  FinCat::Builder b(detail::field(j, "name").get<std::string>());
  for (auto const& o : detail::array_field(j, "objects")) {
    b.object(detail::elem_of(o));
    if (!j.contains("identities")) {
      b.identity(detail::elem_of(o), seeds::id_label(detail::elem_of(o)));
    }
  }
  for (auto const& m : detail::optional_array(j, "morphisms")) {
    if (!m.is_array() || m.size() != 3) {
      throw ParseError("a morphism is [label, source, target]");
    }
    b.morphism(detail::elem_of(m[0]), detail::elem_of(m[1]), detail::elem_of(m[2]));
  }
  for (auto const& i : detail::optional_array(j, "identities")) {
    if (!i.is_array() || i.size() != 2) {
      throw ParseError("an identity is [object, label]");
    }
    b.identity(detail::elem_of(i[0]), detail::elem_of(i[1]));
  }
  for (auto const& c : detail::optional_array(j, "composition")) {
    if (!c.is_array() || c.size() != 3) {
      throw ParseError("a composition entry is [g, f, g∘f]");
    }
    b.compose(detail::elem_of(c[0]), detail::elem_of(c[1]), detail::elem_of(c[2]));
  }
  return b.build();
}

inline json to_json(Functor const& F) {
  json objs = json::array(), mors = json::array();
  for (Index o = 0; o < F.source.num_objects(); ++o) {
    objs.push_back({F.source.object(o).repr(), F.target.object(F.obj[o]).repr()});
  }
  for (Index m = 0; m < F.source.num_morphisms(); ++m) {
    mors.push_back({F.source.label(m).repr(), F.target.label(F.mor[m]).repr()});
  }
  return {{"source", F.source.name()}, {"target", F.target.name()}, {"objects", objs}, {"morphisms", mors}};
}

inline json to_json(Presheaf const& p) {
  auto const& X = p.base;
  json vals = json::array(), res = json::array();
  for (Index o = 0; o < X.num_objects(); ++o) {
    vals.push_back({X.object(o).repr(), detail::set_json(p.values[o])});
  }
  for (Index m = 0; m < X.num_morphisms(); ++m) {
    if (!X.is_identity(m)) {
      res.push_back({X.label(m).repr(), detail::fn_json(p.restrict[m])});
    }
  }
  return {{"base", X.name()}, {"values", vals}, {"restrict", res}};
}

inline Presheaf presheaf_from_json(json const& j, FinCat const& X) {
  Presheaf p{X, std::vector<FinSet>(X.num_objects()), {}};
  for (auto const& v : detail::array_field(j, "values")) {
    p.values[X.object_index(detail::elem_of(v.at(0)))] = detail::set_of(v.at(1));
  }
  std::map<Index, json> given;
  for (auto const& r : detail::optional_array(j, "restrict")) {
    given[X.morphism_index(detail::elem_of(r.at(0)))] = r.at(1);
  }
  for (Index m = 0; m < X.num_morphisms(); ++m) {
    auto const& dom = p.values[X.tgt(m)];
    auto const& cod = p.values[X.src(m)];
    if (X.is_identity(m)) {
      p.restrict.push_back(FinFn::identity(dom));
    } else if (given.count(m)) {
      p.restrict.push_back(detail::fn_of(given[m], dom, cod));
    } else {
      throw InvalidData("no restriction given along " + X.label(m).repr());
    }
  }
  return p;
}

namespace detail {

// values [a*|B|+b] with a ∈ A (contravariant), b ∈ B (covariant).
inline json bifunctor_json(Bifunctor const& H, bool sparse) {
  auto const& A = H.contra;
  auto const& B = H.co;
  json vals = json::array(), left = json::array(), right = json::array();
  for (Index a = 0; a < A.num_objects(); ++a) {
    for (Index b = 0; b < B.num_objects(); ++b) {
      if (!sparse || !H.at(a, b).empty()) {
        vals.push_back({A.object(a).repr(), B.object(b).repr(), set_json(H.at(a, b))});
      }
    }
  }
  for (Index g = 0; g < A.num_morphisms(); ++g) {
    for (Index b = 0; b < B.num_objects(); ++b) {
      auto const& f = H.left_action(g, b);
      if (!A.is_identity(g) && !f.dom.empty()) {
        left.push_back({A.label(g).repr(), B.object(b).repr(), fn_json(f)});
      }
    }
  }
  for (Index a = 0; a < A.num_objects(); ++a) {
    for (Index m = 0; m < B.num_morphisms(); ++m) {
      auto const& f = H.right_action(a, m);
      if (!B.is_identity(m) && !f.dom.empty()) {
        right.push_back({A.object(a).repr(), B.label(m).repr(), fn_json(f)});
      }
    }
  }
  return {{"values", vals}, {"left", left}, {"right", right}};
}

inline Bifunctor bifunctor_from_json(json const& j, FinCat const& A, FinCat const& B) {
  Bifunctor H{A, B, std::vector<FinSet>(A.num_objects() * B.num_objects()), {}, {}};
  for (auto const& v : array_field(j, "values")) {
    Index a = A.object_index(elem_of(v.at(0)));
    Index b = B.object_index(elem_of(v.at(1)));
    H.values[a * B.num_objects() + b] = set_of(v.at(2));
  }
  std::map<std::pair<Index, Index>, json> lg, rg;
  for (auto const& v : optional_array(j, "left")) {
    lg[{A.morphism_index(elem_of(v.at(0))), B.object_index(elem_of(v.at(1)))}] = v.at(2);
  }
  for (auto const& v : optional_array(j, "right")) {
    rg[{A.object_index(elem_of(v.at(0))), B.morphism_index(elem_of(v.at(1)))}] = v.at(2);
  }
  for (Index g = 0; g < A.num_morphisms(); ++g) {
    for (Index b = 0; b < B.num_objects(); ++b) {
      auto const& dom = H.at(A.tgt(g), b);
      auto const& cod = H.at(A.src(g), b);
      auto it = lg.find({g, b});
      if (A.is_identity(g) || (it == lg.end() && dom.empty())) {
        H.left.push_back(A.is_identity(g) ? FinFn::identity(dom) : FinFn{dom, cod, {}});
      } else if (it == lg.end()) {
        throw InvalidData("no action given along " + A.label(g).repr());
      } else {
        H.left.push_back(fn_of(it->second, dom, cod));
      }
    }
  }
  for (Index a = 0; a < A.num_objects(); ++a) {
    for (Index m = 0; m < B.num_morphisms(); ++m) {
      auto const& dom = H.at(a, B.src(m));
      auto const& cod = H.at(a, B.tgt(m));
      auto it = rg.find({a, m});
      if (B.is_identity(m) || (it == rg.end() && dom.empty())) {
        H.right.push_back(B.is_identity(m) ? FinFn::identity(dom) : FinFn{dom, cod, {}});
      } else if (it == rg.end()) {
        throw InvalidData("no action given along " + B.label(m).repr());
      } else {
        H.right.push_back(fn_of(it->second, dom, cod));
      }
    }
  }
  return H;
}

}  // namespace detail

// A profunctor X ⇸ Y: values at (y, x).
inline json to_json(Profunctor const& F) {
  json j = detail::bifunctor_json(F, false);
  j["from"] = F.co.name();
  j["to"] = F.contra.name();
  return j;
}

inline json to_json(SymSeq const& F) {
  json j = detail::bifunctor_json(F.data, true);
  j["source"] = F.source.base.name();
  j["target"] = F.target.name();
  j["max_arity"] = F.source.max_len;
  if (F.bounded_search) {
    j["bounded_search"] = true;
  }
  return j;
}

inline SymSeq symseq_from_json(json const& j, FinCat const& X, FinCat const& Y) {
  auto n = detail::field(j, "max_arity").get<std::size_t>();
  auto S = free_sym_cat(X, n);
  auto data = detail::bifunctor_from_json(j, S.cat, Y);
  return SymSeq{S, Y, std::move(data), j.value("bounded_search", false)};
}

inline json to_json(StrictMonoidalFinCat const& M) {
  auto const& A = M.base;
  json tobj = json::array(), tmor = json::array();
  for (Index a = 0; a < A.num_objects(); ++a) {
    for (Index b = 0; b < A.num_objects(); ++b) {
      tobj.push_back({A.object(a).repr(), A.object(b).repr(), A.object(M.obj(a, b)).repr()});
    }
  }
  for (Index f = 0; f < A.num_morphisms(); ++f) {
    for (Index g = 0; g < A.num_morphisms(); ++g) {
      tmor.push_back({A.label(f).repr(), A.label(g).repr(), A.label(M.mor(f, g)).repr()});
    }
  }
  json j{{"base", A.name()}, {"tensor_objects", tobj}, {"tensor_morphisms", tmor},
         {"unit", A.object(M.unit).repr()}};
  if (M.symmetry) {
    json s = json::array();
    for (Index a = 0; a < A.num_objects(); ++a) {
      for (Index b = 0; b < A.num_objects(); ++b) {
        s.push_back({A.object(a).repr(), A.object(b).repr(), A.label(M.sigma(a, b)).repr()});
      }
    }
    j["symmetry"] = s;
  }
  return j;
}

inline StrictMonoidalFinCat monoidal_from_json(std::string name, json const& j, FinCat const& A) {
  std::map<std::pair<Index, Index>, Index> to, tm, sg;
  for (auto const& r : detail::array_field(j, "tensor_objects")) {
    to[{A.object_index(detail::elem_of(r.at(0))), A.object_index(detail::elem_of(r.at(1)))}] =
        A.object_index(detail::elem_of(r.at(2)));
  }
  for (auto const& r : detail::array_field(j, "tensor_morphisms")) {
    tm[{A.morphism_index(detail::elem_of(r.at(0))), A.morphism_index(detail::elem_of(r.at(1)))}] =
        A.morphism_index(detail::elem_of(r.at(2)));
  }
  bool symmetric = j.contains("symmetry");
  if (symmetric) {
    for (auto const& r : detail::array_field(j, "symmetry")) {
      sg[{A.object_index(detail::elem_of(r.at(0))), A.object_index(detail::elem_of(r.at(1)))}] =
          A.morphism_index(detail::elem_of(r.at(2)));
    }
  }
  auto look = [](auto const& m, Index a, Index b, char const* what) {
    auto it = m.find({a, b});
    if (it == m.end()) {
      throw InvalidData(std::string("incomplete ") + what + " table");
    }
    return it->second;
  };
  std::function<Index(Index, Index)> sigma;
  if (symmetric) {
    sigma = [&](Index a, Index b) { return look(sg, a, b, "symmetry"); };
  }
  return make_monoidal(
      std::move(name), A, [&](Index a, Index b) { return look(to, a, b, "tensor"); },
      [&](Index f, Index g) { return look(tm, f, g, "tensor"); },
      A.object_index(detail::elem_of(detail::field(j, "unit"))), sigma);
}

// ---------------------------------------------------------------------------
// Workspace: a named registry loaded from one document.

struct Workspace {
  std::map<std::string, FinCat> categories;
  std::map<std::string, Functor> functors;
  std::map<std::string, Presheaf> presheaves;
  std::map<std::string, Profunctor> profunctors;
  std::map<std::string, StrictMonoidalFinCat> monoidal;
  std::map<std::string, SymSeq> symseqs;

  template <typename M>
  static auto const& find(M const& m, std::string const& n, char const* what) {
    auto it = m.find(n);
    if (it == m.end()) {
      throw InvalidData(std::string("no ") + what + " named '" + n + "'");
    }
    return it->second;
  }

  FinCat const& category(std::string const& n) const { return find(categories, n, "category"); }

  bool has(std::string const& n) const {
    return categories.count(n) || functors.count(n) || presheaves.count(n) || profunctors.count(n)
           || monoidal.count(n) || symseqs.count(n);
  }
};

struct LoadResult {
  Workspace ws;
  ValidationReport report;
};

// Throws ParseError on malformed documents. Objects that fail validation are
// reported and left out.
inline LoadResult load_workspace(json const& doc) {
  if (!doc.is_object()) {
    throw ParseError("document is not an object");
  }
  if (!doc.contains("schema_version") || doc["schema_version"] != schema_version) {
    throw ParseError("unsupported or missing schema_version");
  }
  LoadResult out;
  auto& ws = out.ws;
  auto& rep = out.report;
  auto named = [](json const& j) {
    auto const& n = detail::field(j, "name");
    if (!n.is_string()) {
      throw ParseError("name is not a string");
    }
    return n.get<std::string>();
  };
  auto guard = [&](std::string const& name, auto&& body) {
    if (ws.has(name)) {
      rep.add(name + ": duplicate name");
      return;
    }
    try {
      body();
    } catch (ParseError const&) {
      throw;
    } catch (nlohmann::json::exception const& e) {
      throw ParseError(name + ": " + e.what());
    } catch (Error const& e) {
      rep.add(name + ": " + e.what());
    }
  };
  auto section = [&](char const* key) -> json {
    if (!doc.contains(key)) {
      return json::array();
    }
    if (!doc[key].is_array()) {
      throw ParseError(std::string("section '") + key + "' is not an array");
    }
    return doc[key];
  };
  for (auto const& j : section("categories")) {
    auto name = named(j);
    guard(name, [&] {
      auto C = fincat_from_json(j);
      auto v = validate_category(C);
      if (!v.ok()) {
        rep.merge(v, name + ": ");
        return;
      }
      ws.categories.emplace(name, C);
    });
  }
  for (auto const& j : section("functors")) {
    auto name = named(j);
    guard(name, [&] {
      auto const& S = ws.category(detail::field(j, "source").get<std::string>());
      auto const& T = ws.category(detail::field(j, "target").get<std::string>());
      std::map<Elem, Elem> objs, mors;
      for (auto const& p : detail::array_field(j, "objects")) {
        objs[detail::elem_of(p.at(0))] = detail::elem_of(p.at(1));
      }
      for (auto const& p : detail::array_field(j, "morphisms")) {
        mors[detail::elem_of(p.at(0))] = detail::elem_of(p.at(1));
      }
      auto F = Functor::from_labels(S, T, objs, mors);
      auto v = validate_functor(F);
      if (!v.ok()) {
        rep.merge(v, name + ": ");
        return;
      }
      ws.functors.emplace(name, F);
    });
  }
  for (auto const& j : section("presheaves")) {
    auto name = named(j);
    guard(name, [&] {
      auto p = presheaf_from_json(j, ws.category(detail::field(j, "base").get<std::string>()));
      auto v = validate_presheaf(p);
      if (!v.ok()) {
        rep.merge(v, name + ": ");
        return;
      }
      ws.presheaves.emplace(name, p);
    });
  }
  for (auto const& j : section("profunctors")) {
    auto name = named(j);
    guard(name, [&] {
      auto const& X = ws.category(detail::field(j, "from").get<std::string>());
      auto const& Y = ws.category(detail::field(j, "to").get<std::string>());
      auto F = detail::bifunctor_from_json(j, Y, X);
      auto v = validate_bifunctor(F);
      if (!v.ok()) {
        rep.merge(v, name + ": ");
        return;
      }
      ws.profunctors.emplace(name, F);
    });
  }
  for (auto const& j : section("monoidal")) {
    auto name = named(j);
    guard(name, [&] {
      auto M = monoidal_from_json(name, j, ws.category(detail::field(j, "base").get<std::string>()));
      auto v = validate_monoidal(M);
      if (!v.ok()) {
        rep.merge(v, name + ": ");
        return;
      }
      ws.monoidal.emplace(name, M);
    });
  }
  for (auto const& j : section("symseqs")) {
    auto name = named(j);
    guard(name, [&] {
      auto F = symseq_from_json(j, ws.category(detail::field(j, "source").get<std::string>()),
                                ws.category(detail::field(j, "target").get<std::string>()));
      auto v = validate_symseq(F);
      if (!v.ok()) {
        rep.merge(v, name + ": ");
        return;
      }
      ws.symseqs.emplace(name, F);
    });
  }
  return out;
}

inline LoadResult load_workspace(std::string const& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (nlohmann::json::parse_error const& e) {
    throw ParseError(e.what());
  }
  return load_workspace(doc);
}

// Quotient classes, each listed with its representative first.
inline json to_json(QuotientSet const& q) {
  json out = json::array();
  for (auto const& c : q.classes) {
    json members = json::array();
    for (Index m : c) {
      members.push_back(q.carrier[m].repr());
    }
    out.push_back(members);
  }
  return out;
}

}  // namespace ck
