#pragma once

// Structured labels for elements of finite sets, objects and morphisms.
//
// An Elem is an immutable tree: an atom (a plain name), a tuple of elems, or
// a tag <key|value>. Equality, hashing and the canonical total order all go
// through the printed form, which is injective.

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace ck {

class Elem {
 public:
  enum class Kind : unsigned char { atom, tuple, tag };

  Elem() : Elem(atom("")) {}

  static Elem atom(std::string_view name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::atom;
    n->name = std::string(name);
    n->repr = quote(name);
    n->hash = std::hash<std::string>{}(n->repr);
    return Elem(std::move(n));
  }

  static Elem atom(long long i) { return atom(std::to_string(i)); }

  static Elem tuple(std::vector<Elem> items) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::tuple;
    std::size_t len = 2;
    for (auto const& e : items) {
      len += e.repr().size() + 1;
    }
    n->repr.reserve(len);
    n->repr += '(';
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i > 0) {
        n->repr += ',';
      }
      n->repr += items[i].repr();
    }
    n->repr += ')';
    n->items = std::move(items);
    n->hash = std::hash<std::string>{}(n->repr);
    return Elem(std::move(n));
  }

  static Elem tuple(std::initializer_list<Elem> items) {
    return tuple(std::vector<Elem>(items));
  }

  static Elem tag(Elem key, Elem value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::tag;
    n->repr.reserve(key.repr().size() + value.repr().size() + 3);
    n->repr += '<';
    n->repr += key.repr();
    n->repr += '|';
    n->repr += value.repr();
    n->repr += '>';
    n->items = {std::move(key), std::move(value)};
    n->hash = std::hash<std::string>{}(n->repr);
    return Elem(std::move(n));
  }

  Kind kind() const noexcept { return node_->kind; }
  bool is_atom() const noexcept { return kind() == Kind::atom; }
  bool is_tuple() const noexcept { return kind() == Kind::tuple; }
  bool is_tag() const noexcept { return kind() == Kind::tag; }

  // Atom name (empty for non-atoms).
  std::string const& name() const noexcept { return node_->name; }
  // Tuple components.
  std::vector<Elem> const& items() const noexcept { return node_->items; }
  std::size_t size() const noexcept { return node_->items.size(); }
  Elem const& operator[](std::size_t i) const { return node_->items.at(i); }
  // Tag parts.
  Elem const& key() const { return node_->items.at(0); }
  Elem const& value() const { return node_->items.at(1); }

  std::string const& repr() const noexcept { return node_->repr; }
  std::size_t hash() const noexcept { return node_->hash; }

  friend bool operator==(Elem const& a, Elem const& b) noexcept {
    return a.node_ == b.node_
           || (a.node_->hash == b.node_->hash && a.node_->repr == b.node_->repr);
  }
  friend std::strong_ordering operator<=>(Elem const& a, Elem const& b) noexcept {
    if (a.node_ == b.node_) {
      return std::strong_ordering::equal;
    }
    int c = a.node_->repr.compare(b.node_->repr);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  struct Node {
    Kind kind = Kind::atom;
    std::string name;
    std::vector<Elem> items;
    std::string repr;
    std::size_t hash = 0;
  };

  explicit Elem(std::shared_ptr<Node const> n) : node_(std::move(n)) {}

  static bool plain(char c) {
    switch (c) {
      case '(': case ')': case '<': case '>': case '|': case ',': case '"':
      case '\\': case ' ': case '\t': case '\n':
        return false;
      default:
        return true;
    }
  }

  static std::string quote(std::string_view s) {
    bool needs = s.empty();
    for (char c : s) {
      needs = needs || !plain(c);
    }
    if (!needs) {
      return std::string(s);
    }
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') {
        out += '\\';
      }
      out += c;
    }
    out += '"';
    return out;
  }

  std::shared_ptr<Node const> node_;
};

inline Elem operator""_e(char const* s, std::size_t n) {
  return Elem::atom(std::string_view(s, n));
}

}  // namespace ck

template <>
struct std::hash<ck::Elem> {
  std::size_t operator()(ck::Elem const& e) const noexcept { return e.hash(); }
};
