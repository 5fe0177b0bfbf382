#pragma once

// Pass/fail reports with witnesses. Every checker in the library returns one
// of these; failures are data, never exceptions.

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace ck {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct CheckReport {
  std::string name;
  bool passed = true;
  bool applicable = true;
  std::vector<json> witnesses;
  std::vector<std::string> notes;
  std::vector<CheckReport> children;

  CheckReport() = default;
  explicit CheckReport(std::string n) : name(std::move(n)) {}

  void fail(json witness) {
    passed = false;
    if (witnesses.size() < kMaxWitnesses) {
      witnesses.push_back(std::move(witness));
    }
  }

  void note(std::string n) {
    for (auto const& existing : notes) {
      if (existing == n) {
        return;
      }
    }
    notes.push_back(std::move(n));
  }

  void skip(std::string reason) {
    applicable = false;
    note(std::move(reason));
  }

  void add(CheckReport child) {
    passed = passed && child.passed;
    children.push_back(std::move(child));
  }

  // Depth-first search for the first failing leaf, for one-line summaries.
  CheckReport const* first_failure() const {
    if (passed) {
      return nullptr;
    }
    for (auto const& c : children) {
      if (auto const* f = c.first_failure()) {
        return f;
      }
    }
    return this;
  }

  std::size_t count_leaves() const {
    if (children.empty()) {
      return 1;
    }
    std::size_t n = 0;
    for (auto const& c : children) {
      n += c.count_leaves();
    }
    return n;
  }

  static constexpr std::size_t kMaxWitnesses = 8;
};

inline json to_json(CheckReport const& r) {
  json j;
  j["name"] = r.name;
  j["status"] = !r.applicable ? "skipped" : (r.passed ? "pass" : "fail");
  if (!r.witnesses.empty()) {
    j["witnesses"] = r.witnesses;
  }
  if (!r.notes.empty()) {
    j["notes"] = r.notes;
  }
  if (!r.children.empty()) {
    json kids = json::array();
    for (auto const& c : r.children) {
      kids.push_back(to_json(c));
    }
    j["checks"] = std::move(kids);
  }
  return j;
}

inline void render_text(CheckReport const& r, std::string& out, int depth = 0) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += !r.applicable ? "[skip] " : (r.passed ? "[pass] " : "[FAIL] ");
  out += r.name;
  out += '\n';
  for (auto const& n : r.notes) {
    out.append(static_cast<std::size_t>(depth) * 2 + 4, ' ');
    out += "note: " + n + '\n';
  }
  for (auto const& w : r.witnesses) {
    out.append(static_cast<std::size_t>(depth) * 2 + 4, ' ');
    out += "witness: " + w.dump() + '\n';
  }
  for (auto const& c : r.children) {
    render_text(c, out, depth + 1);
  }
}

// Violations found while validating a structure. Empty means valid.
struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
  void add(std::string v) { violations.push_back(std::move(v)); }
  void merge(ValidationReport const& other, std::string const& prefix = {}) {
    for (auto const& v : other.violations) {
      violations.push_back(prefix + v);
    }
  }
};

}  // namespace ck
