#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "incidence/error.hpp"

namespace incidence {

/// Largest number of comparable pairs a preorder may have.
inline constexpr std::size_t kMaxBasisSize = 4096;

/// A comparable pair (x, y), x <= y, by element positions.
struct ElementPair {
  std::size_t x = 0;
  std::size_t y = 0;

  friend bool operator==(const ElementPair&, const ElementPair&) = default;
  friend auto operator<=>(const ElementPair&, const ElementPair&) = default;
};

/// A finite set with a reflexive and transitive relation. Elements keep their
/// declaration order; the basis of comparable pairs is enumerated
/// lexicographically by element position.
class Preorder {
 public:
  /// Builds the reflexive-transitive closure of `relations` (pairs of positions).
  Preorder(std::vector<std::string> labels,
           const std::vector<std::pair<std::size_t, std::size_t>>& relations)
      : labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!position_.emplace(labels_[i], i).second) {
        throw Error(ErrorCode::duplicate_element, "element '" + labels_[i] + "' declared twice");
      }
    }
    leq_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) leq_[i * n + i] = 1;
    for (auto [a, b] : relations) {
      if (a >= n || b >= n) throw Error(ErrorCode::unknown_element, "relation index out of range");
      leq_[a * n + b] = 1;
    }
    // Warshall
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!leq_[i * n + k]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (leq_[k * n + j]) leq_[i * n + j] = 1;
        }
      }
    }
    pair_index_.assign(n * n, npos);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (leq_[i * n + j]) {
          pair_index_[i * n + j] = basis_.size();
          basis_.push_back({i, j});
        }
      }
    }
    if (basis_.size() > kMaxBasisSize) {
      throw Error(ErrorCode::size_limit, std::to_string(basis_.size()) +
                                             " comparable pairs exceed the limit of " +
                                             std::to_string(kMaxBasisSize));
    }
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  std::size_t index_of(std::string_view label) const {
    auto it = position_.find(std::string(label));
    if (it == position_.end()) {
      throw Error(ErrorCode::unknown_element, "unknown element '" + std::string(label) + "'");
    }
    return it->second;
  }

  bool contains(std::string_view label) const { return position_.count(std::string(label)) > 0; }

  bool leq(std::size_t x, std::size_t y) const { return leq_[x * size() + y] != 0; }

  /// The basis B = {e_xy | x <= y} as pairs, in canonical order.
  const std::vector<ElementPair>& basis() const noexcept { return basis_; }
  std::size_t basis_size() const noexcept { return basis_.size(); }

  /// Position of (x, y) in `basis()`, or npos when x is not below y.
  std::size_t pair_index(std::size_t x, std::size_t y) const { return pair_index_[x * size() + y]; }

  friend bool operator==(const Preorder& a, const Preorder& b) {
    return a.labels_ == b.labels_ && a.leq_ == b.leq_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> position_;
  std::vector<char> leq_;
  std::vector<std::size_t> pair_index_;
  std::vector<ElementPair> basis_;
};

using PreorderPtr = std::shared_ptr<const Preorder>;

inline bool same_preorder(const PreorderPtr& a, const PreorderPtr& b) {
  return a == b || (a && b && *a == *b);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\f\v";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace detail

/// Reads the preorder DSL:
///
///     # comment
///     elements: a b c
///     relations: a<b b<c
///
/// `elements:` appears exactly once, before any `relations:` line. The result
/// is the reflexive-transitive closure of the declared relations.
inline PreorderPtr parse_preorder(std::string_view text) {
  std::optional<std::vector<std::string>> labels;
  std::vector<std::pair<std::string, std::string>> declared;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string_view::npos) fail("expected 'elements:' or 'relations:'");
    auto keyword = detail::trim(line.substr(0, colon));
    auto tokens = detail::split_tokens(line.substr(colon + 1));
    if (keyword == "elements") {
      if (labels) fail("'elements:' declared more than once");
      for (const auto& t : tokens) {
        if (t.find('<') != std::string::npos) fail("element label '" + t + "' contains '<'");
      }
      labels = tokens;
    } else if (keyword == "relations") {
      if (!labels) fail("'relations:' before 'elements:'");
      for (const auto& t : tokens) {
        auto lt = t.find('<');
        if (lt == std::string::npos || lt == 0 || lt + 1 == t.size() ||
            t.find('<', lt + 1) != std::string::npos) {
          fail("malformed relation '" + t + "'");
        }
        declared.emplace_back(t.substr(0, lt), t.substr(lt + 1));
      }
    } else {
      fail("unknown keyword '" + std::string(keyword) + "'");
    }
  }
  if (!labels) throw Error(ErrorCode::parse_error, "missing 'elements:' line");

  std::unordered_map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < labels->size(); ++i) {
    if (!pos.emplace((*labels)[i], i).second) {
      throw Error(ErrorCode::duplicate_element, "element '" + (*labels)[i] + "' declared twice");
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> relations;
  for (const auto& [a, b] : declared) {
    auto ia = pos.find(a);
    auto ib = pos.find(b);
    if (ia == pos.end()) throw Error(ErrorCode::unknown_element, "relation mentions undeclared '" + a + "'");
    if (ib == pos.end()) throw Error(ErrorCode::unknown_element, "relation mentions undeclared '" + b + "'");
    relations.emplace_back(ia->second, ib->second);
  }
  return std::make_shared<const Preorder>(std::move(*labels), relations);
}

/// DSL text listing every strict comparable pair in basis order.
inline std::string canonical_dsl(const Preorder& p) {
  std::string out = "elements:";
  for (const auto& l : p.labels()) out += " " + l;
  out += "\n";
  std::string rel;
  for (auto [x, y] : p.basis()) {
    if (x != y) rel += " " + p.label(x) + "<" + p.label(y);
  }
  if (!rel.empty()) out += "relations:" + rel + "\n";
  return out;
}

/// 64-bit FNV-1a of the canonical DSL, as 16 hex digits.
inline std::string poset_hash(const Preorder& p) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical_dsl(p)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// All z with x <= z <= y, in element order.
inline std::vector<std::size_t> interval(const Preorder& p, std::size_t x, std::size_t y) {
  std::vector<std::size_t> out;
  if (!p.leq(x, y)) return out;
  for (std::size_t z = 0; z < p.size(); ++z) {
    if (p.leq(x, z) && p.leq(z, y)) out.push_back(z);
  }
  return out;
}

inline std::vector<std::string> interval(const Preorder& p, std::string_view x, std::string_view y) {
  std::vector<std::string> out;
  for (auto z : interval(p, p.index_of(x), p.index_of(y))) out.push_back(p.label(z));
  return out;
}

/// L_x = {i | i <= x, i != x}.
inline std::vector<std::size_t> strict_below(const Preorder& p, std::size_t x) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i != x && p.leq(i, x)) out.push_back(i);
  }
  return out;
}

/// R_x = {j | x <= j, j != x}.
inline std::vector<std::size_t> strict_above(const Preorder& p, std::size_t x) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j != x && p.leq(x, j)) out.push_back(j);
  }
  return out;
}

inline std::vector<std::string> strict_below(const Preorder& p, std::string_view x) {
  std::vector<std::string> out;
  for (auto i : strict_below(p, p.index_of(x))) out.push_back(p.label(i));
  return out;
}

inline std::vector<std::string> strict_above(const Preorder& p, std::string_view x) {
  std::vector<std::string> out;
  for (auto i : strict_above(p, p.index_of(x))) out.push_back(p.label(i));
  return out;
}

using Partition = std::vector<std::vector<std::size_t>>;

/// Classes of x ~ y iff x <= y <= x, ordered by their first element.
inline Partition equivalence_classes(const Preorder& p) {
  Partition out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (seen[x]) continue;
    out.emplace_back();
    for (std::size_t y = x; y < p.size(); ++y) {
      if (!seen[y] && p.leq(x, y) && p.leq(y, x)) {
        seen[y] = true;
        out.back().push_back(y);
      }
    }
  }
  return out;
}

inline bool is_partial_order(const Preorder& p) {
  for (auto [x, y] : p.basis()) {
    if (x != y && p.leq(y, x)) return false;
  }
  return true;
}

/// Connected components of the comparability graph, each listed in element
/// order and ordered by first element.
inline Partition comparability_components(const Preorder& p) {
  Partition out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> comp;
    std::queue<std::size_t> todo;
    todo.push(start);
    seen[start] = true;
    while (!todo.empty()) {
      auto v = todo.front();
      todo.pop();
      comp.push_back(v);
      for (std::size_t w = 0; w < p.size(); ++w) {
        if (!seen[w] && (p.leq(v, w) || p.leq(w, v))) {
          seen[w] = true;
          todo.push(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace incidence
