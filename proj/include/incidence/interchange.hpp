#pragma once

#include <nlohmann/json.hpp>

#include <set>
#include <string>
#include <vector>

#include "incidence/element.hpp"
#include "incidence/error.hpp"
#include "incidence/exactla.hpp"
#include "incidence/operator.hpp"
#include "incidence/preorder.hpp"
#include "incidence/scalar.hpp"
#include "incidence/spaces.hpp"
#include "incidence/transitive.hpp"

namespace incidence {

using Json = nlohmann::json;

/// The canonical text of a record: sorted keys, two-space indent, trailing newline.
inline std::string dump_record(const Json& j) { return j.dump(2) + "\n"; }

namespace detail {

inline Json record_header(const Preorder& p, const RingDescriptor& ring) {
  Json j;
  j["poset-hash"] = poset_hash(p);
  j["ring"] = ring.to_string();
  return j;
}

inline Json element_entries(const IncidenceElement& f) {
  Json entries = Json::array();
  const auto& P = f.poset();
  for (const auto& [pos, c] : f.coeffs()) {
    auto [x, y] = P.basis()[pos];
    entries.push_back({{"x", P.label(x)}, {"y", P.label(y)}, {"c", c.to_string()}});
  }
  return entries;
}

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::parse_error, std::string("malformed JSON: ") + e.what());
  }
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::parse_error, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string string_field(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) throw Error(ErrorCode::parse_error, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

inline const Json& array_field(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_array()) throw Error(ErrorCode::parse_error, std::string("field '") + key + "' must be an array");
  return v;
}

/// Checks the record binds to `p` and is written over `ring`.
inline void check_header(const Json& j, const Preorder& p, const RingDescriptor& ring) {
  auto hash = string_field(j, "poset-hash");
  if (hash != poset_hash(p)) {
    throw Error(ErrorCode::preorder_mismatch, "record poset-hash " + hash + " does not match " + poset_hash(p));
  }
  auto r = string_field(j, "ring");
  if (r != ring.to_string()) throw Error(ErrorCode::ring_mismatch, "record ring " + r + " but expected " + ring.to_string());
}

inline std::size_t pair_position(const Preorder& p, const std::string& x, const std::string& y) {
  auto i = p.index_of(x);
  auto j = p.index_of(y);
  auto pos = p.pair_index(i, j);
  if (pos == Preorder::npos) throw Error(ErrorCode::not_comparable, x + " is not below " + y);
  return pos;
}

inline std::size_t label_pair_position(const Preorder& p, const Json& pair) {
  if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
    throw Error(ErrorCode::parse_error, "a pair must be an array of two labels");
  }
  return pair_position(p, pair[0].get<std::string>(), pair[1].get<std::string>());
}

inline Scalar nonzero_scalar(const RingDescriptor& ring, const Json& entry) {
  auto s = parse_scalar(ring, string_field(entry, "c"));
  if (s.is_zero()) throw Error(ErrorCode::parse_error, "zero coefficients are not written");
  return s;
}

inline IncidenceElement read_values(const Json& list, const PreorderPtr& p, const RingDescriptor& ring) {
  IncidenceElement f(p, ring);
  std::set<std::size_t> seen;
  for (const auto& e : list) {
    auto pos = pair_position(*p, string_field(e, "x"), string_field(e, "y"));
    if (!seen.insert(pos).second) throw Error(ErrorCode::parse_error, "duplicate entry");
    f.set(pos, nonzero_scalar(ring, e));
  }
  return f;
}

}  // namespace detail

inline Json element_record(const IncidenceElement& f) {
  auto j = detail::record_header(f.poset(), f.ring());
  j["entries"] = detail::element_entries(f);
  return j;
}

inline IncidenceElement element_from_record(const Json& j, const PreorderPtr& p, const RingDescriptor& ring) {
  detail::check_header(j, *p, ring);
  return detail::read_values(detail::array_field(j, "entries"), p, ring);
}

inline Json operator_record(const LinearOperator& d) {
  auto j = detail::record_header(d.poset(), d.ring());
  const auto& P = d.poset();
  Json entries = Json::array();
  for (const auto& [key, c] : d.coeffs()) {
    auto [i, jj] = P.basis()[key.first];
    auto [x, y] = P.basis()[key.second];
    entries.push_back({{"ij", {P.label(i), P.label(jj)}}, {"xy", {P.label(x), P.label(y)}}, {"c", c.to_string()}});
  }
  j["entries"] = std::move(entries);
  return j;
}

inline LinearOperator operator_from_record(const Json& j, const PreorderPtr& p, const RingDescriptor& ring) {
  detail::check_header(j, *p, ring);
  LinearOperator d(p, ring);
  std::set<LinearOperator::Key> seen;
  for (const auto& e : detail::array_field(j, "entries")) {
    auto s = detail::label_pair_position(*p, detail::field(e, "ij"));
    auto t = detail::label_pair_position(*p, detail::field(e, "xy"));
    if (!seen.insert({s, t}).second) throw Error(ErrorCode::parse_error, "duplicate entry");
    d.set(s, t, detail::nonzero_scalar(ring, e));
  }
  return d;
}

inline Json map_record(const IncidenceElement& values) {
  auto j = detail::record_header(values.poset(), values.ring());
  j["values"] = detail::element_entries(values);
  return j;
}

inline Json map_record(const TransitiveMap& f) { return map_record(f.values()); }

/// The candidate values of a map record; transitivity is left to the caller.
inline IncidenceElement map_values_from_record(const Json& j, const PreorderPtr& p, const RingDescriptor& ring) {
  detail::check_header(j, *p, ring);
  return detail::read_values(detail::array_field(j, "values"), p, ring);
}

enum class SpaceKind { derivation, jordan, inner, transitive, trivial };

inline std::string_view space_kind_name(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::derivation: return "derivation";
    case SpaceKind::jordan: return "jordan";
    case SpaceKind::inner: return "inner";
    case SpaceKind::transitive: return "transitive";
    case SpaceKind::trivial: return "trivial";
  }
  return "?";
}

/// Space report for an operator space; generators are operator records.
inline Json space_report(const OperatorSpace& s, SpaceKind kind) {
  auto j = detail::record_header(*s.preorder, s.ring);
  j["kind"] = space_kind_name(kind);
  j["rank"] = s.rank();
  Json gens = Json::array();
  for (const auto& g : s.generators) gens.push_back(operator_record(g));
  j["generators"] = std::move(gens);
  return j;
}

/// Space report for a space of maps on comparable pairs; generators are map records.
inline Json space_report(const PreorderPtr& p, const SpanBasis& s, SpaceKind kind) {
  auto j = detail::record_header(*p, s.ring);
  j["kind"] = space_kind_name(kind);
  j["rank"] = s.size();
  Json gens = Json::array();
  for (const auto& v : s.vectors) gens.push_back(map_record(IncidenceElement::from_vector(p, s.ring, v)));
  j["generators"] = std::move(gens);
  return j;
}

inline Json parse_record(std::string_view text) { return detail::parse_json(text); }

}  // namespace incidence
