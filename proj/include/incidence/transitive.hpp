#pragma once

#include <array>
#include <optional>
#include <queue>
#include <vector>

#include "incidence/element.hpp"
#include "incidence/error.hpp"
#include "incidence/preorder.hpp"
#include "incidence/scalar.hpp"

namespace incidence {

/// A composable triple i <= j <= k, by element positions.
using Triple = std::array<std::size_t, 3>;

struct TransitivityReport {
  bool transitive = true;
  std::vector<Triple> violations;  // triples where f(i,j) + f(j,k) != f(i,k)
};

/// Checks f(i,j) + f(j,k) = f(i,k) on every composable triple. The candidate is
/// any function on comparable pairs, carried as an IncidenceElement.
inline TransitivityReport is_transitive(const IncidenceElement& f) {
  TransitivityReport report;
  const auto& P = f.poset();
  const std::size_t n = P.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!P.leq(i, j)) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (!P.leq(j, k)) continue;
        if (!(f(i, j) + f(j, k) == f(i, k))) {
          report.transitive = false;
          report.violations.push_back({i, j, k});
        }
      }
    }
  }
  return report;
}

/// A transitive mapping on the comparable pairs of a preorder.
class TransitiveMap {
 public:
  /// Throws NotTransitive unless `values` satisfies the cocycle law.
  explicit TransitiveMap(IncidenceElement values) : values_(std::move(values)) {
    auto report = is_transitive(values_);
    if (!report.transitive) {
      const auto& P = values_.poset();
      auto [i, j, k] = report.violations.front();
      throw Error(ErrorCode::not_transitive, "f(" + P.label(i) + "," + P.label(j) + ") + f(" + P.label(j) + "," +
                                                 P.label(k) + ") != f(" + P.label(i) + "," + P.label(k) + ")");
    }
  }

  static TransitiveMap zero(const PreorderPtr& p, RingDescriptor ring) {
    return TransitiveMap(IncidenceElement(p, ring));
  }

  const IncidenceElement& values() const noexcept { return values_; }
  const PreorderPtr& preorder() const noexcept { return values_.preorder(); }
  const Preorder& poset() const noexcept { return values_.poset(); }
  const RingDescriptor& ring() const noexcept { return values_.ring(); }

  Scalar operator()(std::size_t i, std::size_t j) const { return values_(i, j); }
  Scalar at(std::size_t basis_pos) const { return values_.at(basis_pos); }

  friend bool operator==(const TransitiveMap& a, const TransitiveMap& b) { return a.values_ == b.values_; }

 private:
  IncidenceElement values_;
};

/// sigma: X -> R, witnessing f(i,j) = sigma(i) - sigma(j).
struct SigmaWitness {
  std::vector<Scalar> sigma;
};

/// The trivial map (i, j) -> sigma(i) - sigma(j).
inline TransitiveMap from_sigma(const PreorderPtr& p, RingDescriptor ring, const SigmaWitness& w) {
  if (w.sigma.size() != p->size()) {
    throw Error(ErrorCode::dimension_mismatch, "sigma must assign a value to every element");
  }
  IncidenceElement f(p, ring);
  for (std::size_t pos = 0; pos < p->basis_size(); ++pos) {
    auto [i, j] = p->basis()[pos];
    f.set(pos, w.sigma[i] - w.sigma[j]);
  }
  return TransitiveMap(std::move(f));
}

struct TrivialityResult {
  std::optional<SigmaWitness> witness;
  std::optional<ElementPair> violation;  // a pair where the propagated sigma disagrees with f

  bool trivial() const noexcept { return witness.has_value(); }
};

/// Decides whether f is trivial. Each comparability component anchors its first
/// element at 0 and propagates sigma breadth-first along comparability edges;
/// the candidate is then checked on every comparable pair.
inline TrivialityResult trivial_witness(const TransitiveMap& f) {
  const auto& P = f.poset();
  const auto& ring = f.ring();
  std::vector<Scalar> sigma(P.size(), Scalar::zero(ring));
  for (const auto& comp : comparability_components(P)) {
    std::vector<bool> seen(P.size(), false);
    std::queue<std::size_t> todo;
    todo.push(comp.front());
    seen[comp.front()] = true;
    while (!todo.empty()) {
      auto v = todo.front();
      todo.pop();
      for (std::size_t w = 0; w < P.size(); ++w) {
        if (seen[w]) continue;
        if (P.leq(v, w)) {
          sigma[w] = sigma[v] - f(v, w);
        } else if (P.leq(w, v)) {
          sigma[w] = sigma[v] + f(w, v);
        } else {
          continue;
        }
        seen[w] = true;
        todo.push(w);
      }
    }
  }
  TrivialityResult result;
  for (auto [i, j] : P.basis()) {
    if (!(f(i, j) == sigma[i] - sigma[j])) {
      result.violation = ElementPair{i, j};
      return result;
    }
  }
  result.witness = SigmaWitness{std::move(sigma)};
  return result;
}

/// Overload for an unvalidated candidate; throws NotTransitive.
inline TrivialityResult trivial_witness(const IncidenceElement& candidate) {
  return trivial_witness(TransitiveMap(candidate));
}

}  // namespace incidence
