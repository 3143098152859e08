#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "incidence/element.hpp"
#include "incidence/error.hpp"
#include "incidence/preorder.hpp"
#include "incidence/scalar.hpp"
#include "incidence/transitive.hpp"

namespace incidence {

/// An R-linear map on I(X, R) given by its coefficients on the basis:
/// D(e_ij) = sum over (x, y) of C^{ij}_{xy} e_xy. Keys are (source, target)
/// basis positions; zero coefficients are not stored.
class LinearOperator {
 public:
  using Key = std::pair<std::size_t, std::size_t>;

  LinearOperator(PreorderPtr preorder, RingDescriptor ring) : preorder_(std::move(preorder)), ring_(ring) {}

  const PreorderPtr& preorder() const noexcept { return preorder_; }
  const Preorder& poset() const noexcept { return *preorder_; }
  const RingDescriptor& ring() const noexcept { return ring_; }
  const std::map<Key, Scalar>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  Scalar coefficient(std::size_t source, std::size_t target) const {
    auto it = coeffs_.find({source, target});
    return it == coeffs_.end() ? Scalar::zero(ring_) : it->second;
  }

  /// C^{ij}_{xy} by element positions; zero when either pair is not comparable.
  Scalar coefficient(std::size_t i, std::size_t j, std::size_t x, std::size_t y) const {
    auto s = preorder_->pair_index(i, j);
    auto t = preorder_->pair_index(x, y);
    if (s == Preorder::npos || t == Preorder::npos) return Scalar::zero(ring_);
    return coefficient(s, t);
  }

  void set(std::size_t source, std::size_t target, const Scalar& c) {
    const auto n = preorder_->basis_size();
    if (source >= n || target >= n) throw Error(ErrorCode::dimension_mismatch, "basis position out of range");
    if (!(c.ring() == ring_)) throw Error(ErrorCode::ring_mismatch, c.ring().to_string() + " coefficient");
    if (c.is_zero()) {
      coeffs_.erase({source, target});
    } else {
      coeffs_[{source, target}] = c;
    }
  }

  /// D(e_source).
  IncidenceElement image(std::size_t source) const {
    IncidenceElement out(preorder_, ring_);
    for (auto it = coeffs_.lower_bound({source, 0}); it != coeffs_.end() && it->first.first == source; ++it) {
      out.set(it->first.second, it->second);
    }
    return out;
  }

  void set_image(std::size_t source, const IncidenceElement& img) {
    for (auto it = coeffs_.lower_bound({source, 0}); it != coeffs_.end() && it->first.first == source;) {
      it = coeffs_.erase(it);
    }
    for (const auto& [t, c] : img.coeffs()) set(source, t, c);
  }

  /// Flattened coefficient tensor: source major, target minor.
  std::vector<Scalar> to_vector() const {
    const auto n = preorder_->basis_size();
    std::vector<Scalar> v(n * n, Scalar::zero(ring_));
    for (const auto& [k, c] : coeffs_) v[k.first * n + k.second] = c;
    return v;
  }

  static LinearOperator from_vector(PreorderPtr p, RingDescriptor ring, const std::vector<Scalar>& v) {
    LinearOperator op(std::move(p), ring);
    const auto n = op.preorder_->basis_size();
    if (v.size() != n * n) throw Error(ErrorCode::dimension_mismatch, "operator vector has the wrong length");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_zero()) op.set(i / n, i % n, v[i]);
    }
    return op;
  }

  friend LinearOperator operator+(const LinearOperator& a, const LinearOperator& b) {
    check(a, b);
    LinearOperator out = a;
    for (const auto& [k, c] : b.coeffs_) out.set(k.first, k.second, out.coefficient(k.first, k.second) + c);
    return out;
  }

  friend LinearOperator operator-(const LinearOperator& a, const LinearOperator& b) {
    check(a, b);
    LinearOperator out = a;
    for (const auto& [k, c] : b.coeffs_) out.set(k.first, k.second, out.coefficient(k.first, k.second) - c);
    return out;
  }

  friend LinearOperator operator*(const Scalar& s, const LinearOperator& a) {
    LinearOperator out(a.preorder_, a.ring_);
    for (const auto& [k, c] : a.coeffs_) out.set(k.first, k.second, s * c);
    return out;
  }

  friend bool operator==(const LinearOperator& a, const LinearOperator& b) {
    return a.ring_ == b.ring_ && same_preorder(a.preorder_, b.preorder_) && a.coeffs_ == b.coeffs_;
  }

 private:
  static void check(const LinearOperator& a, const LinearOperator& b) {
    if (!(a.ring_ == b.ring_)) throw Error(ErrorCode::ring_mismatch, a.ring_.to_string() + " vs " + b.ring_.to_string());
    if (!same_preorder(a.preorder_, b.preorder_)) throw Error(ErrorCode::preorder_mismatch, "operators on different preorders");
  }

  PreorderPtr preorder_;
  RingDescriptor ring_;
  std::map<Key, Scalar> coeffs_;
};

inline IncidenceElement apply(const LinearOperator& d, const IncidenceElement& f) {
  if (!(d.ring() == f.ring())) throw Error(ErrorCode::ring_mismatch, d.ring().to_string() + " vs " + f.ring().to_string());
  if (!same_preorder(d.preorder(), f.preorder())) throw Error(ErrorCode::preorder_mismatch, "operator and element differ");
  IncidenceElement out(d.preorder(), d.ring());
  for (const auto& [k, c] : d.coeffs()) {
    auto fv = f.coeffs().find(k.first);
    if (fv != f.coeffs().end()) out.add_to(k.second, fv->second * c);
  }
  return out;
}

/// Inn_g: e_ij -> [g, e_ij].
inline LinearOperator inner_operator(const IncidenceElement& g) {
  LinearOperator d(g.preorder(), g.ring());
  const auto& P = g.poset();
  for (std::size_t s = 0; s < P.basis_size(); ++s) {
    auto [i, j] = P.basis()[s];
    d.set_image(s, commutator(g, basis_elem(g.preorder(), g.ring(), i, j)));
  }
  return d;
}

/// Delta_f: e_ij -> f(i, j) e_ij.
inline LinearOperator transitive_operator(const TransitiveMap& f) {
  LinearOperator d(f.preorder(), f.ring());
  for (std::size_t s = 0; s < f.poset().basis_size(); ++s) d.set(s, s, f.at(s));
  return d;
}

namespace detail {

inline std::vector<IncidenceElement> basis_elements(const LinearOperator& d) {
  std::vector<IncidenceElement> out;
  for (auto [x, y] : d.poset().basis()) out.push_back(basis_elem(d.preorder(), d.ring(), x, y));
  return out;
}

inline std::vector<IncidenceElement> basis_images(const LinearOperator& d) {
  std::vector<IncidenceElement> out;
  for (std::size_t s = 0; s < d.poset().basis_size(); ++s) out.push_back(d.image(s));
  return out;
}

/// e_a e_b as a basis position, or npos when the product is zero.
inline std::size_t basis_product(const Preorder& p, std::size_t a, std::size_t b) {
  auto [i, j] = p.basis()[a];
  auto [k, l] = p.basis()[b];
  return j == k ? p.pair_index(i, l) : Preorder::npos;
}

}  // namespace detail

/// D(e e') = D(e) e' + e D(e') for every ordered pair of basis elements.
inline bool is_derivation(const LinearOperator& d) {
  const auto& P = d.poset();
  const auto n = P.basis_size();
  auto e = detail::basis_elements(d);
  auto img = detail::basis_images(d);
  IncidenceElement zero(d.preorder(), d.ring());
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto prod = detail::basis_product(P, a, b);
      const IncidenceElement& lhs = prod == Preorder::npos ? zero : img[prod];
      if (!(lhs == convolve(img[a], e[b]) + convolve(e[a], img[b]))) return false;
    }
  }
  return true;
}

/// Jordan law on the basis: D(e^2) = D(e) e + e D(e) for each basis element,
/// and the symmetrized law D(ee' + e'e) = D(e)e' + eD(e') + D(e')e + e'D(e)
/// for each unordered pair. Bilinear expansion makes this equivalent to
/// D(x^2) = D(x) x + x D(x) for all x.
inline bool is_jordan_derivation(const LinearOperator& d) {
  const auto& P = d.poset();
  const auto n = P.basis_size();
  auto e = detail::basis_elements(d);
  auto img = detail::basis_images(d);
  IncidenceElement zero(d.preorder(), d.ring());
  auto image_of_product = [&](std::size_t a, std::size_t b) -> const IncidenceElement& {
    auto prod = detail::basis_product(P, a, b);
    return prod == Preorder::npos ? zero : img[prod];
  };
  for (std::size_t a = 0; a < n; ++a) {
    auto rhs = convolve(img[a], e[a]) + convolve(e[a], img[a]);
    if (!(image_of_product(a, a) == rhs)) return false;
    for (std::size_t b = a + 1; b < n; ++b) {
      auto lhs = image_of_product(a, b) + image_of_product(b, a);
      auto r = convolve(img[a], e[b]) + convolve(e[a], img[b]) + convolve(img[b], e[a]) + convolve(e[b], img[a]);
      if (!(lhs == r)) return false;
    }
  }
  return true;
}

struct FormViolation {
  enum class Kind { shape, relation };
  Kind kind;
  std::string description;
  std::vector<std::size_t> indices;  // element positions involved
};

struct FormReport {
  bool conforms = true;
  std::vector<FormViolation> violations;
  /// Nonzero C^{ij}_{ji} with i != j (Jordan form only): (basis position of (i,j), value).
  std::vector<std::pair<std::size_t, Scalar>> back_coefficients;
  /// Set when the Jordan form was checked over a ring with 2-torsion.
  bool advisory = false;
};

namespace detail {

inline FormReport check_form(const LinearOperator& d, bool allow_back) {
  FormReport report;
  const auto& P = d.poset();
  const auto& L = P.labels();
  auto name = [&](std::size_t a, std::size_t b) { return L[a] + L[b]; };
  auto add = [&](FormViolation::Kind kind, std::string text, std::vector<std::size_t> idx) {
    report.conforms = false;
    report.violations.push_back({kind, std::move(text), std::move(idx)});
  };

  // support: (x, j) with x in L_i, (i, j), (i, y) with y in R_j, and (j, i) for the Jordan form
  for (const auto& [key, c] : d.coeffs()) {
    auto [i, j] = P.basis()[key.first];
    auto [x, y] = P.basis()[key.second];
    bool ok = (x == i && y == j) || (y == j && x != i && P.leq(x, i)) || (x == i && y != j && P.leq(j, y));
    if (!ok && allow_back && i != j && x == j && y == i) {
      report.back_coefficients.emplace_back(key.first, c);
      ok = true;
    }
    if (!ok) {
      add(FormViolation::Kind::shape,
          "D(e_" + name(i, j) + ") has coefficient " + c.to_string() + " on e_" + name(x, y) + " outside the allowed support",
          {i, j, x, y});
    }
  }
  // off-corner coefficients repeat those of D(e_ii) and D(e_jj)
  for (auto [i, j] : P.basis()) {
    if (i == j) continue;
    for (auto x : strict_below(P, i)) {
      if (!(d.coefficient(i, j, x, j) == d.coefficient(i, i, x, i))) {
        add(FormViolation::Kind::shape, "C^{" + name(i, j) + "}_{" + name(x, j) + "} != C^{" + name(i, i) + "}_{" +
                                            name(x, i) + "}",
            {i, j, x});
      }
    }
    for (auto y : strict_above(P, j)) {
      if (!(d.coefficient(i, j, i, y) == d.coefficient(j, j, j, y))) {
        add(FormViolation::Kind::shape, "C^{" + name(i, j) + "}_{" + name(i, y) + "} != C^{" + name(j, j) + "}_{" +
                                            name(j, y) + "}",
            {i, j, y});
      }
    }
  }
  for (std::size_t i = 0; i < P.size(); ++i) {
    if (!d.coefficient(i, i, i, i).is_zero()) {
      add(FormViolation::Kind::relation, "C^{ii}_{ii} = 0 fails for i = " + L[i], {i});
    }
  }
  for (auto [j, k] : P.basis()) {
    if (j == k) continue;
    if (!(d.coefficient(j, j, j, k) + d.coefficient(k, k, j, k)).is_zero()) {
      add(FormViolation::Kind::relation,
          "C^{jj}_{jk} + C^{kk}_{jk} = 0 fails for j = " + L[j] + ", k = " + L[k], {j, k});
    }
  }
  for (std::size_t i = 0; i < P.size(); ++i) {
    for (std::size_t j = 0; j < P.size(); ++j) {
      if (i == j || !P.leq(i, j)) continue;
      for (std::size_t k = 0; k < P.size(); ++k) {
        if (j == k || !P.leq(j, k)) continue;
        if (!(d.coefficient(i, j, i, j) + d.coefficient(j, k, j, k) == d.coefficient(i, k, i, k))) {
          add(FormViolation::Kind::relation,
              "C^{ij}_{ij} + C^{jk}_{jk} = C^{ik}_{ik} fails for i = " + L[i] + ", j = " + L[j] + ", k = " + L[k],
              {i, j, k});
        }
      }
    }
  }
  return report;
}

}  // namespace detail

/// Checks the derivation normal form
///   D(e_ij) = sum_{x in L_i} C^{ii}_{xi} e_xj + C^{ij}_{ij} e_ij + sum_{y in R_j} C^{jj}_{jy} e_iy
/// with C^{ii}_{ii} = 0, C^{jj}_{jk} + C^{kk}_{jk} = 0 and
/// C^{ij}_{ij} + C^{jk}_{jk} = C^{ik}_{ik}. Shape and relation failures are
/// reported separately.
inline FormReport check_derivation_form(const LinearOperator& d) { return detail::check_form(d, false); }

/// As check_derivation_form, additionally permitting a back-coefficient
/// C^{ij}_{ji} on e_ji when j <= i. Without 2-torsion freeness the result is
/// only advisory.
inline FormReport check_jordan_form(const LinearOperator& d) {
  auto report = detail::check_form(d, true);
  report.advisory = !is_two_torsion_free(d.ring());
  return report;
}

struct HersteinReport {
  bool symmetric_product = false;  // D(ab+ba) = D(a)b + aD(b) + D(b)a + bD(a)
  bool sandwich = false;           // D(aba) = D(a)ba + aD(b)a + abD(a)
  bool triple = false;             // D(abc+cba) = D(a)bc + aD(b)c + abD(c) + D(c)ba + cD(b)a + cbD(a)

  bool all() const noexcept { return symmetric_product && sandwich && triple; }
};

inline HersteinReport herstein_check(const LinearOperator& d, const IncidenceElement& a, const IncidenceElement& b,
                                     const IncidenceElement& c) {
  HersteinReport r;
  auto Da = apply(d, a), Db = apply(d, b), Dc = apply(d, c);
  r.symmetric_product = apply(d, a * b + b * a) == Da * b + a * Db + Db * a + b * Da;
  r.sandwich = apply(d, a * b * a) == Da * b * a + a * Db * a + a * b * Da;
  r.triple = apply(d, a * b * c + c * b * a) ==
             Da * b * c + a * Db * c + a * b * Dc + Dc * b * a + c * Db * a + c * b * Da;
  return r;
}

}  // namespace incidence
