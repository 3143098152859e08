#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "incidence/error.hpp"
#include "incidence/preorder.hpp"
#include "incidence/scalar.hpp"

namespace incidence {

/// An element f of I(X, R): a function on comparable pairs, stored sparsely by
/// basis position. Zero coefficients are never stored.
class IncidenceElement {
 public:
  IncidenceElement(PreorderPtr preorder, RingDescriptor ring)
      : preorder_(std::move(preorder)), ring_(ring) {}

  const PreorderPtr& preorder() const noexcept { return preorder_; }
  const Preorder& poset() const noexcept { return *preorder_; }
  const RingDescriptor& ring() const noexcept { return ring_; }

  /// Coefficients keyed by basis position.
  const std::map<std::size_t, Scalar>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  Scalar at(std::size_t basis_pos) const {
    auto it = coeffs_.find(basis_pos);
    return it == coeffs_.end() ? Scalar::zero(ring_) : it->second;
  }

  /// f(x, y); zero when x is not below y.
  Scalar operator()(std::size_t x, std::size_t y) const {
    auto pos = preorder_->pair_index(x, y);
    return pos == Preorder::npos ? Scalar::zero(ring_) : at(pos);
  }

  void set(std::size_t basis_pos, const Scalar& c) {
    if (!(c.ring() == ring_)) {
      throw Error(ErrorCode::ring_mismatch, c.ring().to_string() + " scalar in " + ring_.to_string() + " element");
    }
    if (c.is_zero()) {
      coeffs_.erase(basis_pos);
    } else {
      coeffs_[basis_pos] = c;
    }
  }

  void set(std::size_t x, std::size_t y, const Scalar& c) {
    auto pos = preorder_->pair_index(x, y);
    if (pos == Preorder::npos) {
      throw Error(ErrorCode::not_comparable,
                  preorder_->label(x) + " is not below " + preorder_->label(y));
    }
    set(pos, c);
  }

  void add_to(std::size_t basis_pos, const Scalar& c) { set(basis_pos, at(basis_pos) + c); }

  /// Dense coordinate vector in basis order.
  std::vector<Scalar> to_vector() const {
    std::vector<Scalar> v(preorder_->basis_size(), Scalar::zero(ring_));
    for (const auto& [pos, c] : coeffs_) v[pos] = c;
    return v;
  }

  static IncidenceElement from_vector(PreorderPtr preorder, RingDescriptor ring,
                                      const std::vector<Scalar>& v) {
    IncidenceElement out(std::move(preorder), ring);
    for (std::size_t i = 0; i < v.size(); ++i) out.set(i, v[i]);
    return out;
  }

  friend bool operator==(const IncidenceElement& a, const IncidenceElement& b) {
    return a.ring_ == b.ring_ && same_preorder(a.preorder_, b.preorder_) && a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [pos, c] : coeffs_) {
      auto [x, y] = preorder_->basis()[pos];
      if (!out.empty()) out += " + ";
      out += c.to_string() + "*e(" + preorder_->label(x) + "," + preorder_->label(y) + ")";
    }
    return out;
  }

 private:
  PreorderPtr preorder_;
  RingDescriptor ring_;
  std::map<std::size_t, Scalar> coeffs_;
};

namespace detail {

inline void check_compatible(const IncidenceElement& f, const IncidenceElement& g) {
  if (!(f.ring() == g.ring())) {
    throw Error(ErrorCode::ring_mismatch, f.ring().to_string() + " vs " + g.ring().to_string());
  }
  if (!same_preorder(f.preorder(), g.preorder())) {
    throw Error(ErrorCode::preorder_mismatch, "elements live on different preorders");
  }
}

}  // namespace detail

/// The indicator e_xy.
inline IncidenceElement basis_elem(const PreorderPtr& p, RingDescriptor ring, std::size_t x, std::size_t y) {
  IncidenceElement e(p, ring);
  e.set(x, y, Scalar::one(ring));
  return e;
}

inline IncidenceElement basis_elem(const PreorderPtr& p, RingDescriptor ring, std::string_view x,
                                   std::string_view y) {
  return basis_elem(p, ring, p->index_of(x), p->index_of(y));
}

inline IncidenceElement delta(const PreorderPtr& p, RingDescriptor ring) {
  IncidenceElement d(p, ring);
  for (std::size_t x = 0; x < p->size(); ++x) d.set(x, x, Scalar::one(ring));
  return d;
}

inline IncidenceElement zeta(const PreorderPtr& p, RingDescriptor ring) {
  IncidenceElement z(p, ring);
  for (std::size_t pos = 0; pos < p->basis_size(); ++pos) z.set(pos, Scalar::one(ring));
  return z;
}

/// Sum of c_k * f_k. An empty term list is rejected since it names no preorder.
inline IncidenceElement linear_combine(const std::vector<std::pair<Scalar, IncidenceElement>>& terms) {
  if (terms.empty()) throw Error(ErrorCode::preorder_mismatch, "linear_combine needs at least one term");
  IncidenceElement out(terms.front().second.preorder(), terms.front().second.ring());
  for (const auto& [c, f] : terms) {
    detail::check_compatible(out, f);
    if (!(c.ring() == out.ring())) {
      throw Error(ErrorCode::ring_mismatch, "coefficient ring " + c.ring().to_string());
    }
    for (const auto& [pos, v] : f.coeffs()) out.add_to(pos, c * v);
  }
  return out;
}

inline IncidenceElement operator+(const IncidenceElement& f, const IncidenceElement& g) {
  return linear_combine({{Scalar::one(f.ring()), f}, {Scalar::one(g.ring()), g}});
}

inline IncidenceElement operator-(const IncidenceElement& f, const IncidenceElement& g) {
  return linear_combine({{Scalar::one(f.ring()), f}, {-Scalar::one(g.ring()), g}});
}

inline IncidenceElement operator*(const Scalar& c, const IncidenceElement& f) {
  return linear_combine({{c, f}});
}

/// (fg)(x, y) = sum over x <= z <= y of f(x, z) g(z, y).
inline IncidenceElement convolve(const IncidenceElement& f, const IncidenceElement& g) {
  detail::check_compatible(f, g);
  const auto& P = f.poset();
  // g's entries grouped by their first coordinate
  std::vector<std::vector<std::pair<std::size_t, const Scalar*>>> rows(P.size());
  for (const auto& [pos, c] : g.coeffs()) rows[P.basis()[pos].x].emplace_back(P.basis()[pos].y, &c);
  std::map<std::size_t, Scalar> acc;
  for (const auto& [pos, a] : f.coeffs()) {
    auto [x, z] = P.basis()[pos];
    for (const auto& [y, b] : rows[z]) {
      auto target = P.pair_index(x, y);
      auto [it, fresh] = acc.try_emplace(target, a * *b);
      if (!fresh) it->second += a * *b;
    }
  }
  IncidenceElement out(f.preorder(), f.ring());
  for (const auto& [pos, c] : acc) out.set(pos, c);
  return out;
}

inline IncidenceElement operator*(const IncidenceElement& f, const IncidenceElement& g) {
  return convolve(f, g);
}

/// [g, f] = gf - fg.
inline IncidenceElement commutator(const IncidenceElement& g, const IncidenceElement& f) {
  return convolve(g, f) - convolve(f, g);
}

namespace detail {

using ScalarMatrix = std::vector<std::vector<Scalar>>;

/// Inverse of a small square matrix over the ring. Fields use Gauss-Jordan;
/// Z and Z/n go through the integer adjugate, which reduces correctly mod n.
inline std::optional<ScalarMatrix> invert_block(const ScalarMatrix& a, const RingDescriptor& ring) {
  const std::size_t k = a.size();
  if (ring.kind() == RingKind::rationals) {
    std::vector<std::vector<mpq_class>> m(k, std::vector<mpq_class>(2 * k));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) m[i][j] = a[i][j].value();
      m[i][k + i] = 1;
    }
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t piv = c;
      while (piv < k && sgn(m[piv][c]) == 0) ++piv;
      if (piv == k) return std::nullopt;
      std::swap(m[piv], m[c]);
      mpq_class inv_p = 1 / m[c][c];
      for (auto& v : m[c]) v *= inv_p;
      for (std::size_t r = 0; r < k; ++r) {
        if (r == c || sgn(m[r][c]) == 0) continue;
        mpq_class f = m[r][c];
        for (std::size_t j = 0; j < 2 * k; ++j) m[r][j] -= f * m[c][j];
      }
    }
    ScalarMatrix out(k, std::vector<Scalar>(k));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) out[i][j] = Scalar(ring, m[i][k + j]);
    }
    return out;
  }
  // Integer lift: det and adjugate over Z, via the rational inverse.
  std::vector<std::vector<mpq_class>> m(k, std::vector<mpq_class>(2 * k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) m[i][j] = a[i][j].value();
    m[i][k + i] = 1;
  }
  mpq_class det = 1;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    while (piv < k && sgn(m[piv][c]) == 0) ++piv;
    if (piv == k) return std::nullopt;  // det = 0 over Z, hence 0 in every quotient
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    mpq_class inv_p = 1 / m[c][c];
    for (auto& v : m[c]) v *= inv_p;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c || sgn(m[r][c]) == 0) continue;
      mpq_class f = m[r][c];
      for (std::size_t j = 0; j < 2 * k; ++j) m[r][j] -= f * m[c][j];
    }
  }
  Scalar det_s(ring, det);  // det is an integer
  if (!det_s.is_unit()) return std::nullopt;
  Scalar det_inv = det_s.inverse();
  ScalarMatrix out(k, std::vector<Scalar>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      mpq_class adj = m[i][k + j] * det;  // integral
      out[i][j] = Scalar(ring, adj) * det_inv;
    }
  }
  return out;
}

}  // namespace detail

/// Two-sided convolution inverse. Equivalence classes are processed in a
/// topological order; each diagonal class block is inverted as a matrix over
/// R and the strictly upper blocks follow by back-substitution.
inline IncidenceElement inverse(const IncidenceElement& f) {
  const auto& P = f.poset();
  const auto& ring = f.ring();
  auto classes = equivalence_classes(P);
  const std::size_t m = classes.size();
  std::vector<std::size_t> class_of(P.size());
  for (std::size_t c = 0; c < m; ++c) {
    for (auto x : classes[c]) class_of[x] = c;
  }
  // linear extension of the class order: count classes strictly below
  std::vector<std::size_t> order(m);
  for (std::size_t c = 0; c < m; ++c) order[c] = c;
  auto below_count = [&](std::size_t c) {
    std::size_t n = 0;
    for (std::size_t d = 0; d < m; ++d) {
      if (d != c && P.leq(classes[d][0], classes[c][0])) ++n;
    }
    return n;
  };
  std::vector<std::size_t> rank(m);
  for (std::size_t c = 0; c < m; ++c) rank[c] = below_count(c);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return rank[a] < rank[b]; });

  std::vector<detail::ScalarMatrix> diag_inv(m);
  for (std::size_t c = 0; c < m; ++c) {
    const auto& cls = classes[c];
    detail::ScalarMatrix block(cls.size(), std::vector<Scalar>(cls.size()));
    for (std::size_t i = 0; i < cls.size(); ++i) {
      for (std::size_t j = 0; j < cls.size(); ++j) block[i][j] = f(cls[i], cls[j]);
    }
    auto inv = detail::invert_block(block, ring);
    if (!inv) {
      std::string names;
      for (auto x : cls) names += (names.empty() ? "" : ",") + P.label(x);
      throw Error(ErrorCode::not_invertible, "diagonal block of class {" + names + "} is not invertible over " +
                                                 ring.to_string());
    }
    diag_inv[c] = std::move(*inv);
  }

  IncidenceElement h(f.preorder(), ring);
  // h(x, y) for x in class C, y in class D, C <= D:
  //   H_CD = F_CC^{-1} (delta_CD - sum_{C < E <= D} F_CE H_ED)
  for (std::size_t oi = m; oi-- > 0;) {
    const std::size_t C = order[oi];
    const auto& cc = classes[C];
    for (std::size_t oj = oi; oj < m; ++oj) {
      const std::size_t D = order[oj];
      const auto& dc = classes[D];
      if (!P.leq(cc[0], dc[0])) continue;
      // rhs[i][j] for x = cc[i], y = dc[j]
      detail::ScalarMatrix rhs(cc.size(), std::vector<Scalar>(dc.size(), Scalar::zero(ring)));
      if (C == D) {
        for (std::size_t i = 0; i < cc.size(); ++i) rhs[i][i] = Scalar::one(ring);
      } else {
        for (std::size_t i = 0; i < cc.size(); ++i) {
          for (std::size_t j = 0; j < dc.size(); ++j) {
            Scalar s = Scalar::zero(ring);
            for (std::size_t z = 0; z < P.size(); ++z) {
              if (class_of[z] == C || !P.leq(cc[i], z) || !P.leq(z, dc[j])) continue;
              s += f(cc[i], z) * h(z, dc[j]);
            }
            rhs[i][j] = -s;
          }
        }
      }
      const auto& inv = diag_inv[C];
      for (std::size_t i = 0; i < cc.size(); ++i) {
        for (std::size_t j = 0; j < dc.size(); ++j) {
          Scalar s = Scalar::zero(ring);
          for (std::size_t t = 0; t < cc.size(); ++t) s += inv[i][t] * rhs[t][j];
          h.set(cc[i], dc[j], s);
        }
      }
    }
  }
  return h;
}

/// mu = zeta^{-1}.
inline IncidenceElement mobius(const PreorderPtr& p, RingDescriptor ring) { return inverse(zeta(p, ring)); }

}  // namespace incidence
