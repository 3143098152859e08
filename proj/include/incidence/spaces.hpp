#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "incidence/element.hpp"
#include "incidence/error.hpp"
#include "incidence/exactla.hpp"
#include "incidence/operator.hpp"
#include "incidence/preorder.hpp"
#include "incidence/scalar.hpp"
#include "incidence/transitive.hpp"

namespace incidence {

enum class BasisKind { field_basis, lattice_generators };

/// A space of operators: generators plus their flattened span.
struct OperatorSpace {
  PreorderPtr preorder;
  RingDescriptor ring;
  std::vector<LinearOperator> generators;
  BasisKind basis_kind = BasisKind::field_basis;
  SpanBasis span;  // generators flattened source-major, target-minor

  std::size_t rank() const noexcept { return generators.size(); }
};

/// D = Inn_g + Delta_f.
struct Decomposition {
  IncidenceElement g;
  TransitiveMap f;
};

namespace detail {

inline void require_space_ring(const RingDescriptor& ring) {
  if (ring.kind() == RingKind::integers) return;
  engine_for(ring);  // throws UnsupportedRing for composite Z/n
}

/// Linear equations with small integer coefficients, one block per target
/// basis position. Unknown u = source * |B| + target stands for C^{source}_{target}.
class LawAssembler {
 public:
  explicit LawAssembler(const Preorder& p) : p_(p), n_(p.basis_size()) {}

  /// Adds D(e_a e_b) - D(e_a) e_b - e_a D(e_b) to the current block.
  void add_law(std::size_t a, std::size_t b) {
    auto [i, j] = p_.basis()[a];
    auto [k, l] = p_.basis()[b];
    if (j == k) {
      auto prod = p_.pair_index(i, l);
      for (std::size_t t = 0; t < n_; ++t) add(t, prod * n_ + t, 1);
    }
    // D(e_ij) e_kl = sum_x C^{ij}_{xk} e_xl
    for (std::size_t x = 0; x < p_.size(); ++x) {
      if (!p_.leq(x, k)) continue;
      add(p_.pair_index(x, l), a * n_ + p_.pair_index(x, k), -1);
    }
    // e_ij D(e_kl) = sum_y C^{kl}_{jy} e_iy
    for (std::size_t y = 0; y < p_.size(); ++y) {
      if (!p_.leq(j, y)) continue;
      add(p_.pair_index(i, y), b * n_ + p_.pair_index(j, y), -1);
    }
  }

  /// Emits the current block as equations and clears it.
  void flush(ExactMatrix& m) {
    for (auto& [t, row] : block_) {
      ExactMatrix::Row r;
      for (auto [u, c] : row) {
        if (c != 0) r.emplace_back(u, Scalar(m.ring(), c));
      }
      if (!r.empty()) m.add_row(std::move(r));
    }
    block_.clear();
  }

 private:
  void add(std::size_t target, std::size_t unknown, long c) { block_[target][unknown] += c; }

  const Preorder& p_;
  std::size_t n_;
  std::map<std::size_t, std::map<std::size_t, long>> block_;
};

inline OperatorSpace operator_space(const PreorderPtr& p, const RingDescriptor& ring, SpanBasis span) {
  OperatorSpace out{p, ring, {}, ring.kind() == RingKind::integers ? BasisKind::lattice_generators : BasisKind::field_basis,
                    std::move(span)};
  for (const auto& v : out.span.vectors) out.generators.push_back(LinearOperator::from_vector(p, ring, v));
  return out;
}

/// Matrix of g -> Inn_g: rows indexed by flattened operator coordinates,
/// columns by the basis position of g.
inline ExactMatrix inner_map_matrix(const PreorderPtr& p, const RingDescriptor& ring) {
  const auto n = p->basis_size();
  std::vector<std::map<std::size_t, Scalar>> rows(n * n);
  for (std::size_t b = 0; b < n; ++b) {
    auto [x, y] = p->basis()[b];
    auto inn = inner_operator(basis_elem(p, ring, x, y));
    for (const auto& [k, c] : inn.coeffs()) rows[k.first * n + k.second].emplace(b, c);
  }
  ExactMatrix m(ring, n);
  for (auto& r : rows) m.add_row(ExactMatrix::Row(r.begin(), r.end()));
  return m;
}

}  // namespace detail

/// All derivations: the kernel of the derivation law D(e e') = D(e) e' + e D(e')
/// imposed on every ordered pair of basis elements.
inline OperatorSpace derivation_space(const PreorderPtr& p, const RingDescriptor& ring) {
  detail::require_space_ring(ring);
  const auto n = p->basis_size();
  ExactMatrix m(ring, n * n);
  detail::LawAssembler law(*p);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      law.add_law(a, b);
      law.flush(m);
    }
  }
  return detail::operator_space(p, ring, kernel(m));
}

/// All Jordan derivations: squares of basis elements plus symmetrized pairs.
inline OperatorSpace jordan_space(const PreorderPtr& p, const RingDescriptor& ring) {
  detail::require_space_ring(ring);
  const auto n = p->basis_size();
  ExactMatrix m(ring, n * n);
  detail::LawAssembler law(*p);
  for (std::size_t a = 0; a < n; ++a) {
    law.add_law(a, a);
    law.flush(m);
    for (std::size_t b = a + 1; b < n; ++b) {
      law.add_law(a, b);
      law.add_law(b, a);
      law.flush(m);
    }
  }
  return detail::operator_space(p, ring, kernel(m));
}

/// Solutions of the cocycle law, as vectors over basis positions.
inline SpanBasis transitive_space(const PreorderPtr& p, const RingDescriptor& ring) {
  detail::require_space_ring(ring);
  const auto& P = *p;
  ExactMatrix m(ring, P.basis_size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    for (std::size_t j = 0; j < P.size(); ++j) {
      if (!P.leq(i, j)) continue;
      for (std::size_t k = 0; k < P.size(); ++k) {
        if (!P.leq(j, k)) continue;
        ExactMatrix::Row r{{P.pair_index(i, j), Scalar::one(ring)},
                           {P.pair_index(j, k), Scalar::one(ring)},
                           {P.pair_index(i, k), -Scalar::one(ring)}};
        m.add_row(std::move(r));
      }
    }
  }
  return kernel(m);
}

/// Span of the trivial maps (i, j) -> sigma(i) - sigma(j).
inline SpanBasis trivial_space(const PreorderPtr& p, const RingDescriptor& ring) {
  detail::require_space_ring(ring);
  std::vector<std::vector<Scalar>> gens;
  for (std::size_t x = 0; x < p->size(); ++x) {
    SigmaWitness w{std::vector<Scalar>(p->size(), Scalar::zero(ring))};
    w.sigma[x] = Scalar::one(ring);
    gens.push_back(from_sigma(p, ring, w).values().to_vector());
  }
  return span_of(ring, p->basis_size(), gens);
}

/// dim(transitive maps) - dim(trivial maps).
inline std::size_t cohomology_rank(const PreorderPtr& p, const RingDescriptor& ring) {
  return transitive_space(p, ring).size() - trivial_space(p, ring).size();
}

/// Inner derivations, spanned by Inn_{e_xy} over the basis.
inline OperatorSpace inner_space(const PreorderPtr& p, const RingDescriptor& ring) {
  detail::require_space_ring(ring);
  std::vector<std::vector<Scalar>> gens;
  for (auto [x, y] : p->basis()) gens.push_back(inner_operator(basis_elem(p, ring, x, y)).to_vector());
  auto n = p->basis_size();
  return detail::operator_space(p, ring, span_of(ring, n * n, gens));
}

/// The center: kernel of g -> Inn_g, as vectors over basis positions.
inline SpanBasis center(const PreorderPtr& p, const RingDescriptor& ring) {
  detail::require_space_ring(ring);
  return kernel(detail::inner_map_matrix(p, ring));
}

/// Spanned by Inn_{e_xy} for (x, y) in B together with Delta_f for f ranging
/// over a basis of the transitive maps.
inline OperatorSpace derivation_space_structured(const PreorderPtr& p, const RingDescriptor& ring) {
  detail::require_space_ring(ring);
  std::vector<std::vector<Scalar>> gens;
  for (auto [x, y] : p->basis()) gens.push_back(inner_operator(basis_elem(p, ring, x, y)).to_vector());
  for (const auto& f : transitive_space(p, ring).vectors) {
    auto map = TransitiveMap(IncidenceElement::from_vector(p, ring, f));
    gens.push_back(transitive_operator(map).to_vector());
  }
  auto n = p->basis_size();
  return detail::operator_space(p, ring, span_of(ring, n * n, gens));
}

/// Splits a derivation as Inn_g + Delta_f with f(i,j) = C^{ij}_{ij} and
/// g(i,j) = C^{jj}_{ij} off the diagonal (g vanishes on the diagonal).
inline Decomposition decompose(const LinearOperator& d) {
  if (!is_derivation(d)) throw Error(ErrorCode::not_a_derivation, "decompose needs a derivation");
  const auto& P = d.poset();
  IncidenceElement f(d.preorder(), d.ring());
  IncidenceElement g(d.preorder(), d.ring());
  for (std::size_t s = 0; s < P.basis_size(); ++s) {
    auto [i, j] = P.basis()[s];
    f.set(s, d.coefficient(s, s));
    if (i != j) g.set(s, d.coefficient(P.pair_index(j, j), s));
  }
  return Decomposition{std::move(g), TransitiveMap(std::move(f))};
}

/// Some g with Inn_g = D, or nullopt when D is not inner.
inline std::optional<IncidenceElement> is_inner(const LinearOperator& d) {
  if (!is_derivation(d)) throw Error(ErrorCode::not_a_derivation, "is_inner needs a derivation");
  detail::require_space_ring(d.ring());
  auto m = detail::inner_map_matrix(d.preorder(), d.ring());
  auto x = solve(m, d.to_vector());
  if (!x) return std::nullopt;
  return IncidenceElement::from_vector(d.preorder(), d.ring(), *x);
}

}  // namespace incidence
