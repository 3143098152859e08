#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "incidence/detail/elimination.hpp"
#include "incidence/error.hpp"
#include "incidence/scalar.hpp"

namespace incidence {

/// A matrix over a RingDescriptor, stored as sparse rows.
class ExactMatrix {
 public:
  using Row = std::vector<std::pair<std::size_t, Scalar>>;

  ExactMatrix(RingDescriptor ring, std::size_t cols) : ring_(ring), cols_(cols) {}

  static ExactMatrix from_dense(RingDescriptor ring, std::size_t cols,
                                const std::vector<std::vector<Scalar>>& rows) {
    ExactMatrix m(ring, cols);
    for (const auto& r : rows) m.add_dense_row(r);
    return m;
  }

  /// Integer entries, mapped into `ring`.
  static ExactMatrix from_integers(RingDescriptor ring, std::size_t cols,
                                   const std::vector<std::vector<long>>& rows) {
    ExactMatrix m(ring, cols);
    for (const auto& r : rows) {
      std::vector<Scalar> s;
      for (long v : r) s.emplace_back(ring, v);
      m.add_dense_row(s);
    }
    return m;
  }

  void add_row(Row entries) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Row clean;
    for (auto& [c, v] : entries) {
      if (c >= cols_) throw Error(ErrorCode::dimension_mismatch, "column index out of range");
      if (!(v.ring() == ring_)) throw Error(ErrorCode::ring_mismatch, "entry ring " + v.ring().to_string());
      if (!clean.empty() && clean.back().first == c) {
        clean.back().second += v;
      } else {
        clean.emplace_back(c, v);
      }
    }
    std::erase_if(clean, [](const auto& e) { return e.second.is_zero(); });
    rows_.push_back(std::move(clean));
  }

  void add_dense_row(const std::vector<Scalar>& values) {
    if (values.size() != cols_) throw Error(ErrorCode::dimension_mismatch, "row length differs from column count");
    Row r;
    for (std::size_t c = 0; c < values.size(); ++c) {
      if (!values[c].is_zero()) r.emplace_back(c, values[c]);
    }
    add_row(std::move(r));
  }

  const RingDescriptor& ring() const noexcept { return ring_; }
  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  const Row& row(std::size_t i) const { return rows_.at(i); }
  const std::vector<Row>& all_rows() const noexcept { return rows_; }

  Scalar at(std::size_t r, std::size_t c) const {
    for (const auto& [col, v] : rows_.at(r)) {
      if (col == c) return v;
    }
    return Scalar::zero(ring_);
  }

 private:
  RingDescriptor ring_;
  std::size_t cols_;
  std::vector<Row> rows_;
};

/// Vectors spanning a subspace (over a field: independent) or a lattice
/// (over Z: a basis of a saturated lattice when produced by `kernel`).
struct SpanBasis {
  RingDescriptor ring;
  std::size_t dim = 0;
  std::vector<std::vector<Scalar>> vectors;

  std::size_t size() const noexcept { return vectors.size(); }
  bool empty() const noexcept { return vectors.empty(); }
};

namespace detail {

enum class Engine { integer, modular };

inline Engine engine_for(const RingDescriptor& ring) {
  switch (ring.kind()) {
    case RingKind::integers:
    case RingKind::rationals: return Engine::integer;
    case RingKind::prime_field: return Engine::modular;
    case RingKind::modular:
      if (RingDescriptor::is_prime(ring.modulus())) return Engine::modular;
      throw Error(ErrorCode::unsupported_ring,
                  "linear algebra over " + ring.to_string() + " (composite modulus) is not supported");
  }
  throw Error(ErrorCode::unsupported_ring, ring.to_string());
}

/// Scales a row of rationals by the lcm of its denominators.
inline SparseRow<mpz_class> to_integer_row(const ExactMatrix::Row& row) {
  mpz_class l = 1;
  for (const auto& [c, v] : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.value().get_den_mpz_t());
  SparseRow<mpz_class> out;
  out.reserve(row.size());
  for (const auto& [c, v] : row) {
    mpz_class x = v.value().get_num() * (l / v.value().get_den());
    out.emplace_back(c, std::move(x));
  }
  return out;
}

inline SparseRow<std::uint64_t> to_modular_row(const ExactMatrix::Row& row) {
  SparseRow<std::uint64_t> out;
  out.reserve(row.size());
  for (const auto& [c, v] : row) out.emplace_back(c, v.integer().get_ui());
  return out;
}

inline ExactMatrix::Row sparse_of(const std::vector<Scalar>& v) {
  ExactMatrix::Row r;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) r.emplace_back(i, v[i]);
  }
  return r;
}

inline GaussJordan<IntegerDomain> eliminate_integer(const std::vector<ExactMatrix::Row>& rows, std::size_t cols) {
  GaussJordan<IntegerDomain> gj(cols);
  for (const auto& r : rows) gj.insert(to_integer_row(r));
  return gj;
}

inline GaussJordan<ModularDomain> eliminate_modular(const std::vector<ExactMatrix::Row>& rows, std::size_t cols,
                                                    std::uint64_t p) {
  GaussJordan<ModularDomain> gj(cols, ModularDomain{p});
  for (const auto& r : rows) gj.insert(to_modular_row(r));
  return gj;
}

inline std::size_t rank_of(const RingDescriptor& ring, const std::vector<ExactMatrix::Row>& rows, std::size_t cols) {
  if (engine_for(ring) == Engine::modular) return eliminate_modular(rows, cols, ring.modulus()).rank();
  return eliminate_integer(rows, cols).rank();
}

inline IntMatrix to_int_matrix(const std::vector<std::vector<Scalar>>& vectors) {
  IntMatrix out;
  for (const auto& v : vectors) {
    std::vector<mpz_class> row;
    row.reserve(v.size());
    for (const auto& s : v) row.push_back(s.integer());
    out.push_back(std::move(row));
  }
  return out;
}

inline std::vector<std::vector<Scalar>> from_int_matrix(const RingDescriptor& ring, const IntMatrix& m) {
  std::vector<std::vector<Scalar>> out;
  for (const auto& r : m) {
    std::vector<Scalar> v;
    v.reserve(r.size());
    for (const auto& x : r) v.emplace_back(ring, x);
    out.push_back(std::move(v));
  }
  return out;
}

inline void check_span_pair(const SpanBasis& a, const SpanBasis& b) {
  if (!(a.ring == b.ring)) throw Error(ErrorCode::ring_mismatch, a.ring.to_string() + " vs " + b.ring.to_string());
  if (a.dim != b.dim) {
    throw Error(ErrorCode::dimension_mismatch,
                "ambient dimensions " + std::to_string(a.dim) + " and " + std::to_string(b.dim));
  }
}

inline std::vector<ExactMatrix::Row> sparse_rows(const std::vector<std::vector<Scalar>>& vs, std::size_t dim) {
  std::vector<ExactMatrix::Row> out;
  for (const auto& v : vs) {
    if (v.size() != dim) throw Error(ErrorCode::dimension_mismatch, "vector length differs from span dimension");
    out.push_back(sparse_of(v));
  }
  return out;
}

}  // namespace detail

inline std::size_t rank(const ExactMatrix& m) {
  if (m.ring().kind() == RingKind::integers) return detail::rank_of(RingDescriptor::rationals(), m.all_rows(), m.cols());
  return detail::rank_of(m.ring(), m.all_rows(), m.cols());
}

/// Canonical basis of the span of `vectors`: reduced row echelon rows over a
/// field, Hermite normal form rows over Z (the lattice they generate).
inline SpanBasis span_of(const RingDescriptor& ring, std::size_t dim, const std::vector<std::vector<Scalar>>& vectors) {
  SpanBasis out{ring, dim, {}};
  auto rows = detail::sparse_rows(vectors, dim);
  if (ring.kind() == RingKind::integers) {
    out.vectors = detail::from_int_matrix(ring, detail::hermite_rows(detail::to_int_matrix(vectors), dim));
    return out;
  }
  if (detail::engine_for(ring) == detail::Engine::modular) {
    auto gj = detail::eliminate_modular(rows, dim, ring.modulus());
    for (const auto* r : gj.echelon()) {
      std::vector<Scalar> v(dim, Scalar::zero(ring));
      for (const auto& [c, x] : *r) v[c] = Scalar(ring, mpz_class(static_cast<unsigned long>(x)));
      out.vectors.push_back(std::move(v));
    }
    return out;
  }
  auto gj = detail::eliminate_integer(rows, dim);
  for (const auto* r : gj.echelon()) {
    std::vector<Scalar> v(dim, Scalar::zero(ring));
    const mpz_class& d = r->front().second;
    for (const auto& [c, x] : *r) v[c] = Scalar(ring, mpq_class(x, d));
    out.vectors.push_back(std::move(v));
  }
  return out;
}

/// Basis of {v | M v = 0}. Over a field the basis is read off the reduced row
/// echelon form, one vector per free column. Over Z the result is a basis of
/// the saturated lattice of all integer solutions, in Hermite normal form.
inline SpanBasis kernel(const ExactMatrix& m) {
  const auto& ring = m.ring();
  const std::size_t n = m.cols();
  SpanBasis out{ring, n, {}};
  if (detail::engine_for(ring) == detail::Engine::modular) {
    auto gj = detail::eliminate_modular(m.all_rows(), n, ring.modulus());
    const std::uint64_t p = ring.modulus();
    std::vector<std::size_t> slot(n, static_cast<std::size_t>(-1));
    std::size_t k = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (!gj.is_pivot(c)) slot[c] = k++;
    }
    std::vector<std::vector<Scalar>> vs(k, std::vector<Scalar>(n, Scalar::zero(ring)));
    for (std::size_t c = 0; c < n; ++c) {
      if (!gj.is_pivot(c)) vs[slot[c]][c] = Scalar::one(ring);
    }
    for (const auto* r : gj.echelon()) {
      const std::size_t pc = r->front().first;
      for (const auto& [c, x] : *r) {
        if (c == pc) continue;
        vs[slot[c]][pc] = Scalar(ring, mpz_class(static_cast<unsigned long>((p - x) % p)));
      }
    }
    out.vectors = std::move(vs);
    return out;
  }

  auto gj = detail::eliminate_integer(m.all_rows(), n);
  std::vector<std::size_t> free_cols;
  std::vector<std::size_t> slot(n, static_cast<std::size_t>(-1));
  for (std::size_t c = 0; c < n; ++c) {
    if (!gj.is_pivot(c)) {
      slot[c] = free_cols.size();
      free_cols.push_back(c);
    }
  }
  const std::size_t k = free_cols.size();
  // rational kernel basis: v_f[f] = 1, v_f[pc] = -R[p][f] / d_p
  std::vector<std::vector<mpq_class>> vs(k, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < k; ++i) vs[i][free_cols[i]] = 1;
  auto echelon = gj.echelon();
  for (const auto* r : echelon) {
    const std::size_t pc = r->front().first;
    const mpz_class& d = r->front().second;
    for (const auto& [c, x] : *r) {
      if (c != pc) {
        vs[slot[c]][pc] = mpq_class(-x, d);
        vs[slot[c]][pc].canonicalize();
      }
    }
  }
  if (ring.kind() == RingKind::rationals) {
    for (auto& v : vs) {
      std::vector<Scalar> s;
      s.reserve(n);
      for (auto& x : v) s.emplace_back(ring, x);
      out.vectors.push_back(std::move(s));
    }
    return out;
  }

  // Over Z: integer points of the rational kernel. t (free coordinates) gives
  // an integer vector iff sum_f R[p][f] t_f = 0 mod d_p for every pivot row.
  detail::IntMatrix constraints;
  std::vector<mpz_class> moduli;
  for (const auto* r : echelon) {
    const mpz_class& d = r->front().second;
    if (d == 1) continue;
    std::vector<mpz_class> row(k, 0);
    bool any = false;
    for (const auto& [c, x] : *r) {
      if (c == r->front().first) continue;
      mpz_fdiv_r(row[slot[c]].get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
      if (sgn(row[slot[c]]) != 0) any = true;
    }
    if (any) {
      constraints.push_back(std::move(row));
      moduli.push_back(d);
    }
  }
  detail::IntMatrix t_basis;
  if (constraints.empty()) {
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<mpz_class> t(k, 0);
      t[i] = 1;
      t_basis.push_back(std::move(t));
    }
  } else {
    // integer kernel of [C | diag(d)], projected to the first k coordinates
    const std::size_t rc = constraints.size();
    detail::IntMatrix aug(rc, std::vector<mpz_class>(k + rc, 0));
    for (std::size_t i = 0; i < rc; ++i) {
      for (std::size_t j = 0; j < k; ++j) aug[i][j] = constraints[i][j];
      aug[i][k + i] = moduli[i];
    }
    auto ch = detail::column_hermite(aug, k + rc);
    detail::IntMatrix gens;
    for (std::size_t j = ch.rank; j < k + rc; ++j) {
      std::vector<mpz_class> t(k);
      for (std::size_t i = 0; i < k; ++i) t[i] = ch.U[i][j];
      gens.push_back(std::move(t));
    }
    t_basis = detail::hermite_rows(std::move(gens), k);
  }
  detail::IntMatrix lattice;
  for (const auto& t : t_basis) {
    std::vector<mpq_class> w(n, 0);
    for (std::size_t i = 0; i < k; ++i) {
      if (sgn(t[i]) == 0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (sgn(vs[i][c]) != 0) w[c] += t[i] * vs[i][c];
      }
    }
    std::vector<mpz_class> wi(n);
    for (std::size_t c = 0; c < n; ++c) {
      w[c].canonicalize();
      wi[c] = w[c].get_num();  // integral by construction
    }
    lattice.push_back(std::move(wi));
  }
  out.vectors = detail::from_int_matrix(ring, detail::hermite_rows(std::move(lattice), n));
  return out;
}

inline std::size_t span_rank(const SpanBasis& a) {
  auto ring = a.ring.kind() == RingKind::integers ? RingDescriptor::rationals() : a.ring;
  return detail::rank_of(ring, detail::sparse_rows(a.vectors, a.dim), a.dim);
}

/// Same subspace over a field; same lattice over Z.
inline bool span_equal(const SpanBasis& a, const SpanBasis& b) {
  detail::check_span_pair(a, b);
  if (a.ring.kind() == RingKind::integers) {
    return detail::hermite_rows(detail::to_int_matrix(a.vectors), a.dim) ==
           detail::hermite_rows(detail::to_int_matrix(b.vectors), b.dim);
  }
  detail::engine_for(a.ring);
  auto ra = span_rank(a);
  if (ra != span_rank(b)) return false;
  SpanBasis both{a.ring, a.dim, a.vectors};
  both.vectors.insert(both.vectors.end(), b.vectors.begin(), b.vectors.end());
  return span_rank(both) == ra;
}

/// v is an R-linear combination of the vectors of `a`.
inline bool in_span(const std::vector<Scalar>& v, const SpanBasis& a) {
  if (v.size() != a.dim) throw Error(ErrorCode::dimension_mismatch, "vector length differs from span dimension");
  for (const auto& x : v) {
    if (!(x.ring() == a.ring)) throw Error(ErrorCode::ring_mismatch, x.ring().to_string() + " vs " + a.ring.to_string());
  }
  if (a.ring.kind() == RingKind::integers) {
    auto h = detail::hermite_rows(detail::to_int_matrix(a.vectors), a.dim);
    std::vector<mpz_class> w;
    for (const auto& x : v) w.push_back(x.integer());
    for (const auto& row : h) {
      std::size_t pc = 0;
      while (sgn(row[pc]) == 0) ++pc;
      if (!mpz_divisible_p(w[pc].get_mpz_t(), row[pc].get_mpz_t())) return false;
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), w[pc].get_mpz_t(), row[pc].get_mpz_t());
      for (std::size_t c = pc; c < a.dim; ++c) w[c] -= q * row[c];
    }
    return detail::is_zero_vector(w);
  }
  detail::engine_for(a.ring);
  SpanBasis with{a.ring, a.dim, a.vectors};
  with.vectors.push_back(v);
  return span_rank(with) == span_rank(a);
}

/// Some x with M x = b, or nullopt when none exists in R^cols.
inline std::optional<std::vector<Scalar>> solve(const ExactMatrix& m, const std::vector<Scalar>& b) {
  const auto& ring = m.ring();
  const std::size_t n = m.cols();
  if (b.size() != m.rows()) throw Error(ErrorCode::dimension_mismatch, "right-hand side length differs from row count");
  if (ring.kind() == RingKind::integers) {
    detail::IntMatrix a(m.rows(), std::vector<mpz_class>(n, 0));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (const auto& [c, v] : m.row(r)) a[r][c] = v.integer();
    }
    std::vector<mpz_class> rhs;
    for (const auto& x : b) rhs.push_back(x.integer());
    auto x = detail::solve_integer(a, n, rhs);
    if (!x) return std::nullopt;
    std::vector<Scalar> out;
    for (const auto& xi : *x) out.emplace_back(ring, xi);
    return out;
  }
  std::vector<ExactMatrix::Row> aug = m.all_rows();
  for (std::size_t r = 0; r < aug.size(); ++r) {
    if (!b[r].is_zero()) aug[r].emplace_back(n, b[r]);
  }
  std::vector<Scalar> x(n, Scalar::zero(ring));
  if (detail::engine_for(ring) == detail::Engine::modular) {
    auto gj = detail::eliminate_modular(aug, n + 1, ring.modulus());
    if (gj.is_pivot(n)) return std::nullopt;
    for (const auto* r : gj.echelon()) {
      if (r->back().first == n) x[r->front().first] = Scalar(ring, mpz_class(static_cast<unsigned long>(r->back().second)));
    }
    return x;
  }
  auto gj = detail::eliminate_integer(aug, n + 1);
  if (gj.is_pivot(n)) return std::nullopt;
  for (const auto* r : gj.echelon()) {
    if (r->back().first == n) x[r->front().first] = Scalar(ring, mpq_class(r->back().second, r->front().second));
  }
  return x;
}

}  // namespace incidence
