#pragma once

// Elimination engines behind exactla: sparse Gauss-Jordan over an integral
// domain policy (fraction-free integers, or Z/p), and dense Hermite forms over Z.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace incidence::detail {

template <class T>
using SparseRow = std::vector<std::pair<std::size_t, T>>;

/// Integers with rows kept primitive (content 1, positive leading entry).
struct IntegerDomain {
  using value_type = mpz_class;

  static bool is_zero(const mpz_class& v) { return sgn(v) == 0; }
  static mpz_class one() { return 1; }

  /// a*x - b*y
  static mpz_class axmby(const mpz_class& a, const mpz_class& x, const mpz_class& b, const mpz_class& y) {
    return a * x - b * y;
  }

  static void normalize(SparseRow<mpz_class>& row) {
    if (row.empty()) return;
    mpz_class g = 0;
    for (const auto& [c, v] : row) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      if (g == 1) break;
    }
    if (sgn(row.front().second) < 0) g = -g;
    if (g != 1) {
      for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
  }
};

/// Z/p for prime p, rows normalized to leading entry 1.
struct ModularDomain {
  using value_type = std::uint64_t;
  std::uint64_t p;

  bool is_zero(std::uint64_t v) const { return v == 0; }
  std::uint64_t one() const { return 1; }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  }

  std::uint64_t axmby(std::uint64_t a, std::uint64_t x, std::uint64_t b, std::uint64_t y) const {
    std::uint64_t l = mul(a, x), r = mul(b, y);
    return l >= r ? l - r : l + (p - r);
  }

  std::uint64_t inv(std::uint64_t a) const {
    // Fermat; p is prime
    std::uint64_t result = 1, base = a % p, e = p - 2;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  void normalize(SparseRow<std::uint64_t>& row) const {
    if (row.empty() || row.front().second == 1) return;
    std::uint64_t s = inv(row.front().second);
    for (auto& [c, v] : row) v = mul(v, s);
  }
};

/// Gauss-Jordan elimination fed one sparse row at a time. Every stored row is
/// normalized and has zeros in all other rows' pivot columns.
template <class Domain>
class GaussJordan {
 public:
  using T = typename Domain::value_type;
  using Row = SparseRow<T>;

  explicit GaussJordan(std::size_t cols, Domain dom = Domain{})
      : dom_(std::move(dom)), row_of_col_(cols, npos) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Returns true when the row was independent of the rows inserted so far.
  bool insert(Row row) {
    std::vector<std::size_t> hits;
    for (const auto& [c, v] : row) {
      if (row_of_col_[c] != npos) hits.push_back(c);
    }
    for (auto c : hits) {
      auto it = std::lower_bound(row.begin(), row.end(), c,
                                 [](const auto& e, std::size_t col) { return e.first < col; });
      if (it == row.end() || it->first != c) continue;
      const Row& piv = rows_[row_of_col_[c]];
      T a = it->second;
      row = combine(piv.front().second, row, a, piv);
      dom_.normalize(row);
    }
    if (row.empty()) return false;
    dom_.normalize(row);
    const std::size_t pc = row.front().first;
    const T d = row.front().second;
    for (auto& other : rows_) {
      auto it = std::lower_bound(other.begin(), other.end(), pc,
                                 [](const auto& e, std::size_t col) { return e.first < col; });
      if (it == other.end() || it->first != pc) continue;
      T a = it->second;
      other = combine(d, other, a, row);
      dom_.normalize(other);
    }
    row_of_col_[pc] = rows_.size();
    pivots_.push_back(pc);
    rows_.push_back(std::move(row));
    return true;
  }

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return row_of_col_.size(); }
  bool is_pivot(std::size_t col) const { return row_of_col_[col] != npos; }

  /// Stored rows ordered by pivot column (reduced row echelon order).
  std::vector<const Row*> echelon() const {
    std::vector<std::size_t> idx(rows_.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return pivots_[a] < pivots_[b]; });
    std::vector<const Row*> out;
    for (auto i : idx) out.push_back(&rows_[i]);
    return out;
  }

  const Domain& domain() const noexcept { return dom_; }

 private:
  /// a*x - b*y over sparse rows.
  Row combine(const T& a, const Row& x, const T& b, const Row& y) const {
    Row out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    const T zero{};
    while (i < x.size() || j < y.size()) {
      if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
        T v = dom_.axmby(a, x[i].second, b, zero);
        if (!dom_.is_zero(v)) out.emplace_back(x[i].first, std::move(v));
        ++i;
      } else if (i == x.size() || y[j].first < x[i].first) {
        T v = dom_.axmby(a, zero, b, y[j].second);
        if (!dom_.is_zero(v)) out.emplace_back(y[j].first, std::move(v));
        ++j;
      } else {
        T v = dom_.axmby(a, x[i].second, b, y[j].second);
        if (!dom_.is_zero(v)) out.emplace_back(x[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  }

  Domain dom_;
  std::vector<std::size_t> row_of_col_;
  std::vector<std::size_t> pivots_;
  std::vector<Row> rows_;
};

using IntMatrix = std::vector<std::vector<mpz_class>>;

inline bool is_zero_vector(const std::vector<mpz_class>& v) {
  return std::all_of(v.begin(), v.end(), [](const mpz_class& x) { return sgn(x) == 0; });
}

/// Row Hermite normal form of the lattice spanned by `rows` (each of length
/// `cols`): pivots positive, entries above a pivot reduced into [0, pivot),
/// zero rows dropped. Canonical for the lattice.
inline IntMatrix hermite_rows(IntMatrix rows, std::size_t cols) {
  std::size_t k = 0;
  for (std::size_t c = 0; c < cols && k < rows.size(); ++c) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = k; r < rows.size(); ++r) {
        if (sgn(rows[r][c]) == 0) continue;
        if (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c])) best = r;
      }
      if (best == rows.size()) break;
      std::swap(rows[k], rows[best]);
      bool done = true;
      for (std::size_t r = k + 1; r < rows.size(); ++r) {
        if (sgn(rows[r][c]) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[k][c].get_mpz_t());
        for (std::size_t j = c; j < cols; ++j) rows[r][j] -= q * rows[k][j];
        if (sgn(rows[r][c]) != 0) done = false;
      }
      if (done) break;
    }
    if (k < rows.size() && sgn(rows[k][c]) != 0) {
      if (sgn(rows[k][c]) < 0) {
        for (std::size_t j = c; j < cols; ++j) rows[k][j] = -rows[k][j];
      }
      for (std::size_t r = 0; r < k; ++r) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[k][c].get_mpz_t());
        if (sgn(q) == 0) continue;
        for (std::size_t j = c; j < cols; ++j) rows[r][j] -= q * rows[k][j];
      }
      ++k;
    }
  }
  rows.resize(k);
  return rows;
}

/// Column-style Hermite reduction A*U = H with U unimodular. Nonzero columns
/// of H come first in echelon form: column j has its leading entry in row
/// `pivot_rows[j]`, strictly increasing, with zeros above it. Columns of U past
/// `rank` span the integer kernel of A.
struct ColumnHermite {
  IntMatrix H;  // m x n
  IntMatrix U;  // n x n
  std::vector<std::size_t> pivot_rows;
  std::size_t rank = 0;
};

inline ColumnHermite column_hermite(const IntMatrix& A, std::size_t n) {
  ColumnHermite out;
  out.H = A;
  out.U.assign(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) out.U[i][i] = 1;
  auto& H = out.H;
  auto& U = out.U;
  const std::size_t m = H.size();
  auto col_axpy = [&](std::size_t dst, const mpz_class& q, std::size_t src) {
    for (std::size_t r = 0; r < m; ++r) H[r][dst] -= q * H[r][src];
    for (std::size_t r = 0; r < n; ++r) U[r][dst] -= q * U[r][src];
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < m; ++r) std::swap(H[r][a], H[r][b]);
    for (std::size_t r = 0; r < n; ++r) std::swap(U[r][a], U[r][b]);
  };
  std::size_t k = 0;
  for (std::size_t i = 0; i < m && k < n; ++i) {
    while (true) {
      std::size_t best = n;
      for (std::size_t j = k; j < n; ++j) {
        if (sgn(H[i][j]) == 0) continue;
        if (best == n || abs(H[i][j]) < abs(H[i][best])) best = j;
      }
      if (best == n) break;
      col_swap(k, best);
      bool done = true;
      for (std::size_t j = k + 1; j < n; ++j) {
        if (sgn(H[i][j]) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), H[i][j].get_mpz_t(), H[i][k].get_mpz_t());
        col_axpy(j, q, k);
        if (sgn(H[i][j]) != 0) done = false;
      }
      if (done) break;
    }
    if (sgn(H[i][k]) != 0) {
      out.pivot_rows.push_back(i);
      ++k;
    }
  }
  out.rank = k;
  return out;
}

/// Integer solution of A x = b via the column Hermite form, or nullopt.
inline std::optional<std::vector<mpz_class>> solve_integer(const IntMatrix& A, std::size_t n,
                                                           const std::vector<mpz_class>& b) {
  auto ch = column_hermite(A, n);
  const std::size_t m = A.size();
  std::vector<mpz_class> y(n, 0);
  for (std::size_t j = 0; j < ch.rank; ++j) {
    const std::size_t r = ch.pivot_rows[j];
    mpz_class rest = b[r];
    for (std::size_t t = 0; t < j; ++t) rest -= ch.H[r][t] * y[t];
    if (!mpz_divisible_p(rest.get_mpz_t(), ch.H[r][j].get_mpz_t())) return std::nullopt;
    mpz_divexact(y[j].get_mpz_t(), rest.get_mpz_t(), ch.H[r][j].get_mpz_t());
  }
  for (std::size_t r = 0; r < m; ++r) {
    mpz_class s = 0;
    for (std::size_t j = 0; j < ch.rank; ++j) s += ch.H[r][j] * y[j];
    if (s != b[r]) return std::nullopt;
  }
  std::vector<mpz_class> x(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < ch.rank; ++j) x[r] += ch.U[r][j] * y[j];
  }
  return x;
}

}  // namespace incidence::detail
