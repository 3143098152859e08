#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "incidence/error.hpp"

namespace incidence {

enum class RingKind { integers, rationals, prime_field, modular };

/// The coefficient ring: Z, Q, F_p or Z/n.
class RingDescriptor {
 public:
  RingDescriptor() = default;

  static RingDescriptor integers() { return RingDescriptor(RingKind::integers, 0); }
  static RingDescriptor rationals() { return RingDescriptor(RingKind::rationals, 0); }

  static RingDescriptor prime_field(std::uint64_t p) {
    if (!is_prime(p)) {
      throw Error(ErrorCode::non_prime_modulus, "F" + std::to_string(p) + " needs a prime modulus");
    }
    return RingDescriptor(RingKind::prime_field, p);
  }

  static RingDescriptor modular(std::uint64_t n) {
    if (n < 2) throw Error(ErrorCode::parse_error, "Z/n needs n >= 2, got " + std::to_string(n));
    return RingDescriptor(RingKind::modular, n);
  }

  RingKind kind() const noexcept { return kind_; }
  std::uint64_t modulus() const noexcept { return modulus_; }

  bool is_residue_ring() const noexcept {
    return kind_ == RingKind::prime_field || kind_ == RingKind::modular;
  }

  /// Fields, including Z/n for prime n.
  bool is_field() const noexcept {
    switch (kind_) {
      case RingKind::rationals:
      case RingKind::prime_field: return true;
      case RingKind::modular: return is_prime(modulus_);
      case RingKind::integers: return false;
    }
    return false;
  }

  std::string to_string() const {
    switch (kind_) {
      case RingKind::integers: return "Z";
      case RingKind::rationals: return "Q";
      case RingKind::prime_field: return "F" + std::to_string(modulus_);
      case RingKind::modular: return "Z" + std::to_string(modulus_);
    }
    return "?";
  }

  friend bool operator==(const RingDescriptor&, const RingDescriptor&) = default;

  static bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  }

 private:
  RingDescriptor(RingKind kind, std::uint64_t modulus) : kind_(kind), modulus_(modulus) {}

  RingKind kind_ = RingKind::integers;
  std::uint64_t modulus_ = 0;
};

/// Parses `Z`, `Q`, `F<p>` or `Z<n>`.
inline RingDescriptor ring_from_string(std::string_view s) {
  if (s == "Z") return RingDescriptor::integers();
  if (s == "Q") return RingDescriptor::rationals();
  if (s.size() >= 2 && (s[0] == 'F' || s[0] == 'Z')) {
    std::uint64_t n = 0;
    for (char c : s.substr(1)) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw Error(ErrorCode::parse_error, "bad ring descriptor '" + std::string(s) + "'");
      }
      if (n > (UINT64_MAX - 9) / 10) {
        throw Error(ErrorCode::parse_error, "modulus too large in '" + std::string(s) + "'");
      }
      n = n * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return s[0] == 'F' ? RingDescriptor::prime_field(n) : RingDescriptor::modular(n);
  }
  throw Error(ErrorCode::parse_error, "bad ring descriptor '" + std::string(s) + "'");
}

/// 2x = 0 implies x = 0.
inline bool is_two_torsion_free(const RingDescriptor& r) {
  switch (r.kind()) {
    case RingKind::integers:
    case RingKind::rationals: return true;
    case RingKind::prime_field: return r.modulus() != 2;
    case RingKind::modular: return r.modulus() % 2 == 1;
  }
  return false;
}

/// An element of a RingDescriptor in canonical form. Integers and residues are
/// stored as mpq values with denominator 1; residues lie in [0, n).
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(RingDescriptor ring) : ring_(ring) {}

  Scalar(RingDescriptor ring, const mpq_class& value) : ring_(ring), value_(value) {
    canonicalize();
  }

  Scalar(RingDescriptor ring, long value) : Scalar(ring, mpq_class(value)) {}

  Scalar(RingDescriptor ring, const mpz_class& value) : Scalar(ring, mpq_class(value)) {}

  static Scalar zero(RingDescriptor ring) { return Scalar(ring); }
  static Scalar one(RingDescriptor ring) { return Scalar(ring, 1L); }

  const RingDescriptor& ring() const noexcept { return ring_; }
  const mpq_class& value() const noexcept { return value_; }
  bool is_zero() const noexcept { return sgn(value_) == 0; }
  bool is_one() const noexcept { return value_ == 1; }

  /// The integer representative (numerator for Z, residue for Z/n, F_p).
  const mpz_class& integer() const noexcept { return value_.get_num(); }

  Scalar operator-() const { return Scalar(ring_, mpq_class(-value_)); }

  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    return Scalar(a.ring_, mpq_class(a.value_ + b.value_));
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    return Scalar(a.ring_, mpq_class(a.value_ - b.value_));
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    return Scalar(a.ring_, mpq_class(a.value_ * b.value_));
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.ring_ == b.ring_ && a.value_ == b.value_;
  }

  bool is_unit() const {
    switch (ring_.kind()) {
      case RingKind::integers: return value_ == 1 || value_ == -1;
      case RingKind::rationals: return !is_zero();
      case RingKind::prime_field:
      case RingKind::modular: {
        mpz_class g;
        mpz_class n(static_cast<unsigned long>(ring_.modulus()));
        mpz_gcd(g.get_mpz_t(), integer().get_mpz_t(), n.get_mpz_t());
        return g == 1;
      }
    }
    return false;
  }

  Scalar inverse() const {
    if (!is_unit()) {
      throw Error(ErrorCode::not_invertible, to_string() + " is not a unit in " + ring_.to_string());
    }
    switch (ring_.kind()) {
      case RingKind::integers: return *this;
      case RingKind::rationals: return Scalar(ring_, mpq_class(1 / value_));
      case RingKind::prime_field:
      case RingKind::modular: {
        mpz_class inv;
        mpz_class n(static_cast<unsigned long>(ring_.modulus()));
        mpz_invert(inv.get_mpz_t(), integer().get_mpz_t(), n.get_mpz_t());
        return Scalar(ring_, inv);
      }
    }
    return *this;
  }

  std::string to_string() const {
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

 private:
  static void check_same(const Scalar& a, const Scalar& b) {
    if (!(a.ring_ == b.ring_)) {
      throw Error(ErrorCode::ring_mismatch,
                  "cannot combine " + a.ring_.to_string() + " and " + b.ring_.to_string());
    }
  }

  void canonicalize() {
    value_.canonicalize();
    switch (ring_.kind()) {
      case RingKind::rationals: return;
      case RingKind::integers:
        if (value_.get_den() != 1) {
          throw Error(ErrorCode::ring_mismatch, value_.get_str() + " is not an integer");
        }
        return;
      case RingKind::prime_field:
      case RingKind::modular: {
        mpz_class n(static_cast<unsigned long>(ring_.modulus()));
        mpz_class num = value_.get_num();
        if (value_.get_den() != 1) {
          mpz_class den_inv;
          if (mpz_invert(den_inv.get_mpz_t(), value_.get_den_mpz_t(), n.get_mpz_t()) == 0) {
            throw Error(ErrorCode::not_invertible, "denominator of " + value_.get_str() +
                                                       " is not a unit in " + ring_.to_string());
          }
          num *= den_inv;
        }
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), n.get_mpz_t());
        value_ = r;
        return;
      }
    }
  }

  RingDescriptor ring_;
  mpq_class value_;
};

inline Scalar add(const Scalar& a, const Scalar& b) { return a + b; }
inline Scalar sub(const Scalar& a, const Scalar& b) { return a - b; }
inline Scalar mul(const Scalar& a, const Scalar& b) { return a * b; }
inline Scalar neg(const Scalar& a) { return -a; }
inline Scalar inv(const Scalar& a) { return a.inverse(); }

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

inline bool canonical_integer_text(std::string_view s) {
  std::string_view digits = s;
  if (!digits.empty() && digits[0] == '-') digits.remove_prefix(1);
  if (!all_digits(digits)) return false;
  if (digits.size() > 1 && digits[0] == '0') return false;
  if (s[0] == '-' && digits == "0") return false;
  return true;
}

}  // namespace detail

/// Reads the canonical text of a scalar; anything that would not be printed
/// back identically by `Scalar::to_string` is a ParseError.
inline Scalar parse_scalar(const RingDescriptor& ring, std::string_view text) {
  auto fail = [&]() -> Scalar {
    throw Error(ErrorCode::parse_error,
                "'" + std::string(text) + "' is not a canonical " + ring.to_string() + " scalar");
  };
  switch (ring.kind()) {
    case RingKind::integers: {
      if (!detail::canonical_integer_text(text)) return fail();
      return Scalar(ring, mpz_class(std::string(text)));
    }
    case RingKind::rationals: {
      auto slash = text.find('/');
      if (slash == std::string_view::npos) {
        if (!detail::canonical_integer_text(text)) return fail();
        return Scalar(ring, mpz_class(std::string(text)));
      }
      auto num = text.substr(0, slash);
      auto den = text.substr(slash + 1);
      if (!detail::canonical_integer_text(num) || !detail::all_digits(den) || den[0] == '0') {
        return fail();
      }
      mpq_class raw{mpz_class{std::string(num)}, mpz_class{std::string(den)}};
      mpq_class reduced = raw;
      reduced.canonicalize();
      if (reduced.get_den() == 1 || reduced.get_num() != raw.get_num()) return fail();
      return Scalar(ring, reduced);
    }
    case RingKind::prime_field:
    case RingKind::modular: {
      if (!detail::all_digits(text) || (text.size() > 1 && text[0] == '0')) return fail();
      mpz_class v{std::string(text)};
      if (v >= static_cast<unsigned long>(ring.modulus())) return fail();
      return Scalar(ring, v);
    }
  }
  return fail();
}

}  // namespace incidence
