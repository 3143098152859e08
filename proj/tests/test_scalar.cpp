#include <numeric>

#include "helpers.hpp"

using namespace test;

TEST_CASE("ring descriptors parse", "[scalar]") {
  CHECK(ring_from_string("Q") == Q);
  CHECK(ring_from_string("Z") == Z);
  CHECK(ring_from_string("F5") == F5);
  CHECK(ring_from_string("Z9").kind() == RingKind::modular);
  CHECK(ring_from_string("Z9").modulus() == 9);
  CHECK(error_of([] { ring_from_string("F4"); }) == ErrorCode::non_prime_modulus);
  CHECK(error_of([] { ring_from_string("F6"); }) == ErrorCode::non_prime_modulus);
  CHECK(error_of([] { ring_from_string("F1"); }) == ErrorCode::non_prime_modulus);
  for (const char* bad : {"", "q", "R", "F", "Fx", "F-5", "Z1", "Z0", "QQ", " Q"}) {
    CHECK(error_of([&] { ring_from_string(bad); }) == ErrorCode::parse_error);
  }
  for (const char* s : {"Z", "Q", "F2", "F7", "Z6", "Z9"}) CHECK(ring_from_string(s).to_string() == s);
}

TEST_CASE("scalar arithmetic examples", "[scalar]") {
  CHECK(add(q(1, 2), q(1, 3)) == q(5, 6));
  CHECK(add(q(1, 2), q(1, 3)).to_string() == "5/6");
  CHECK(inv(Scalar(F5, 2L)) == Scalar(F5, 3L));
  auto Z6 = RingDescriptor::modular(6);
  CHECK(error_of([&] { inv(Scalar(Z6, 2L)); }) == ErrorCode::not_invertible);
  CHECK(error_of([&] { inv(Scalar::zero(Q)); }) == ErrorCode::not_invertible);
  CHECK(error_of([&] { inv(Scalar(Z, 2L)); }) == ErrorCode::not_invertible);
  CHECK(inv(Scalar(Z, -1L)) == Scalar(Z, -1L));
  CHECK(error_of([&] { add(q(1), Scalar(Z, 1L)); }) == ErrorCode::ring_mismatch);
  CHECK(error_of([&] { mul(Scalar(F3, 1L), Scalar(F5, 1L)); }) == ErrorCode::ring_mismatch);
  CHECK(neg(Scalar(F5, 2L)) == Scalar(F5, 3L));
  CHECK(sub(Scalar(Z, 2L), Scalar(Z, 5L)).to_string() == "-3");
  CHECK(Scalar(F5, -1L).to_string() == "4");
  CHECK(Scalar(Q, mpq_class(4, 6)).to_string() == "2/3");
  CHECK(Scalar(Q, mpq_class(-4, 6)).to_string() == "-2/3");
}

TEST_CASE("two-torsion freeness", "[scalar]") {
  CHECK(is_two_torsion_free(Z));
  CHECK(is_two_torsion_free(Q));
  CHECK_FALSE(is_two_torsion_free(F2));
  CHECK(is_two_torsion_free(F3));
  CHECK_FALSE(is_two_torsion_free(RingDescriptor::modular(6)));
  for (std::uint64_t n : {2, 3, 4, 6, 9, 15}) {
    auto R = RingDescriptor::modular(n);
    bool free = true;
    for (long x = 1; x < static_cast<long>(n); ++x) {
      if (add(Scalar(R, x), Scalar(R, x)).is_zero()) free = false;
    }
    CHECK(is_two_torsion_free(R) == free);
  }
}

TEST_CASE("ring axioms on random triples", "[scalar]") {
  auto gen = rng(1);
  for (const auto& R : {Z, Q, F2, F5, RingDescriptor::modular(9), RingDescriptor::modular(6)}) {
    for (int k = 0; k < 1000; ++k) {
      auto a = random_scalar(R, gen), b = random_scalar(R, gen), c = random_scalar(R, gen);
      REQUIRE((a + b) + c == a + (b + c));
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a + b == b + a);
      REQUIRE(a * b == b * a);
      REQUIRE(a * (b + c) == a * b + a * c);
      REQUIRE(a + Scalar::zero(R) == a);
      REQUIRE(a * Scalar::one(R) == a);
      REQUIRE(a + (-a) == Scalar::zero(R));
      REQUIRE(Scalar(R, a.value()) == a);
    }
  }
}

TEST_CASE("inverse exists exactly on units", "[scalar]") {
  for (std::uint64_t n : {2, 5, 6, 9, 12}) {
    auto R = RingDescriptor::modular(n);
    for (long x = 0; x < static_cast<long>(n); ++x) {
      Scalar s(R, x);
      bool unit = std::gcd(x, static_cast<long>(n)) == 1;
      CHECK(s.is_unit() == unit);
      if (unit) {
        CHECK(inv(s) * s == Scalar::one(R));
      } else {
        CHECK(error_of([&] { inv(s); }) == ErrorCode::not_invertible);
      }
    }
  }
  auto gen = rng(2);
  for (int k = 0; k < 200; ++k) {
    auto a = random_scalar(Q, gen, true);
    CHECK(inv(a) * a == Scalar::one(Q));
  }
}

TEST_CASE("scalar text is canonical and bit exact", "[scalar]") {
  auto gen = rng(3);
  for (const auto& R : {Z, Q, F5, RingDescriptor::modular(9)}) {
    for (int k = 0; k < 200; ++k) {
      auto a = random_scalar(R, gen);
      CHECK(parse_scalar(R, a.to_string()) == a);
      CHECK(parse_scalar(R, a.to_string()).to_string() == a.to_string());
    }
  }
  CHECK(parse_scalar(Q, "-3/4") == q(-3, 4));
  CHECK(parse_scalar(Q, "7") == q(7));
  for (const char* bad : {"2/4", "3/1", "01", "-0", "+1", "", "1/0", "1/-2", "1.5", "0/1", " 1"}) {
    CHECK(error_of([&] { parse_scalar(Q, bad); }) == ErrorCode::parse_error);
  }
  for (const char* bad : {"5", "-1", "07", "x"}) {
    CHECK(error_of([&] { parse_scalar(F5, bad); }) == ErrorCode::parse_error);
  }
  CHECK(error_of([&] { parse_scalar(Z, "1/2"); }) == ErrorCode::parse_error);
}

TEST_CASE("residue canonicalization of fractions", "[scalar]") {
  CHECK(Scalar(F5, mpq_class(1, 2)) == Scalar(F5, 3L));
  CHECK(error_of([] { Scalar(Z, mpq_class(1, 2)); }) == ErrorCode::ring_mismatch);
  CHECK(error_of([] { Scalar(RingDescriptor::modular(6), mpq_class(1, 2)); }) == ErrorCode::not_invertible);
}
