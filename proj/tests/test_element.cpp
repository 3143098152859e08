#include "helpers.hpp"

using namespace test;

TEST_CASE("basis elements", "[algebra]") {
  auto p = chain2();
  auto e12 = basis_elem(p, Q, "1", "2");
  CHECK(e12.coeffs().size() == 1);
  CHECK(e12(0, 1) == q(1));
  CHECK(error_of([&] { basis_elem(p, Q, "2", "1"); }) == ErrorCode::not_comparable);
  auto e11 = basis_elem(p, Q, "1", "1");
  CHECK(e11 * e11 == e11);
}

TEST_CASE("delta and zeta", "[algebra]") {
  auto gen = rng(10);
  for (const auto& np : standard_suite()) {
    auto p = parse_preorder(np.dsl);
    auto f = random_element(p, Q, gen);
    CHECK(delta(p, Q) * f == f);
    CHECK(f * delta(p, Q) == f);
  }
  CHECK(zeta(chain3(), Q).coeffs().size() == 6);
  auto a3 = suite_preorder("A3");
  CHECK(delta(a3, Q) == zeta(a3, Q));
}

TEST_CASE("linear combinations", "[algebra]") {
  auto p = chain2();
  auto e12 = basis_elem(p, Q, "1", "2");
  auto zero = linear_combine({{q(1), e12}, {q(-1), e12}});
  CHECK(zero.is_zero());
  CHECK(zero.to_string() == "0");
  CHECK((Scalar(F2, 2L) * delta(p, F2)).is_zero());
  auto half = linear_combine({{q(1, 2), basis_elem(p, Q, "1", "1") + basis_elem(p, Q, "2", "2")}});
  CHECK(half(0, 0) == q(1, 2));
  CHECK(half(1, 1) == q(1, 2));
  CHECK(half.coeffs().size() == 2);
  CHECK(error_of([&] { linear_combine({{q(1), e12}, {q(1), basis_elem(p, Z, 0, 1)}}); }) == ErrorCode::ring_mismatch);
  CHECK(error_of([&] { linear_combine({{q(1), e12}, {q(1), basis_elem(chain3(), Q, 0, 1)}}); }) ==
        ErrorCode::preorder_mismatch);
  CHECK(error_of([&] { linear_combine({}); }) == ErrorCode::preorder_mismatch);
}

TEST_CASE("convolution of basis elements", "[algebra]") {
  auto c = chain3();
  CHECK(basis_elem(c, Q, "1", "2") * basis_elem(c, Q, "2", "3") == basis_elem(c, Q, "1", "3"));
  CHECK((basis_elem(c, Q, "1", "2") * basis_elem(c, Q, "1", "3")).is_zero());
  auto m = full2();
  CHECK(basis_elem(m, Q, "a", "b") * basis_elem(m, Q, "b", "a") == basis_elem(m, Q, "a", "a"));
  for (const auto& np : standard_suite()) {
    auto p = parse_preorder(np.dsl);
    for (auto [x, y] : p->basis()) {
      for (auto [u, v] : p->basis()) {
        auto prod = basis_elem(p, Q, x, y) * basis_elem(p, Q, u, v);
        if (y == u) {
          CHECK(prod == basis_elem(p, Q, x, v));
        } else {
          CHECK(prod.is_zero());
        }
      }
    }
  }
  CHECK(error_of([&] { basis_elem(c, Q, 0, 1) * basis_elem(c, F3, 0, 1); }) == ErrorCode::ring_mismatch);
}

TEST_CASE("commutators", "[algebra]") {
  auto gen = rng(11);
  auto p = chain2();
  for (int k = 0; k < 20; ++k) {
    auto f = random_element(p, Q, gen);
    CHECK(commutator(delta(p, Q), f).is_zero());
    CHECK(commutator(f, f).is_zero());
  }
  CHECK(commutator(basis_elem(p, Q, "1", "1"), basis_elem(p, Q, "1", "2")) == basis_elem(p, Q, "1", "2"));
}

TEST_CASE("inverses", "[algebra]") {
  auto c2 = chain2();
  CHECK(inverse(delta(c2, Q)) == delta(c2, Q));
  auto zi = inverse(zeta(c2, Q));
  CHECK(zi(0, 1) == q(-1));
  CHECK(error_of([] { inverse(zeta(full2(), Q)); }) == ErrorCode::not_invertible);
  CHECK(error_of([&] { inverse(Scalar(Z, 2L) * delta(c2, Z)); }) == ErrorCode::not_invertible);

  auto gen = rng(12);
  for (const auto& np : standard_suite()) {
    auto p = parse_preorder(np.dsl);
    for (const auto& R : {Q, F5, Z}) {
      for (int k = 0; k < 10; ++k) {
        auto f = random_element(p, R, gen, 0.8);
        try {
          auto h = inverse(f);
          CHECK(f * h == delta(p, R));
          CHECK(h * f == delta(p, R));
        } catch (const Error& e) {
          CHECK(e.code() == ErrorCode::not_invertible);
        }
      }
    }
  }
  // an invertible 2x2 class block: [[1, 1], [1, 2]] has determinant 1
  auto m = full2();
  IncidenceElement f(m, Z);
  f.set(0, 0, Scalar(Z, 1L));
  f.set(0, 1, Scalar(Z, 1L));
  f.set(1, 0, Scalar(Z, 1L));
  f.set(1, 1, Scalar(Z, 2L));
  auto h = inverse(f);
  CHECK(f * h == delta(m, Z));
  CHECK(h(0, 0) == Scalar(Z, 2L));
  CHECK(h(0, 1) == Scalar(Z, -1L));
}

TEST_CASE("Mobius function", "[algebra]") {
  auto c = chain3();
  auto mu = mobius(c, Q);
  CHECK(mu(0, 0) == q(1));
  CHECK(mu(0, 1) == q(-1));
  CHECK(mu(0, 2) == q(0));
  auto a3 = suite_preorder("A3");
  CHECK(mobius(a3, Q) == delta(a3, Q));
  auto k = crown();
  auto mk = mobius(k, Q);
  for (auto [x, y] : k->basis()) {
    if (x != y) CHECK(mk(x, y) == q(-1));
  }
  auto d4 = suite_preorder("D4");
  CHECK(mobius(d4, Z)(d4->index_of("0"), d4->index_of("1")) == Scalar(Z, 1L));
}

TEST_CASE("algebra invariants", "[algebra]") {
  auto gen = rng(13);
  for (const auto& np : standard_suite()) {
    auto p = parse_preorder(np.dsl);
    for (int k = 0; k < 100; ++k) {
      auto f = random_element(p, Q, gen), g = random_element(p, Q, gen), h = random_element(p, Q, gen);
      REQUIRE((f * g) * h == f * (g * h));
      auto a = random_scalar(Q, gen), b = random_scalar(Q, gen);
      REQUIRE((a * f + b * g) * h == a * (f * h) + b * (g * h));
      REQUIRE(h * (a * f + b * g) == a * (h * f) + b * (h * g));
      auto fg = f * g;
      for (const auto& [pos, c] : fg.coeffs()) {
        auto [x, y] = p->basis()[pos];
        REQUIRE(p->leq(x, y));
      }
    }
    if (is_partial_order(*p)) {
      auto mu = mobius(p, Z);
      CHECK(mu * zeta(p, Z) == delta(p, Z));
      CHECK(zeta(p, Z) * mu == delta(p, Z));
    }
  }
}
