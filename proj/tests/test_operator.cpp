#include "helpers.hpp"

using namespace test;

namespace {

LinearOperator single(const PreorderPtr& p, const RingDescriptor& R, std::string_view i, std::string_view j,
                      std::string_view x, std::string_view y, const Scalar& c) {
  LinearOperator d(p, R);
  d.set(p->pair_index(p->index_of(i), p->index_of(j)), p->pair_index(p->index_of(x), p->index_of(y)), c);
  return d;
}

bool definitional_jordan(const LinearOperator& d, const IncidenceElement& x) {
  return apply(d, x * x) == apply(d, x) * x + x * apply(d, x);
}

}  // namespace

TEST_CASE("applying operators", "[operators]") {
  auto c = chain2();
  auto gen = rng(40);
  auto f = random_element(c, Q, gen);
  CHECK(apply(LinearOperator(c, Q), f).is_zero());
  auto d = single(c, Q, "1", "2", "1", "2", q(1));
  auto e12 = basis_elem(c, Q, "1", "2");
  CHECK(apply(d, q(3) * e12) == q(3) * e12);
  for (const auto& np : standard_suite()) {
    auto p = parse_preorder(np.dsl);
    auto op = random_operator(p, Q, gen);
    auto u = random_element(p, Q, gen), v = random_element(p, Q, gen);
    CHECK(apply(op, u + v) == apply(op, u) + apply(op, v));
  }
  CHECK(error_of([&] { apply(d, random_element(c, F3, gen)); }) == ErrorCode::ring_mismatch);
}

TEST_CASE("operator storage", "[operators]") {
  auto c = chain2();
  LinearOperator d(c, Q);
  d.set(0, 1, q(2));
  d.set(0, 1, q(0));
  CHECK(d.is_zero());
  CHECK(error_of([&] { d.set(0, 9, q(1)); }) == ErrorCode::dimension_mismatch);
  CHECK(error_of([&] { d.set(0, 0, Scalar(Z, 1L)); }) == ErrorCode::ring_mismatch);
  auto gen = rng(41);
  auto r = random_operator(c, Q, gen, 0.5);
  CHECK(LinearOperator::from_vector(c, Q, r.to_vector()) == r);
  CHECK(d.coefficient(0, 0, 1, 0).is_zero());
}

TEST_CASE("inner derivations", "[operators]") {
  auto c = chain2();
  CHECK(inner_operator(delta(c, Q)).is_zero());
  auto inn = inner_operator(basis_elem(c, Q, "1", "1"));
  CHECK(inn.image(c->pair_index(0, 1)) == basis_elem(c, Q, "1", "2"));
  CHECK(inn.image(c->pair_index(0, 0)).is_zero());
  CHECK(inn.image(c->pair_index(1, 1)).is_zero());
  auto gen = rng(42);
  for (const auto& np : standard_suite()) {
    auto p = parse_preorder(np.dsl);
    for (int k = 0; k < 20; ++k) REQUIRE(is_derivation(inner_operator(random_element(p, Q, gen))));
  }
}

TEST_CASE("transitive-induced derivations", "[operators]") {
  auto c = chain2();
  CHECK(transitive_operator(TransitiveMap::zero(c, Q)).is_zero());
  IncidenceElement fv(c, Q);
  fv.set(0, 1, q(1));
  auto d = transitive_operator(TransitiveMap(fv));
  CHECK(d.image(c->pair_index(0, 1)) == basis_elem(c, Q, "1", "2"));
  CHECK(d.image(c->pair_index(0, 0)).is_zero());
  auto gen = rng(43);
  for (const auto& np : standard_suite()) {
    auto p = parse_preorder(np.dsl);
    auto basis = transitive_space(p, Q);
    for (int k = 0; k < 5; ++k) {
      IncidenceElement f(p, Q);
      for (const auto& v : basis.vectors) f = f + random_scalar(Q, gen) * IncidenceElement::from_vector(p, Q, v);
      REQUIRE(is_derivation(transitive_operator(TransitiveMap(f))));
    }
  }
}

TEST_CASE("derivation law on the basis", "[operators]") {
  auto c = chain2();
  CHECK(is_derivation(LinearOperator(c, Q)));
  CHECK_FALSE(is_derivation(single(c, Q, "1", "1", "1", "1", q(1))));
}

TEST_CASE("Jordan law on the basis", "[operators]") {
  auto gen = rng(44);
  auto c = chain3();
  CHECK(is_jordan_derivation(LinearOperator(c, Q)));
  for (const auto& g : derivation_space(c, Q).generators) CHECK(is_jordan_derivation(g));

  auto m = full2();
  auto d = single(m, Q, "a", "b", "b", "a", q(1));
  bool basis_law = is_jordan_derivation(d);
  bool random_law = true;
  for (int k = 0; k < 100; ++k) random_law = random_law && definitional_jordan(d, random_element(m, Q, gen, 1.0));
  CHECK_FALSE(basis_law);
  CHECK(basis_law == random_law);
  // e_ab squares to zero while D(e_ab) e_ab + e_ab D(e_ab) = e_bb + e_aa
  CHECK_FALSE(definitional_jordan(d, basis_elem(m, Q, "a", "b")));
}

TEST_CASE("Jordan basis law agrees with the definition on random operators", "[operators]") {
  auto gen = rng(45);
  for (const auto& name : {"C2", "M2", "A3", "P6"}) {
    auto p = suite_preorder(name);
    auto jor = jordan_space(p, Q);
    for (int k = 0; k < 20; ++k) {
      auto d = k % 2 ? random_operator(p, Q, gen, 0.2) : detail::random_combination(jor, gen);
      bool basis_law = is_jordan_derivation(d);
      bool random_law = true;
      for (int t = 0; t < 100 && random_law; ++t) random_law = definitional_jordan(d, random_element(p, Q, gen, 1.0));
      CHECK(basis_law == random_law);
    }
  }
}

TEST_CASE("derivation normal form", "[operators]") {
  auto c = chain2();
  CHECK(check_derivation_form(LinearOperator(c, Q)).conforms);
  auto r = check_derivation_form(single(c, Q, "1", "1", "1", "1", q(1)));
  CHECK_FALSE(r.conforms);
  bool found = false;
  for (const auto& v : r.violations) {
    if (v.kind == FormViolation::Kind::relation && v.description.find("C^{ii}_{ii} = 0 fails") != std::string::npos) {
      found = true;
    }
  }
  CHECK(found);

  auto shape = check_derivation_form(single(c, Q, "1", "1", "2", "2", q(1)));
  CHECK_FALSE(shape.conforms);
  CHECK(shape.violations.front().kind == FormViolation::Kind::shape);

  auto gen = rng(46);
  for (const auto& np : standard_suite()) {
    auto p = parse_preorder(np.dsl);
    for (const auto& R : {Q, F3}) {
      auto der = derivation_space(p, R);
      for (const auto& g : der.generators) CHECK(check_derivation_form(g).conforms);
      for (int k = 0; k < 20; ++k) {
        auto d = der.generators.empty() ? detail::perturb(LinearOperator(p, R), gen)
                                        : detail::perturb(der.generators[k % der.generators.size()], gen);
        CHECK(check_derivation_form(d).conforms == is_derivation(d));
        auto r2 = random_operator(p, R, gen, 0.1);
        CHECK(check_derivation_form(r2).conforms == is_derivation(r2));
      }
    }
  }
}

TEST_CASE("Jordan normal form", "[operators]") {
  for (const auto& np : standard_suite()) {
    auto p = parse_preorder(np.dsl);
    for (const auto& g : derivation_space(p, Q).generators) {
      auto r = check_jordan_form(g);
      CHECK(r.conforms);
      CHECK(r.back_coefficients.empty());
    }
    for (const auto& R : {Q, F3, Z}) {
      for (const auto& g : jordan_space(p, R).generators) {
        auto r = check_jordan_form(g);
        CHECK(r.conforms);
        CHECK_FALSE(r.advisory);
        CHECK(r.back_coefficients.empty());
      }
    }
  }
  auto m = full2();
  auto back = check_jordan_form(single(m, Q, "a", "b", "b", "a", q(1)));
  CHECK(back.conforms);
  REQUIRE(back.back_coefficients.size() == 1);
  CHECK(back.back_coefficients[0].second == q(1));
  CHECK_FALSE(check_derivation_form(single(m, Q, "a", "b", "b", "a", q(1))).conforms);
  CHECK(check_jordan_form(LinearOperator(m, F2)).advisory);
}

TEST_CASE("Herstein identities", "[operators]") {
  auto gen = rng(47);
  for (const auto& np : standard_suite()) {
    auto p = parse_preorder(np.dsl);
    auto zero = LinearOperator(p, Q);
    auto a = random_element(p, Q, gen), b = random_element(p, Q, gen);
    CHECK(herstein_check(zero, a, b, a).all());
    for (const auto& d : jordan_space(p, Q).generators) {
      for (int k = 0; k < 10; ++k) {
        auto x = random_element(p, Q, gen), y = random_element(p, Q, gen), z = random_element(p, Q, gen);
        REQUIRE(herstein_check(d, x, y, z).all());
        auto r = herstein_check(d, x, y, x);
        REQUIRE(r.triple == r.sandwich);
      }
    }
  }
}

TEST_CASE("derivation law holds on random elements", "[operators]") {
  auto gen = rng(48);
  for (const auto& np : standard_suite()) {
    auto p = parse_preorder(np.dsl);
    for (const auto& d : derivation_space(p, Q).generators) {
      for (int k = 0; k < 10; ++k) {
        auto u = random_element(p, Q, gen), v = random_element(p, Q, gen);
        REQUIRE(apply(d, u * v) == apply(d, u) * v + u * apply(d, v));
      }
    }
  }
}
