#include "helpers.hpp"

using namespace test;

TEST_CASE("element records round trip", "[interchange]") {
  auto gen = rng(60);
  for (const auto& np : standard_suite()) {
    auto p = parse_preorder(np.dsl);
    for (const auto& R : {Q, Z, F5}) {
      for (int k = 0; k < 10; ++k) {
        auto f = random_element(p, R, gen);
        auto text = dump_record(element_record(f));
        auto back = element_from_record(parse_record(text), p, R);
        REQUIRE(back == f);
        REQUIRE(dump_record(element_record(back)) == text);
      }
    }
  }
}

TEST_CASE("operator records round trip", "[interchange]") {
  auto gen = rng(61);
  for (const auto& np : standard_suite()) {
    auto p = parse_preorder(np.dsl);
    for (const auto& R : {Q, Z, F3}) {
      auto d = random_operator(p, R, gen);
      auto text = dump_record(operator_record(d));
      auto back = operator_from_record(parse_record(text), p, R);
      REQUIRE(back == d);
      REQUIRE(dump_record(operator_record(back)) == text);
      for (const auto& g : derivation_space(p, R).generators) {
        auto again = operator_from_record(parse_record(dump_record(operator_record(g))), p, R);
        REQUIRE(is_derivation(again));
      }
    }
  }
}

TEST_CASE("record layout", "[interchange]") {
  auto c = chain2();
  IncidenceElement f(c, Q);
  f.set(0, 1, q(-1, 2));
  f.set(0, 0, q(3));
  auto j = element_record(f);
  CHECK(j.dump() == R"({"entries":[{"c":"3","x":"1","y":"1"},{"c":"-1/2","x":"1","y":"2"}],"poset-hash":")" +
                        poset_hash(*c) + R"(","ring":"Q"})");
  LinearOperator d(c, Q);
  d.set(c->pair_index(0, 0), c->pair_index(0, 1), q(1));
  CHECK(operator_record(d).dump() == R"({"entries":[{"c":"1","ij":["1","1"],"xy":["1","2"]}],"poset-hash":")" +
                                         poset_hash(*c) + R"(","ring":"Q"})");
  CHECK(map_record(TransitiveMap::zero(c, Q)).at("values").empty());
  auto report = space_report(derivation_space(c, Q), SpaceKind::derivation);
  CHECK(report.at("kind") == "derivation");
  CHECK(report.at("rank") == 2);
  CHECK(report.at("generators").size() == 2);
  auto trans = space_report(c, transitive_space(c, Q), SpaceKind::transitive);
  CHECK(trans.at("rank") == 1);
  CHECK(trans.at("generators")[0].contains("values"));
}

TEST_CASE("entry order is free on input", "[interchange]") {
  auto c = chain2();
  auto text = R"({"entries":[{"c":"-1/2","x":"1","y":"2"},{"c":"3","x":"1","y":"1"}],"poset-hash":")" +
              poset_hash(*c) + R"(","ring":"Q"})";
  auto f = element_from_record(parse_record(text), c, Q);
  CHECK(f(0, 0) == q(3));
  CHECK(f(0, 1) == q(-1, 2));
}

TEST_CASE("malformed records are rejected", "[interchange]") {
  auto c = chain2();
  auto hash = poset_hash(*c);
  auto rec = [&](const std::string& entries, const std::string& h, const std::string& ring) {
    return parse_record(R"({"entries":)" + entries + R"(,"poset-hash":")" + h + R"(","ring":")" + ring + R"("})");
  };
  CHECK(error_of([&] { element_from_record(rec("[]", "0000000000000000", "Q"), c, Q); }) ==
        ErrorCode::preorder_mismatch);
  CHECK(error_of([&] { element_from_record(rec("[]", hash, "Z"), c, Q); }) == ErrorCode::ring_mismatch);
  CHECK(error_of([&] { element_from_record(rec(R"([{"c":"0","x":"1","y":"2"}])", hash, "Q"), c, Q); }) ==
        ErrorCode::parse_error);
  CHECK(error_of([&] {
          element_from_record(rec(R"([{"c":"1","x":"1","y":"2"},{"c":"2","x":"1","y":"2"}])", hash, "Q"), c, Q);
        }) == ErrorCode::parse_error);
  CHECK(error_of([&] { element_from_record(rec(R"([{"c":"1","x":"2","y":"1"}])", hash, "Q"), c, Q); }) ==
        ErrorCode::not_comparable);
  CHECK(error_of([&] { element_from_record(rec(R"([{"c":"1","x":"1","y":"9"}])", hash, "Q"), c, Q); }) ==
        ErrorCode::unknown_element);
  CHECK(error_of([&] { element_from_record(rec(R"([{"c":"2/4","x":"1","y":"2"}])", hash, "Q"), c, Q); }) ==
        ErrorCode::parse_error);
  CHECK(error_of([&] { element_from_record(rec(R"([{"c":1,"x":"1","y":"2"}])", hash, "Q"), c, Q); }) ==
        ErrorCode::parse_error);
  CHECK(error_of([&] { parse_record("{not json"); }) == ErrorCode::parse_error);
  CHECK(error_of([&] { element_from_record(parse_record("[]"), c, Q); }) == ErrorCode::parse_error);
  CHECK(error_of([&] {
          operator_from_record(rec(R"([{"c":"1","ij":["1"],"xy":["1","2"]}])", hash, "Q"), c, Q);
        }) == ErrorCode::parse_error);
}
