#include "helpers.hpp"

using namespace test;

TEST_CASE("DSL parses and closes relations", "[preorder]") {
  auto p = parse_preorder("elements: 1 2 3\nrelations: 1<2 2<3");
  CHECK(p->leq(p->index_of("1"), p->index_of("3")));
  CHECK_FALSE(p->leq(p->index_of("3"), p->index_of("1")));
  CHECK(p->basis_size() == 6);

  auto m2 = full2();
  CHECK(m2->leq(0, 1));
  CHECK(m2->leq(1, 0));
  CHECK(m2->basis_size() == 4);

  CHECK(error_of([] { parse_preorder("elements: 1\nrelations: 1<2"); }) == ErrorCode::unknown_element);
}

TEST_CASE("DSL grammar", "[preorder]") {
  auto p = parse_preorder("# comment\n\nelements: x y   z  # trailing\nrelations: x<y\nrelations: y<z x<y\n");
  CHECK(p->size() == 3);
  CHECK(p->leq(0, 2));
  CHECK(*p == *parse_preorder("elements: x y z\nrelations: y<z x<y"));
  CHECK(error_of([] { parse_preorder("relations: a<b\nelements: a b"); }) == ErrorCode::parse_error);
  CHECK(error_of([] { parse_preorder("elements: a\nelements: b"); }) == ErrorCode::parse_error);
  CHECK(error_of([] { parse_preorder(""); }) == ErrorCode::parse_error);
  CHECK(error_of([] { parse_preorder("elements: a b\nrelations: a<"); }) == ErrorCode::parse_error);
  CHECK(error_of([] { parse_preorder("elements: a b\nrelations: ab"); }) == ErrorCode::parse_error);
  CHECK(error_of([] { parse_preorder("elements: a b\nfoo: a<b"); }) == ErrorCode::parse_error);
  CHECK(error_of([] { parse_preorder("elements: a a"); }) == ErrorCode::duplicate_element);
}

TEST_CASE("basis index is lexicographic by element position", "[preorder]") {
  auto p = chain3();
  std::vector<ElementPair> expected = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
  CHECK(p->basis() == expected);
  for (std::size_t s = 0; s < p->basis_size(); ++s) {
    CHECK(p->pair_index(p->basis()[s].x, p->basis()[s].y) == s);
  }
  CHECK(p->pair_index(2, 0) == Preorder::npos);
}

TEST_CASE("size guard", "[preorder]") {
  std::string dsl = "elements:";
  std::string rel = "relations:";
  for (int i = 0; i < 91; ++i) {
    dsl += " v" + std::to_string(i);
    if (i > 0) rel += " v" + std::to_string(i - 1) + "<v" + std::to_string(i);
  }
  CHECK(error_of([&] { parse_preorder(dsl + "\n" + rel + "\n"); }) == ErrorCode::size_limit);
  dsl = "elements:";
  rel = "relations:";
  for (int i = 0; i < 90; ++i) {
    dsl += " v" + std::to_string(i);
    if (i > 0) rel += " v" + std::to_string(i - 1) + "<v" + std::to_string(i);
  }
  CHECK(parse_preorder(dsl + "\n" + rel + "\n")->basis_size() == 4095);
}

TEST_CASE("intervals", "[preorder]") {
  auto c = chain3();
  CHECK(interval(*c, "1", "3") == std::vector<std::string>{"1", "2", "3"});
  CHECK(interval(*c, "3", "1").empty());
  CHECK(interval(*crown(), "1", "3") == std::vector<std::string>{"1", "3"});
  CHECK(error_of([&] { interval(*c, "1", "9"); }) == ErrorCode::unknown_element);
}

TEST_CASE("strict lower and upper sets", "[preorder]") {
  auto c = chain3();
  CHECK(strict_below(*c, "2") == std::vector<std::string>{"1"});
  CHECK(strict_above(*c, "2") == std::vector<std::string>{"3"});
  CHECK(strict_below(*full2(), "a") == std::vector<std::string>{"b"});
  CHECK(strict_above(*full2(), "a") == std::vector<std::string>{"b"});
  CHECK(strict_below(*parse_preorder("elements: 1 2"), "1").empty());
  CHECK(error_of([&] { strict_below(*c, "x"); }) == ErrorCode::unknown_element);
}

TEST_CASE("equivalence classes and components", "[preorder]") {
  for (const auto& np : standard_suite()) {
    auto p = parse_preorder(np.dsl);
    if (is_partial_order(*p)) {
      for (const auto& cls : equivalence_classes(*p)) CHECK(cls.size() == 1);
    }
  }
  CHECK(equivalence_classes(*full2()) == Partition{{0, 1}});
  auto p6 = suite_preorder("P6");
  CHECK(equivalence_classes(*p6) == Partition{{0, 1}, {2}});
  CHECK(is_partial_order(*crown()));
  CHECK(comparability_components(*crown()).size() == 1);
  CHECK(comparability_components(*suite_preorder("A3")).size() == 3);
  CHECK_FALSE(is_partial_order(*full2()));
  CHECK_FALSE(is_partial_order(*p6));
}

TEST_CASE("preorder invariants on the suite", "[preorder]") {
  for (const auto& np : standard_suite()) {
    auto p = parse_preorder(np.dsl);
    const auto n = p->size();
    auto again = parse_preorder(canonical_dsl(*p));
    CHECK(*again == *p);
    CHECK(poset_hash(*again) == poset_hash(*p));
    std::size_t count = 0;
    for (std::size_t x = 0; x < n; ++x) {
      CHECK(p->leq(x, x));
      for (std::size_t y = 0; y < n; ++y) {
        if (p->leq(x, y)) ++count;
        auto iv = interval(*p, x, y);
        CHECK(iv.empty() == !p->leq(x, y));
        if (p->leq(x, y)) {
          CHECK(std::find(iv.begin(), iv.end(), x) != iv.end());
          CHECK(std::find(iv.begin(), iv.end(), y) != iv.end());
        }
        for (std::size_t z = 0; z < n; ++z) {
          bool in = std::find(iv.begin(), iv.end(), z) != iv.end();
          CHECK(in == (p->leq(x, z) && p->leq(z, y)));
          if (p->leq(x, y) && p->leq(y, z)) CHECK(p->leq(x, z));
        }
      }
    }
    CHECK(count == p->basis_size());
  }
}

TEST_CASE("poset hash is a stable function of the closed preorder", "[preorder]") {
  auto a = parse_preorder("elements: 1 2 3\nrelations: 1<2 2<3");
  auto b = parse_preorder("# same\nelements: 1 2 3\nrelations: 2<3 1<2 1<3 1<2");
  CHECK(poset_hash(*a) == poset_hash(*b));
  CHECK(poset_hash(*a).size() == 16);
  CHECK(poset_hash(*a) != poset_hash(*parse_preorder("elements: 1 2 3\nrelations: 1<2")));
  CHECK(poset_hash(*a) != poset_hash(*parse_preorder("elements: 1 3 2\nrelations: 1<3 3<2")));
  CHECK(canonical_dsl(*a) == "elements: 1 2 3\nrelations: 1<2 1<3 2<3\n");
}
