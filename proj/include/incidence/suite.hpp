#pragma once

#include <string>
#include <vector>

#include "incidence/preorder.hpp"

namespace incidence {

struct NamedPreorder {
  std::string name;
  std::string dsl;
};

/// The desk-scale preorders exercised by the acceptance suite.
inline const std::vector<NamedPreorder>& standard_suite() {
  static const std::vector<NamedPreorder> suite = {
      {"C1", "elements: 1\n"},
      {"C2", "elements: 1 2\nrelations: 1<2\n"},
      {"C3", "elements: 1 2 3\nrelations: 1<2 2<3\n"},
      {"C4", "elements: 1 2 3 4\nrelations: 1<2 2<3 3<4\n"},
      {"C5", "elements: 1 2 3 4 5\nrelations: 1<2 2<3 3<4 4<5\n"},
      {"A3", "elements: 1 2 3\n"},
      {"D4", "# diamond\nelements: 0 a b 1\nrelations: 0<a 0<b a<1 b<1\n"},
      {"K22", "# crown\nelements: 1 2 3 4\nrelations: 1<3 1<4 2<3 2<4\n"},
      {"M2", "elements: a b\nrelations: a<b b<a\n"},
      {"M3", "elements: a b c\nrelations: a<b b<c c<a\n"},
      {"P6", "elements: a b c\nrelations: a<b b<a a<c\n"},
  };
  return suite;
}

inline PreorderPtr suite_preorder(const std::string& name) {
  for (const auto& np : standard_suite()) {
    if (np.name == name) return parse_preorder(np.dsl);
  }
  throw Error(ErrorCode::unknown_element, "no suite preorder named '" + name + "'");
}

}  // namespace incidence
