#pragma once

#include <string>
#include <vector>

#include "qshift/gca.hpp"

namespace qshift::testing {

struct CorpusEntry {
  std::string name;
  int m;
  Element f;
};

inline Element ypow(int m, int i, int k) {
  Element r = Element::constant(m, HSeries(1));
  for (int t = 0; t < k; ++t) r = r * Element::y(m, i);
  return r;
}

// Polynomials used across suites; weights and Milnor numbers are well known.
inline std::vector<CorpusEntry> corpus() {
  return {
      {"x^2", 1, ypow(1, 0, 2)},
      {"x^3", 1, ypow(1, 0, 3)},
      {"x^4", 1, ypow(1, 0, 4)},
      {"x^2+y^2", 2, ypow(2, 0, 2) + ypow(2, 1, 2)},
      {"x^3+y^3", 2, ypow(2, 0, 3) + ypow(2, 1, 3)},
      {"x^3+y^5", 2, ypow(2, 0, 3) + ypow(2, 1, 5)},
      {"x^2+y^3", 2, ypow(2, 0, 2) + ypow(2, 1, 3)},
      {"x^2+y^2+z^2", 3, ypow(3, 0, 2) + ypow(3, 1, 2) + ypow(3, 2, 2)},
      {"x^3+xy", 2, ypow(2, 0, 3) + Element::y(2, 0) * Element::y(2, 1)},
  };
}

}  // namespace qshift::testing
