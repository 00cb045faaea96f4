#pragma once

#include <vector>

#include "qshift/coefficients.hpp"
#include "qshift/diffops.hpp"
#include "qshift/gca.hpp"

namespace qshift::testing {

inline Rational small_rational(SplitMix64& rng, int bound = 3) {
  Rational q(static_cast<long>(rng.uniform(2 * bound + 1)) - bound, static_cast<long>(rng.uniform(2)) + 1);
  q.canonicalize();
  return q;
}

inline Rational nonzero_rational(SplitMix64& rng, int bound = 3) {
  for (;;) {
    Rational q = small_rational(rng, bound);
    if (q != 0) return q;
  }
}

inline HSeries random_hseries(SplitMix64& rng, int lo, int hi, int terms) {
  HSeries s;
  for (int t = 0; t < terms; ++t) {
    const int e = lo + static_cast<int>(rng.uniform(hi - lo + 1));
    s += HSeries::monomial(small_rational(rng), e);
  }
  return s;
}

inline Monomial random_monomial(SplitMix64& rng, int m, int max_ydeg, bool allow_eta = true) {
  Monomial mono{std::vector<int>(m, 0), 0};
  const int d = static_cast<int>(rng.uniform(max_ydeg + 1));
  for (int k = 0; k < d; ++k) mono.y[rng.uniform(m)] += 1;
  if (allow_eta) mono.eta = static_cast<OddSet>(rng.uniform(OddSet{1} << m));
  return mono;
}

inline Element random_element(SplitMix64& rng, int m, int max_ydeg, int terms, bool allow_eta = true) {
  Element e(m);
  for (int t = 0; t < terms; ++t) e.add_term(random_monomial(rng, m, max_ydeg, allow_eta), HSeries(nonzero_rational(rng)));
  return e;
}

inline Element random_polynomial(SplitMix64& rng, int m, int max_deg, int terms) {
  Element f(m);
  while (f.is_zero()) f = random_element(rng, m, max_deg, terms, false);
  return f;
}

inline OpKey random_opkey(SplitMix64& rng, int m, int max_order, int max_ydeg) {
  OpKey key = multiplication_key(random_monomial(rng, m, max_ydeg));
  const int k = static_cast<int>(rng.uniform(max_order + 1));
  for (int r = 0; r < k; ++r) {
    const int i = static_cast<int>(rng.uniform(m));
    if (rng.uniform(2)) {
      key.deta |= OddSet{1} << i;
    } else {
      key.dy[i] += 1;
    }
  }
  return key;
}

inline Operator random_operator(SplitMix64& rng, int m, int max_order, int max_ydeg, int terms) {
  Operator d(m);
  for (int t = 0; t < terms; ++t) d.add_term(random_opkey(rng, m, max_order, max_ydeg), HSeries(nonzero_rational(rng)));
  return d;
}

// Operator whose terms all have order exactly k.
inline Operator random_operator_of_order(SplitMix64& rng, int m, int k, int max_ydeg, int terms) {
  Operator d(m);
  while (d.is_zero() || op_order(d) != k) {
    d = Operator(m);
    for (int t = 0; t < terms; ++t) {
      OpKey key = random_opkey(rng, m, k, max_ydeg);
      if (key.order() == k) d.add_term(key, HSeries(nonzero_rational(rng)));
    }
  }
  return d;
}

inline Polyvector random_polyvector(SplitMix64& rng, int m, int arity, int max_ydeg, int terms) {
  Polyvector p(m);
  for (int t = 0; t < terms || p.is_zero(); ++t) {
    OpKey key = random_opkey(rng, m, arity, max_ydeg);
    if (key.order() == arity) p.add_term(key, HSeries(nonzero_rational(rng)));
  }
  return p;
}

}  // namespace qshift::testing
