#include "doctest.h"

#include "qshift/error.hpp"
#include "qshift/quantise.hpp"
#include "unit/corpus.hpp"
#include "unit/support.hpp"

using namespace qshift;
using testing::ypow;

namespace {

Operator mul(const Element& a) { return Operator::multiplication(a); }
Operator Dy(int m, int i) { return Operator::d_y(m, i); }
Operator De(int m, int i) { return Operator::d_eta(m, i); }
HSeries h(int e) { return HSeries::hbar(e); }

CritLocus cubic2() { return make_crit_locus(ypow(2, 0, 3) + ypow(2, 1, 3), 2); }

// Random degree-1 operator of order <= j.
Operator random_delta_coefficient(SplitMix64& rng, int m, int j) {
  Operator d = testing::random_operator(rng, m, j, 2, 6).degree_part(1);
  return d;
}

}  // namespace

TEST_CASE("bv_quantisation examples") {
  const CritLocus x1 = make_crit_locus(ypow(1, 0, 2), 1);
  CHECK(bv_quantisation(x1).series() == (Dy(1, 0) * De(1, 0)).scaled(h(1)));
  const CritLocus x2 = cubic2();
  CHECK(bv_quantisation(x2).series() == (Dy(2, 0) * De(2, 0) + Dy(2, 1) * De(2, 1)).scaled(h(1)));
  CHECK(op_order(bv_quantisation(x2).coefficient(2)) == 2);
}

TEST_CASE("Quantisation::make validates order and degree") {
  auto expect_invalid = [](int m, const std::map<int, Operator>& c) {
    try {
      Quantisation::make(m, c);
      FAIL("expected InvalidQuantisation");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidQuantisation);
    }
  };
  // eta_1 d_y1^2 has degree -1.
  expect_invalid(1, {{2, mul(Element::eta(1, 0)) * Dy(1, 0) * Dy(1, 0)}});
  // order 3 at j = 2
  expect_invalid(1, {{2, Dy(1, 0) * Dy(1, 0) * De(1, 0)}});
  // index below 2
  expect_invalid(1, {{1, De(1, 0)}});
  // hbar inside a coefficient
  expect_invalid(1, {{2, De(1, 0).scaled(h(1))}});
  CHECK_NOTHROW(Quantisation::make(1, {{3, Dy(1, 0) * Dy(1, 0) * De(1, 0)}}));
}

TEST_CASE("kappa examples") {
  const CritLocus x = cubic2();
  CHECK(kappa(x, bv_quantisation(x)).is_zero());
  CHECK(kappa(x, Quantisation(2)).is_zero());

  // A degree-1 spurious term of order 2 breaks the master equation.
  const Operator spurious = mul(Element::eta(2, 0)) * De(2, 0) * De(2, 1);
  const Quantisation bad = Quantisation::make(2, {{2, bv_operator(2) + spurious}});
  const Operator k = kappa(x, bad);
  CHECK_FALSE(k.is_zero());
  // Independent expansion: [delta, D] + 1/2 [D, D] with D = hbar(Delta_BV + s).
  const Operator d = (bv_operator(2) + spurious).scaled(h(1));
  const Operator delta = mul(x.partials[0]) * De(2, 0) + mul(x.partials[1]) * De(2, 1);
  const Operator expected = delta * d + d * delta + d * d;
  CHECK(k == expected);
}

TEST_CASE("one-variable degree-1 operators always satisfy the master equation") {
  SplitMix64 rng(51);
  for (int trial = 0; trial < 40; ++trial) {
    const CritLocus x = make_crit_locus(testing::random_polynomial(rng, 1, 5, 3), 1);
    std::map<int, Operator> c;
    for (int j = 2; j <= 4; ++j) c[j] = random_delta_coefficient(rng, 1, j);
    CHECK(kappa(x, Quantisation::make(1, c)).is_zero());
  }
}

TEST_CASE("the BV quantisation solves the master equation on the corpus and random f") {
  for (const auto& entry : testing::corpus()) {
    const CritLocus x = make_crit_locus(entry.f, entry.m);
    CHECK_MESSAGE(kappa(x, bv_quantisation(x)).is_zero(), entry.name);
  }
  SplitMix64 rng(52);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 1 + static_cast<int>(rng.uniform(3));
    const CritLocus x = make_crit_locus(testing::random_polynomial(rng, m, 6, 5), m);
    CHECK(kappa(x, bv_quantisation(x)).is_zero());
  }
}

TEST_CASE("sigma_tangent examples") {
  const CritLocus x = cubic2();
  const TangentElement t = sigma_tangent(bv_quantisation(x));
  CHECK(t.eps_series() == bv_operator(2).scaled(h(2)));
  CHECK(sigma_tangent(Quantisation(2)).eps_series().is_zero());
  const Operator d3 = Dy(1, 0) * Dy(1, 0) * De(1, 0);
  const TangentElement t3 = sigma_tangent(Quantisation::make(1, {{3, d3}}));
  CHECK(t3.eps_series() == d3.scaled(h(3) * Rational(2)));
}

TEST_CASE("centre_differential examples") {
  const CritLocus x = cubic2();
  const Quantisation q = bv_quantisation(x);
  for (int i = 0; i < 2; ++i) {
    CHECK(centre_differential(x, q, mul(Element::y(2, i))) == De(2, i).scaled(h(1)));
    CHECK(centre_differential(x, q, mul(Element::eta(2, i))) == Dy(2, i).scaled(h(1)) + mul(x.partials[i]));
  }
  CHECK(centre_differential(x, q, Operator::identity(2)).is_zero());
}

TEST_CASE("centre_differential refuses non-MC input unless allowed") {
  const CritLocus x = cubic2();
  const Quantisation bad = Quantisation::make(2, {{2, bv_operator(2) + mul(Element::eta(2, 0)) * De(2, 0) * De(2, 1)}});
  try {
    centre_differential(x, bad, Operator::identity(2));
    FAIL("expected NotMaurerCartan");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotMaurerCartan);
  }
  CHECK_NOTHROW(centre_differential(x, bad, Operator::identity(2), true));
}

TEST_CASE("centre differential squares to zero, sigma is a cocycle, filtration is kept") {
  SplitMix64 rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 1 + static_cast<int>(rng.uniform(2));
    const CritLocus x = make_crit_locus(testing::random_polynomial(rng, m, 4, 3), m);
    const Quantisation q = bv_quantisation(x);
    // u in F~^i of the centre: order <= p at hbar^p, p >= i.
    const int i = static_cast<int>(rng.uniform(3));
    Operator u(m);
    for (int p = i; p <= i + 2; ++p) {
      Operator part = testing::random_operator(rng, m, p, 2, 3);
      u += part.scaled(h(p));
    }
    const Operator du = centre_differential(x, q, u);
    CHECK(centre_differential(x, q, du).is_zero());
    for (const auto& [key, c] : du.terms()) {
      for (const auto& [e, coeff] : c.coefficients()) {
        CHECK(e >= i);
        CHECK(key.order() <= e);
      }
    }
    CHECK(centre_differential(x, q, sigma_tangent(q).eps_series()).is_zero());
  }
}

TEST_CASE("nondegeneracy") {
  for (int m = 1; m <= 3; ++m) {
    Element f(m);
    for (int i = 0; i < m; ++i) f += ypow(m, i, 3);
    const CritLocus x = make_crit_locus(f, m);
    const NondegeneracyReport rep = is_nondegenerate(x, bv_quantisation(x));
    CHECK(rep.nondegenerate);
    CHECK(rep.determinant == Element::constant(m, HSeries(m % 2 ? -1 : 1)));
    // Pairing is [[0, I], [I, 0]].
    for (int a = 0; a < 2 * m; ++a) {
      for (int b = 0; b < 2 * m; ++b) {
        const bool hit = (a < m && b == a + m) || (a >= m && b == a - m);
        CHECK(rep.pairing[a][b] == (hit ? Element::constant(m, HSeries(1)) : Element(m)));
      }
    }
  }
  const CritLocus x = cubic2();
  const NondegeneracyReport rep = is_nondegenerate_operator(x, Dy(2, 0) * Dy(2, 1));
  CHECK_FALSE(rep.nondegenerate);
  CHECK(rep.determinant.is_zero());
  CHECK_FALSE(is_nondegenerate(x, Quantisation(2)).nondegenerate);
  // A y-dependent rescaling is degenerate where the factor vanishes.
  const Operator scaled_bv = mul(Element::y(2, 0)) * Dy(2, 0) * De(2, 0) + Dy(2, 1) * De(2, 1);
  CHECK_FALSE(is_nondegenerate(x, Quantisation::make(2, {{2, scaled_bv}})).nondegenerate);
  // A constant rescaling stays nondegenerate.
  const Operator twice = (Dy(2, 0) * De(2, 0)).scaled(HSeries(2)) + Dy(2, 1) * De(2, 1);
  const NondegeneracyReport rep2 = is_nondegenerate(x, Quantisation::make(2, {{2, twice}}));
  CHECK(rep2.nondegenerate);
  CHECK(rep2.determinant == Element::constant(2, HSeries(4)));
}
