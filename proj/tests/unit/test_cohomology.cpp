#include "doctest.h"

#include "qshift/cohomology.hpp"
#include "qshift/error.hpp"
#include "unit/corpus.hpp"

using namespace qshift;
using testing::ypow;

namespace {

long long expected_milnor(const std::string& name) {
  static const std::map<std::string, long long> table = {
      {"x^2", 1},     {"x^3", 2},     {"x^4", 3},     {"x^2+y^2", 1},     {"x^3+y^3", 4},
      {"x^3+y^5", 8}, {"x^2+y^3", 2}, {"x^2+y^2+z^2", 1}, {"x^3+xy", 1},
  };
  return table.at(name);
}

// Milnor numbers of Brieskorn-Pham sums: product of (a_i - 1).
long long brieskorn(const std::vector<int>& exps) {
  long long r = 1;
  for (int a : exps) r *= a - 1;
  return r;
}

}  // namespace

TEST_CASE("milnor_number examples") {
  CHECK(milnor_number(ypow(1, 0, 2), 1) == 1);
  CHECK(milnor_number(ypow(2, 0, 3) + ypow(2, 1, 3), 2) == 4);
  CHECK(milnor_number(ypow(2, 0, 3) + ypow(2, 1, 5), 2) == 8);
  for (const auto& e : testing::corpus()) CHECK_MESSAGE(milnor_number(e.f, e.m) == expected_milnor(e.name), e.name);
  for (int k = 1; k <= 6; ++k) CHECK(milnor_number(ypow(1, 0, k + 1), 1) == k);
  for (int a = 2; a <= 4; ++a) {
    for (int b = 2; b <= 5; ++b) CHECK(milnor_number(ypow(2, 0, a) + ypow(2, 1, b), 2) == brieskorn({a, b}));
  }
  // Non-homogeneous with two critical points: x^3 - 3x has critical points +-1.
  const Element cubic = ypow(1, 0, 3) - Element::y(1, 0).scaled(HSeries(3));
  CHECK(milnor_number(cubic, 1) == 2);
}

TEST_CASE("milnor_number errors") {
  CHECK_THROWS_AS(milnor_number(Element(1), 1), Error);
  try {
    milnor_number(ypow(2, 0, 2) * Element::y(2, 1), 2, 12);
    FAIL("expected NonIsolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonIsolated);
  }
  try {
    milnor_number(Element::eta(1, 0), 1);
    FAIL("expected NotPolynomial");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPolynomial);
  }
}

TEST_CASE("twisted de Rham dimensions equal the Milnor number") {
  for (const auto& e : testing::corpus()) {
    if (e.name == "x^3+xy") continue;
    const CritLocus x = make_crit_locus(e.f, e.m);
    const CohomologyReport rep = twisted_derham_dims(x, {TruncationMode::WeightGraded, 8, 2}, 5);
    CHECK(rep.stabilised);
    CHECK(rep.field == CohomologyField::QOfHbar);
    CHECK_MESSAGE(rep.total() == milnor_number(e.f, e.m), e.name);
    CHECK(rep.dims_by_degree.at(0) == rep.total());
    CHECK(rep.euler_characteristic == rep.total());
    CHECK(rep.dims_by_degree.size() == static_cast<std::size_t>(e.m + 1));
    CHECK(rep.fallback_ranks == 0);
  }
  for (int k = 1; k <= 5; ++k) {
    const CritLocus x = make_crit_locus(ypow(1, 0, k + 1), 1);
    CHECK(twisted_derham_dims(x, {TruncationMode::WeightGraded, 8, 2}).dims_by_degree.at(0) == k);
  }
}

TEST_CASE("weight-graded and degree-truncated modes agree") {
  for (const auto& e : testing::corpus()) {
    if (e.m > 2 && e.name != "x^2+y^2+z^2") continue;
    const CritLocus x = make_crit_locus(e.f, e.m);
    const CohomologyReport w = twisted_derham_dims(x, {TruncationMode::WeightGraded, 8, 2}, 7);
    const CohomologyReport d = twisted_derham_dims(x, {TruncationMode::DegreeTruncated, 16, 2}, 7);
    CHECK_MESSAGE(w.dims_by_degree == d.dims_by_degree, e.name);
  }
}

TEST_CASE("weight grading needs weights") {
  const Element cubic = ypow(1, 0, 3) - Element::y(1, 0).scaled(HSeries(3));
  const CritLocus x = make_crit_locus(cubic, 1);
  CHECK_FALSE(x.signature.weights.has_value());
  CHECK_THROWS_AS(twisted_derham_dims(x, {TruncationMode::WeightGraded, 8, 2}), Error);
  const CohomologyReport d = twisted_derham_dims(x, {TruncationMode::DegreeTruncated, 16, 2});
  CHECK(d.dims_by_degree.at(0) == 2);
  CHECK(d.dims_by_degree.at(-1) == 0);
}

TEST_CASE("stabilisation failure is an error") {
  const CritLocus x = make_crit_locus(ypow(2, 0, 3) + ypow(2, 1, 5), 2);
  try {
    twisted_derham_dims(x, {TruncationMode::WeightGraded, 1, 2});
    FAIL("expected NotStabilised");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotStabilised);
  }
}

TEST_CASE("Koszul cohomology at hbar = 0") {
  const CritLocus c = make_crit_locus(ypow(2, 0, 3) + ypow(2, 1, 3), 2);
  const CohomologyReport rep = koszul_dims_at_hbar_zero(c, {TruncationMode::WeightGraded, 8, 2});
  CHECK(rep.dims_by_degree.at(0) == 4);
  CHECK(rep.dims_by_degree.at(-1) == 0);
  CHECK(rep.dims_by_degree.at(-2) == 0);
  CHECK(rep.field == CohomologyField::QAtHbarZero);
  const CritLocus q = make_crit_locus(ypow(1, 0, 2), 1);
  const CohomologyReport r2 = koszul_dims_at_hbar_zero(q, {TruncationMode::WeightGraded, 8, 2});
  CHECK(r2.dims_by_degree.at(0) == 1);
  CHECK(r2.dims_by_degree.at(-1) == 0);
  for (const auto& e : testing::corpus()) {
    const CritLocus x = make_crit_locus(e.f, e.m);
    const CohomologyReport r = koszul_dims_at_hbar_zero(x, {TruncationMode::WeightGraded, 8, 2});
    CHECK_MESSAGE(r.dims_by_degree.at(0) == expected_milnor(e.name), e.name);
  }
}

TEST_CASE("a polynomial with a vanishing cycle at infinity") {
  // x^2 y - x has no critical points, yet the twisted complex keeps one class.
  const Element f = ypow(2, 0, 2) * Element::y(2, 1) - Element::y(2, 0);
  CHECK(milnor_number(f, 2) == 0);
  const CritLocus x = make_crit_locus(f, 2);
  const CohomologyReport rep = twisted_derham_dims(x, {TruncationMode::DegreeTruncated, 20, 2});
  CHECK(rep.dims_by_degree.at(0) == 1);
  CHECK(rep.total() == 1);
}
