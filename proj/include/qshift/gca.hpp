#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qshift/coefficients.hpp"

namespace qshift {

// Index sets of odd generators are bitmasks; m is small (the corpus has m <= 3).
using OddSet = std::uint32_t;
inline constexpr int kMaxVars = 16;

int odd_count(OddSet s);
// Number of elements of s strictly below / above index i.
int count_below(OddSet s, int i);
int count_above(OddSet s, int i);
// Sign of the product eta_S * eta_T moved into ascending order; 0 if S and T meet.
int wedge_sign(OddSet s, OddSet t);
// Lexicographic comparison of the ascending index lists of two subsets.
int compare_subsets(OddSet a, OddSet b);

struct Monomial {
  std::vector<int> y;  // exponents of y_1..y_m
  OddSet eta = 0;      // eta_i present iff bit i is set

  int degree() const { return -odd_count(eta); }
  bool odd() const { return odd_count(eta) % 2 != 0; }
  int y_degree() const;

  friend bool operator==(const Monomial& a, const Monomial& b) = default;
  friend bool operator<(const Monomial& a, const Monomial& b);
};

struct AlgebraSignature {
  int m = 1;
  std::optional<std::vector<Rational>> weights;
  std::vector<std::string> names;  // y-variable names used for printing

  static AlgebraSignature standard(int m);
  std::string y_name(int i) const;
  std::string eta_name(int i) const;
};

std::string monomial_string(const Monomial& mono, const AlgebraSignature& sig);

// Element of O_X = Q[y_1..y_m] (x) Lambda[eta_1..eta_m] with HSeries coefficients.
class Element {
 public:
  using Terms = std::map<Monomial, HSeries>;

  Element() = default;
  explicit Element(int m) : m_(m) {}

  static Element constant(int m, const HSeries& c);
  static Element y(int m, int i);
  static Element eta(int m, int i);
  static Element monomial(int m, const Monomial& mono, const HSeries& c = HSeries(1));

  int m() const { return m_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Cohomological degree if all terms share it.
  std::optional<int> degree() const;
  bool is_hbar_free() const;
  bool is_eta_free() const;

  void add_term(const Monomial& mono, const HSeries& c);

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element operator-() const;
  Element scaled(const HSeries& c) const;

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }

  // Keeps the terms of a given cohomological degree.
  Element degree_part(int degree) const;

  std::string to_string(const AlgebraSignature& sig) const;
  std::string to_string() const { return to_string(AlgebraSignature::standard(m_)); }

 private:
  int m_ = 0;
  Terms terms_;
};

Element gmul(const Element& a, const Element& b);
Element operator*(const Element& a, const Element& b);

// Formal partial derivative in y_i (even, so no signs).
Element diff_y(const Element& a, int i);
// Left contraction with eta_i: eta_i-derivative acting from the left.
Element diff_eta(const Element& a, int i);

struct CritLocus {
  AlgebraSignature signature;
  Element f;
  std::vector<Element> partials;

  int m() const { return signature.m; }
};

// f must be a nonzero polynomial in the y variables (no eta, no hbar). Weights
// are stored when sum_i w_i a_i = 1 has a unique solution over all exponent
// vectors a of f and that solution is positive.
CritLocus make_crit_locus(const Element& f, const AlgebraSignature& signature);
CritLocus make_crit_locus(const Element& f, int m);

Element apply_koszul_delta(const CritLocus& x, const Element& a);

}  // namespace qshift
