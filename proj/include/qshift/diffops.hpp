#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qshift/gca.hpp"

namespace qshift {

// Normal-ordered monomial y^a eta_S d_y^b d_eta_T. The same key doubles as a
// polyvector monomial y^a eta_S xi^b theta_T with xi = d_y, theta = d_eta.
struct OpKey {
  Monomial left;
  std::vector<int> dy;
  OddSet deta = 0;

  int order() const;
  int degree() const { return left.degree() + odd_count(deta); }
  bool odd() const { return (odd_count(left.eta) + odd_count(deta)) % 2 != 0; }

  friend bool operator==(const OpKey& a, const OpKey& b) = default;
  friend bool operator<(const OpKey& a, const OpKey& b);
};

OpKey multiplication_key(const Monomial& mono);

// Sparse linear combination of OpKeys with HSeries coefficients. Shared by
// Operator and Polyvector, which differ only in how products are formed.
class KeyedSum {
 public:
  using Terms = std::map<OpKey, HSeries>;

  KeyedSum() = default;
  explicit KeyedSum(int m) : m_(m) {}

  int m() const { return m_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const OpKey& key, const HSeries& c);

  std::optional<int> degree() const;
  // Largest ∂-degree over the terms; nullopt for zero.
  std::optional<int> max_order() const;
  std::set<int> hbar_exponents() const;
  bool truncated() const;

 protected:
  int m_ = 0;
  Terms terms_;
};

class Operator : public KeyedSum {
 public:
  using KeyedSum::KeyedSum;

  static Operator identity(int m);
  static Operator multiplication(const Element& a);
  static Operator d_y(int m, int i);
  static Operator d_eta(int m, int i);
  static Operator from_key(int m, const OpKey& key, const HSeries& c = HSeries(1));

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator operator-() const;
  Operator scaled(const HSeries& c) const;
  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend bool operator==(const Operator& a, const Operator& b) { return a.terms_ == b.terms_; }

  Operator parity_part(bool odd) const;
  Operator degree_part(int degree) const;
  Operator order_part(int order) const;
  // Rational coefficient of hbar^exponent, as an hbar-free operator.
  Operator hbar_coefficient(int exponent) const;
  Operator times_hbar(int exponent) const;
  Operator with_trunc(int trunc_order) const;

  std::string to_string(const AlgebraSignature& sig) const;
  std::string to_string() const { return to_string(AlgebraSignature::standard(m_)); }
};

std::string opkey_string(const OpKey& key, const AlgebraSignature& sig, bool as_symbol = false);

int op_order(const Operator& d);
Element op_apply(const Operator& d, const Element& a);
Operator op_compose(const Operator& d1, const Operator& d2);
Operator operator*(const Operator& d1, const Operator& d2);
// Graded commutator d1 d2 - (-1)^{|d1||d2|} d2 d1, extended bilinearly over parity parts.
Operator op_commutator(const Operator& d1, const Operator& d2);

// All normal-ordered keys of the given cohomological degree (any degree if
// nullopt), order <= max_order and y-degree <= max_ydeg.
std::vector<OpKey> enumerate_opkeys(int m, std::optional<int> degree, int max_order, int max_ydeg);
std::vector<std::vector<int>> exponent_vectors(int m, int max_total);

// Koszul differential as an operator: sum_i (d_i f) d_eta_i.
Operator koszul_operator(const CritLocus& x);

enum class GenKind { Y, Eta, Xi, Theta };

class Polyvector : public KeyedSum {
 public:
  using KeyedSum::KeyedSum;

  static Polyvector from_key(int m, const OpKey& key, const HSeries& c = HSeries(1));
  static Polyvector generator(int m, GenKind kind, int i);
  static Polyvector function(const Element& a);

  Polyvector& operator+=(const Polyvector& other);
  Polyvector& operator-=(const Polyvector& other);
  Polyvector operator-() const;
  Polyvector scaled(const HSeries& c) const;
  friend Polyvector operator+(Polyvector a, const Polyvector& b) { return a += b; }
  friend Polyvector operator-(Polyvector a, const Polyvector& b) { return a -= b; }
  friend bool operator==(const Polyvector& a, const Polyvector& b) { return a.terms_ == b.terms_; }

  // Common arity of all terms; throws ArityMismatch if inhomogeneous, nullopt for zero.
  std::optional<int> arity() const;
  Polyvector parity_part(bool odd) const;

  Polyvector left_derivative(GenKind kind, int i) const;
  Polyvector right_derivative(GenKind kind, int i) const;

  std::string to_string(const AlgebraSignature& sig) const;
  std::string to_string() const { return to_string(AlgebraSignature::standard(m_)); }
};

// Graded-commutative product of symbols.
Polyvector pv_mul(const Polyvector& a, const Polyvector& b);
Polyvector operator*(const Polyvector& a, const Polyvector& b);

Polyvector symbol(const Operator& d, int k);
Operator lift(const Polyvector& p);

// Schouten–Nijenhuis bracket via the biderivation formula
//   {P,Q} = sum_i P<d_xi_i d_y_i>Q - P<d_y_i d_xi_i>Q + P<d_theta_i d_eta_i>Q + P<d_eta_i d_theta_i>Q
// with right derivatives on P and left derivatives on Q.
Polyvector schouten(const Polyvector& p, const Polyvector& q);
// The same bracket computed as symbol(op_commutator(lift p, lift q), p+q-1).
Polyvector schouten_via_commutator(const Polyvector& p, const Polyvector& q);

}  // namespace qshift
