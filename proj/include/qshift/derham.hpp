#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qshift/diffops.hpp"
#include "qshift/gca.hpp"
#include "qshift/quantise.hpp"

namespace qshift {

// A word a_0 (x) a_1 (x) ... (x) a_r of monomials, times hbar^hbar_exp.
// Read as the product a_0 e a_1 e ... e a_r with e = 1 (x) 1 of degree 1.
struct WordKey {
  int hbar_exp = 0;
  std::vector<Monomial> factors;

  int length() const { return static_cast<int>(factors.size()) - 1; }
  int degree() const;

  friend bool operator==(const WordKey& a, const WordKey& b) = default;
  friend bool operator<(const WordKey& a, const WordKey& b);
};

class DRWord {
 public:
  using Terms = std::map<WordKey, Rational>;

  DRWord() = default;
  explicit DRWord(int m, int hodge_weight = 0) : m_(m), hodge_weight_(hodge_weight) {}

  int m() const { return m_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int hodge_weight() const { return hodge_weight_; }
  void set_hodge_weight(int p) { hodge_weight_ = p; }
  int max_length() const;

  void add_term(const WordKey& key, const Rational& c);

  DRWord& operator+=(const DRWord& other);  // weight becomes the minimum
  DRWord& operator-=(const DRWord& other);
  DRWord operator-() const;
  DRWord scaled(const Rational& c) const;
  DRWord times_hbar(int k) const;
  friend DRWord operator+(DRWord a, const DRWord& b) { return a += b; }
  friend DRWord operator-(DRWord a, const DRWord& b) { return a -= b; }
  friend bool operator==(const DRWord& a, const DRWord& b) { return a.terms_ == b.terms_; }

  std::string to_string(const AlgebraSignature& sig) const;

 private:
  int m_ = 0;
  int hodge_weight_ = 0;
  Terms terms_;
};

// The length-0 word (a); hbar-coefficients of a become hbar exponents.
DRWord dr_of(const Element& a);
// The unit e = 1 (x) 1.
DRWord dr_unit_pair(int m);
// 1 (x) a - (-1)^{|a|} a (x) 1, extended linearly over parity parts.
DRWord dr_d(const Element& a);
// Concatenation with the middle factors multiplied; Hodge weights add.
DRWord cup(const DRWord& w1, const DRWord& w2);
// Total differential: Amitsur coface part plus the Koszul differential on
// every factor, as the degree-1 derivation with D(a) = delta a + e a - (-1)^{|a|} a e
// and D(e) = e e.
DRWord dr_total_d(const CritLocus& x, const DRWord& w);

// a_0 Delta a_1 Delta ... Delta a_r, for Delta an operator hbar-series.
Operator mu_series(const DRWord& w, const Operator& delta);
Operator mu(const DRWord& w, const Quantisation& delta);

// sum_i s_i a_0 Delta ... a_i rho a_{i+1} Delta ... a_r with
// s_i = (-1)^{(|rho|-1)(|a_0|+...+|a_i| + i)}; rho is split by parity.
Operator nu_series(const DRWord& w, const Operator& delta, const Operator& rho);
Operator nu(const DRWord& w, const Quantisation& delta, const Operator& rho);

// delta_Delta mu(w) - mu(D w) - nu(w, Delta, kappa(Delta)); identically zero.
Operator check_keylemma_series(const CritLocus& x, const DRWord& w, const Operator& delta);
Operator check_keylemma(const CritLocus& x, const DRWord& w, const Quantisation& delta);

// sum_i dr_d(y_i) cup dr_d(eta_i), Hodge weight 2.
DRWord canonical_symplectic(const CritLocus& x);

struct CompatWindow {
  int weight_bound = 2;  // y-degree of multiplication factors in the witness space
  int hbar_order = 4;    // equations are compared modulo hbar^hbar_order
};

enum class CompatKind { ExactCocycleEquality, CoboundaryWitness, Fails };

struct CompatVerdict {
  CompatKind kind = CompatKind::Fails;
  Operator residual;  // mu(omega, Delta) - hbar^2 dDelta/dhbar
  Operator witness;   // h with delta_Delta(h) = residual mod hbar^hbar_order
  CompatWindow window;
  std::size_t unknowns = 0;
};

std::string compat_kind_name(CompatKind kind);

// Witness space: degree-0 elements of (G*F~)^2 T_Delta, i.e. order <= 0 at
// hbar^1 and order <= j at hbar^j for 2 <= j < hbar_order.
CompatVerdict check_compatibility(const CritLocus& x, const DRWord& omega, const Quantisation& delta,
                                  const CompatWindow& window = {});

// Largest order allowed at hbar^j in (G*F~)^q of the centre prod_p F_p D hbar^p.
std::optional<int> centre_conv_order_bound(int q, int j);

}  // namespace qshift
