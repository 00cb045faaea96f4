#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qshift/diffops.hpp"
#include "qshift/gca.hpp"

namespace qshift {

// Delta = sum_{j >= 2} Delta_j hbar^{j-1}, with op_order(Delta_j) <= j and
// every Delta_j hbar-free of cohomological degree 1.
class Quantisation {
 public:
  Quantisation() = default;
  explicit Quantisation(int m) : m_(m) {}

  // Throws InvalidQuantisation when an order, degree or index bound fails.
  static Quantisation make(int m, const std::map<int, Operator>& coeffs, std::optional<int> g_trunc = std::nullopt);

  int m() const { return m_; }
  const std::map<int, Operator>& coeffs() const { return coeffs_; }
  Operator coefficient(int j) const;
  // nullopt means exact (no G-truncation).
  std::optional<int> g_trunc() const { return g_trunc_; }
  bool is_zero() const { return coeffs_.empty(); }

  // The operator hbar-series sum_j Delta_j hbar^{j-1}.
  Operator series() const;

  friend bool operator==(const Quantisation& a, const Quantisation& b) { return a.coeffs_ == b.coeffs_; }

 private:
  int m_ = 0;
  std::map<int, Operator> coeffs_;
  std::optional<int> g_trunc_;
};

// sum_i d_{y_i} d_{eta_i}
Operator bv_operator(int m);
Quantisation bv_quantisation(const CritLocus& x);

// [delta, D] + 1/2 [D, D] for an arbitrary operator series D.
Operator kappa_series(const CritLocus& x, const Operator& d);
Operator kappa(const CritLocus& x, const Quantisation& delta);

struct TangentElement {
  Quantisation base;
  std::map<int, Operator> eps_part;  // v_j, standing for v_j hbar^j eps

  Operator eps_series() const;
};

TangentElement sigma_tangent(const Quantisation& delta);

// [iota_df + Delta, u]. Throws NotMaurerCartan unless kappa vanishes or the
// caller explicitly allows a non-MC Delta.
Operator centre_differential(const CritLocus& x, const Quantisation& delta, const Operator& u,
                             bool allow_non_mc = false);
// Same with Delta given as an operator series; no MC check.
Operator centre_differential_series(const CritLocus& x, const Operator& delta_series, const Operator& u);

struct NondegeneracyReport {
  bool nondegenerate = false;
  // Determinant of the pairing matrix reduced modulo the eta-ideal.
  Element determinant;
  // Entry (a, b) is d_{s_a} d_{s_b} of the symbol of Delta_2, s = (xi_1..xi_m, theta_1..theta_m).
  std::vector<std::vector<Element>> pairing;
};

NondegeneracyReport is_nondegenerate(const CritLocus& x, const Quantisation& delta);
// Direct form for a candidate Delta_2 that need not form a valid quantisation.
NondegeneracyReport is_nondegenerate_operator(const CritLocus& x, const Operator& delta2);

// Determinant of a square matrix over the even, eta-free part of O_X.
Element polynomial_determinant(const std::vector<std::vector<Element>>& matrix, int m);

// ---------------------------------------------------------------------------
// Filtrations on the quantised polyvectors prod_j F_j D hbar^{j-1}.

enum class FiltrationKind { Ftilde, G, GconvF };

struct FiltrationLabel {
  FiltrationKind kind = FiltrationKind::Ftilde;
  int level = 0;
};

// Largest operator order allowed at hbar^{j-1} in the intersection of the
// labelled piece with Ftilde^p; nullopt when the slot is zero.
std::optional<int> filtration_order_bound(const FiltrationLabel& label, int p, int j);

struct IntWindow {
  int lo = 0;
  int hi = -1;  // empty when hi < lo
  bool contains(int v) const { return lo <= v && v <= hi; }
  bool empty() const { return hi < lo; }
};

// Dimension over Q per (cohomological degree, hbar exponent) of the piece,
// restricted to operators whose multiplication factor has y-degree at most
// weight_bound. Throws TruncationRequired without a bound.
using DimTable = std::map<std::pair<int, int>, long long>;
DimTable filtration_dims(const FiltrationLabel& label, int p, const IntWindow& degree_window,
                         const IntWindow& hbar_window, const CritLocus& x, std::optional<int> weight_bound);

// Number of normal-ordered monomials of cohomological degree d, order <= k and
// y-degree <= w in m variables.
long long count_operator_monomials(int m, int d, int k, int w);

// ---------------------------------------------------------------------------
// The derivation nu(omega, pi) on arity-p symbols at hbar-level k.

struct EigenReport {
  int p = 0;
  int k = 0;
  std::size_t dimension = 0;
  std::vector<long long> eigenvalues;  // distinct integer eigenvalues of hbar^{-1} nu
  bool diagonalisable = false;
  std::optional<Rational> combined_scalar;  // set when nu + d_{hbar^{-1}} is scalar
  bool invertible = false;
};

// Window: symbol monomials of arity p whose multiplication factor has y-degree
// at most weight_bound. Requires the critical locus of the canonical pair.
EigenReport nu_eigen_analysis(const CritLocus& x, int p, int k, std::optional<int> weight_bound);

}  // namespace qshift
