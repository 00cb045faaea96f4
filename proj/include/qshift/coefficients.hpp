#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qshift {

using Rational = mpq_class;
using Integer = mpz_class;

std::string to_string(const Rational& q);

inline constexpr int kDefaultHbarOrder = 8;

// Truncated Laurent polynomial in hbar with exact rational coefficients.
//
// Exponents >= trunc_order() are discarded; whenever that happens the result
// carries truncated() == true. Series built from plain rationals are exact
// (trunc_order() == kExact). Binary operations keep the smaller truncation
// order, so identities hold exactly modulo hbar^trunc_order for series with
// non-negative exponents.
class HSeries {
 public:
  static constexpr int kExact = std::numeric_limits<int>::max();

  HSeries() = default;
  HSeries(const Rational& c);  // NOLINT: implicit constant embedding
  HSeries(long c) : HSeries(Rational(c)) {}  // NOLINT
  HSeries(int c) : HSeries(Rational(c)) {}   // NOLINT

  static HSeries monomial(const Rational& c, int exponent, int trunc_order = kExact);
  static HSeries hbar(int exponent = 1, int trunc_order = kExact) {
    return monomial(Rational(1), exponent, trunc_order);
  }

  int trunc_order() const { return trunc_; }
  bool truncated() const { return truncated_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const;
  std::optional<int> min_exp() const;
  std::optional<int> max_exp() const;
  const std::map<int, Rational>& coefficients() const { return coeffs_; }
  Rational coeff(int exponent) const;

  HSeries with_trunc(int trunc_order) const;
  Rational evaluate(const Rational& hbar_value) const;

  HSeries& operator+=(const HSeries& other);
  HSeries& operator-=(const HSeries& other);
  HSeries& operator*=(const HSeries& other);
  HSeries& operator*=(const Rational& c);
  HSeries operator-() const;

  friend HSeries operator+(HSeries a, const HSeries& b) { return a += b; }
  friend HSeries operator-(HSeries a, const HSeries& b) { return a -= b; }
  friend HSeries operator*(const HSeries& a, const HSeries& b);
  friend HSeries operator*(HSeries a, const Rational& c) { return a *= c; }

  // Equality compares coefficients only; truncation metadata is ignored.
  friend bool operator==(const HSeries& a, const HSeries& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(const std::string& var = "hbar") const;

 private:
  void add_term(int exponent, const Rational& c);

  std::map<int, Rational> coeffs_;
  int trunc_ = kExact;
  bool truncated_ = false;
};

HSeries hseries_mul(const HSeries& a, const HSeries& b);

// hbar^2 d/dhbar: c hbar^k -> k c hbar^(k+1).
HSeries hbar_derivative_scaled(const HSeries& a);

// SplitMix64: a small splittable generator; split() derives an independent
// stream so that callers can hand sub-seeds to helpers deterministically.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  SplitMix64 split() { return SplitMix64(next()); }
  std::uint64_t uniform(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

using HMatrix = std::vector<std::vector<HSeries>>;

struct RankCertificate {
  std::size_t rank = 0;
  std::vector<Rational> points;
  std::vector<std::size_t> ranks_at_points;
  bool used_fallback = false;
};

// Rank over Q(hbar). Two specialisations at distinct primes from {2..97};
// when they disagree the exact fraction-free elimination over Q[hbar] decides.
RankCertificate rank_over_hbar_field_certified(const HMatrix& matrix, std::uint64_t seed);
std::size_t rank_over_hbar_field(const HMatrix& matrix, std::uint64_t seed);

// Same certificate for a row-sparse matrix with ncols columns.
using SparseHRow = std::map<std::size_t, HSeries>;
RankCertificate rank_over_hbar_field_sparse(const std::vector<SparseHRow>& rows, std::size_t ncols, std::uint64_t seed);

// Exact rank over Q(hbar) by Bareiss elimination on polynomial entries.
std::size_t rank_over_hbar_field_exact(const HMatrix& matrix);

// Rank over Q of the matrix with hbar specialised to a nonzero rational.
std::size_t rank_at(const HMatrix& matrix, const Rational& hbar_value);

}  // namespace qshift
