#include "qshift/coefficients.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "qshift/linalg.hpp"

namespace qshift {

std::string to_string(const Rational& q) { return q.get_str(); }

HSeries::HSeries(const Rational& c) {
  if (c != 0) coeffs_.emplace(0, c);
}

HSeries HSeries::monomial(const Rational& c, int exponent, int trunc_order) {
  HSeries s;
  s.trunc_ = trunc_order;
  s.add_term(exponent, c);
  return s;
}

void HSeries::add_term(int exponent, const Rational& c) {
  if (c == 0) return;
  if (exponent >= trunc_) {
    truncated_ = true;
    return;
  }
  auto it = coeffs_.find(exponent);
  if (it == coeffs_.end()) {
    coeffs_.emplace(exponent, c);
  } else {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

bool HSeries::is_constant() const {
  return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0);
}

std::optional<int> HSeries::min_exp() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.begin()->first;
}

std::optional<int> HSeries::max_exp() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.rbegin()->first;
}

Rational HSeries::coeff(int exponent) const {
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

HSeries HSeries::with_trunc(int trunc_order) const {
  HSeries s;
  s.trunc_ = std::min(trunc_, trunc_order);
  s.truncated_ = truncated_;
  for (const auto& [e, c] : coeffs_) s.add_term(e, c);
  return s;
}

Rational HSeries::evaluate(const Rational& hbar_value) const {
  Rational total = 0;
  for (const auto& [e, c] : coeffs_) {
    Rational p = 1;
    if (e >= 0) {
      for (int i = 0; i < e; ++i) p *= hbar_value;
    } else {
      for (int i = 0; i < -e; ++i) p /= hbar_value;
    }
    total += c * p;
  }
  return total;
}

HSeries& HSeries::operator+=(const HSeries& other) {
  if (other.trunc_ < trunc_) {
    trunc_ = other.trunc_;
    for (auto it = coeffs_.lower_bound(trunc_); it != coeffs_.end();) {
      it = coeffs_.erase(it);
      truncated_ = true;
    }
  }
  truncated_ = truncated_ || other.truncated_;
  for (const auto& [e, c] : other.coeffs_) add_term(e, c);
  return *this;
}

HSeries& HSeries::operator-=(const HSeries& other) { return *this += -other; }

HSeries& HSeries::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [e, x] : coeffs_) x *= c;
  return *this;
}

HSeries& HSeries::operator*=(const HSeries& other) { return *this = *this * other; }

HSeries HSeries::operator-() const {
  HSeries s = *this;
  for (auto& [e, c] : s.coeffs_) c = -c;
  return s;
}

HSeries operator*(const HSeries& a, const HSeries& b) {
  HSeries out;
  out.trunc_ = std::min(a.trunc_, b.trunc_);
  out.truncated_ = a.truncated_ || b.truncated_;
  for (const auto& [ea, ca] : a.coeffs_) {
    for (const auto& [eb, cb] : b.coeffs_) {
      // Exponent sums past either bound are unknown; avoid int overflow for exact operands.
      const long long e = static_cast<long long>(ea) + eb;
      if (e >= out.trunc_) {
        out.truncated_ = true;
        continue;
      }
      out.add_term(static_cast<int>(e), ca * cb);
    }
  }
  return out;
}

HSeries hseries_mul(const HSeries& a, const HSeries& b) { return a * b; }

HSeries hbar_derivative_scaled(const HSeries& a) {
  const int trunc = a.trunc_order() == HSeries::kExact ? HSeries::kExact : a.trunc_order() + 1;
  HSeries out = HSeries::monomial(Rational(0), 0, trunc);
  for (const auto& [e, c] : a.coefficients()) {
    out += HSeries::monomial(Rational(c * e), e + 1, trunc);
  }
  if (a.truncated()) out += HSeries::monomial(Rational(1), trunc, trunc);
  return out;
}

std::string HSeries::to_string(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : coeffs_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << var;
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::size_t rank_at(const HMatrix& matrix, const Rational& hbar_value) {
  std::vector<SparseVec> rows;
  rows.reserve(matrix.size());
  for (const auto& r : matrix) {
    SparseVec v;
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[j].is_zero()) continue;
      Rational x = r[j].evaluate(hbar_value);
      if (x != 0) v.emplace(j, std::move(x));
    }
    rows.push_back(std::move(v));
  }
  return rank(rows);
}

namespace {

// Dense univariate polynomial over Q, index = exponent.
using UPoly = std::vector<Rational>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

UPoly sub(UPoly a, const UPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// Exact quotient a / b; b must divide a.
UPoly divexact(UPoly a, const UPoly& b) {
  if (a.empty()) return {};
  UPoly q(a.size() - b.size() + 1, Rational(0));
  const Rational lead = b.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    const Rational c = a[k + b.size() - 1] / lead;
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
  }
  trim(q);
  return q;
}

}  // namespace

std::size_t rank_over_hbar_field_exact(const HMatrix& matrix) {
  // Multiply each row by hbar^-min_exp so entries are polynomials; this does
  // not change the rank over Q(hbar).
  std::vector<std::vector<UPoly>> m;
  m.reserve(matrix.size());
  std::size_t ncols = 0;
  for (const auto& r : matrix) {
    ncols = std::max(ncols, r.size());
    int shift = 0;
    for (const auto& e : r) {
      if (auto lo = e.min_exp()) shift = std::min(shift, *lo);
    }
    std::vector<UPoly> row(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) {
      for (const auto& [e, c] : r[j].coefficients()) {
        const std::size_t idx = static_cast<std::size_t>(e - shift);
        if (row[j].size() <= idx) row[j].resize(idx + 1, Rational(0));
        row[j][idx] = c;
      }
      trim(row[j]);
    }
    m.push_back(std::move(row));
  }
  for (auto& row : m) row.resize(ncols);

  std::size_t rank = 0;
  UPoly prev{Rational(1)};
  for (std::size_t col = 0; col < ncols && rank < m.size(); ++col) {
    std::size_t pivot = m.size();
    for (std::size_t i = rank; i < m.size(); ++i) {
      if (!m[i][col].empty()) {
        pivot = i;
        break;
      }
    }
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      for (std::size_t j = col + 1; j < ncols; ++j) {
        UPoly t = sub(mul(m[rank][col], m[i][j]), mul(m[i][col], m[rank][j]));
        m[i][j] = divexact(std::move(t), prev);
      }
      m[i][col].clear();
    }
    prev = m[rank][col];
    ++rank;
  }
  return rank;
}

namespace {

constexpr std::array<int, 25> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                         43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

}  // namespace

RankCertificate rank_over_hbar_field_certified(const HMatrix& matrix, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const std::size_t first = rng.uniform(kPrimes.size());
  std::size_t second = rng.uniform(kPrimes.size() - 1);
  if (second >= first) ++second;

  RankCertificate cert;
  cert.points = {Rational(kPrimes[first]), Rational(kPrimes[second])};
  for (const auto& p : cert.points) cert.ranks_at_points.push_back(rank_at(matrix, p));
  if (cert.ranks_at_points[0] == cert.ranks_at_points[1]) {
    cert.rank = cert.ranks_at_points[0];
  } else {
    cert.used_fallback = true;
    cert.rank = rank_over_hbar_field_exact(matrix);
  }
  return cert;
}

RankCertificate rank_over_hbar_field_sparse(const std::vector<SparseHRow>& rows, std::size_t ncols, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const std::size_t first = rng.uniform(kPrimes.size());
  std::size_t second = rng.uniform(kPrimes.size() - 1);
  if (second >= first) ++second;

  RankCertificate cert;
  cert.points = {Rational(kPrimes[first]), Rational(kPrimes[second])};
  for (const auto& p : cert.points) {
    std::vector<SparseVec> special;
    special.reserve(rows.size());
    for (const auto& r : rows) {
      SparseVec v;
      for (const auto& [j, c] : r) {
        Rational x = c.evaluate(p);
        if (x != 0) v.emplace(j, std::move(x));
      }
      special.push_back(std::move(v));
    }
    cert.ranks_at_points.push_back(rank(special));
  }
  if (cert.ranks_at_points[0] == cert.ranks_at_points[1]) {
    cert.rank = cert.ranks_at_points[0];
    return cert;
  }
  cert.used_fallback = true;
  HMatrix dense(rows.size(), std::vector<HSeries>(ncols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [j, c] : rows[i]) dense[i][j] = c;
  }
  cert.rank = rank_over_hbar_field_exact(dense);
  return cert;
}

std::size_t rank_over_hbar_field(const HMatrix& matrix, std::uint64_t seed) {
  return rank_over_hbar_field_certified(matrix, seed).rank;
}

}  // namespace qshift
