#include "qshift/linalg.hpp"

namespace qshift {

void axpy(SparseVec& y, const Rational& a, const SparseVec& x) {
  if (a == 0) return;
  for (const auto& [col, v] : x) {
    auto it = y.find(col);
    if (it == y.end()) {
      y.emplace(col, Rational(a * v));
    } else {
      it->second += a * v;
      if (it->second == 0) y.erase(it);
    }
  }
}

EchelonBasis::Reduction EchelonBasis::reduce(SparseVec v) const {
  Reduction out;
  // Rows are fully reduced against each other, so one pass over the pivots
  // present in v (in increasing order) suffices; new entries only appear at
  // columns larger than the pivot being cleared.
  auto it = v.begin();
  while (it != v.end()) {
    auto row = rows_.find(it->first);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    const std::size_t pivot = it->first;
    const Rational factor = it->second;
    axpy(v, -factor, row->second);
    if (track_) axpy(out.combination, factor, combos_.at(pivot));
    it = v.upper_bound(pivot);
  }
  out.remainder = std::move(v);
  return out;
}

bool EchelonBasis::insert(SparseVec v, std::size_t tag) {
  Reduction red = reduce(std::move(v));
  if (red.remainder.empty()) return false;
  SparseVec combo;
  if (track_) {
    combo[tag] = 1;
    axpy(combo, Rational(-1), red.combination);
  }
  SparseVec row = std::move(red.remainder);
  const std::size_t pivot = row.begin()->first;
  const Rational inv = 1 / row.begin()->second;
  for (auto& [col, x] : row) x *= inv;
  if (track_) {
    for (auto& [col, x] : combo) x *= inv;
  }
  // Keep the basis fully reduced: clear the new pivot column elsewhere.
  for (auto& [p, other] : rows_) {
    auto hit = other.find(pivot);
    if (hit == other.end()) continue;
    const Rational factor = hit->second;
    axpy(other, -factor, row);
    if (track_) axpy(combos_[p], -factor, combo);
  }
  rows_.emplace(pivot, std::move(row));
  if (track_) combos_.emplace(pivot, std::move(combo));
  return true;
}

std::size_t rank(const std::vector<SparseVec>& rows) {
  EchelonBasis basis;
  for (const auto& r : rows) basis.insert(r);
  return basis.rank();
}

std::size_t rank(const DenseMatrix& a) {
  std::vector<SparseVec> rows;
  rows.reserve(a.size());
  for (const auto& r : a) {
    SparseVec v;
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[j] != 0) v.emplace(j, r[j]);
    }
    rows.push_back(std::move(v));
  }
  return rank(rows);
}

std::optional<SparseVec> solve_columns(const std::vector<SparseVec>& columns, const SparseVec& rhs) {
  EchelonBasis basis(true);
  for (std::size_t k = 0; k < columns.size(); ++k) basis.insert(columns[k], k);
  auto red = basis.reduce(rhs);
  if (!red.remainder.empty()) return std::nullopt;
  return red.combination;
}

DenseMatrix identity_matrix(std::size_t n) {
  DenseMatrix id(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

}  // namespace qshift
