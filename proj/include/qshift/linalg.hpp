#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "qshift/coefficients.hpp"

namespace qshift {

// Sparse rational vector indexed by column.
using SparseVec = std::map<std::size_t, Rational>;

void axpy(SparseVec& y, const Rational& a, const SparseVec& x);

// Incrementally built reduced row echelon basis over Q. The pivot of a row is
// its smallest column index; callers order columns so that the pivot is the
// "leading" coordinate they care about.
//
// When tracking is on, every stored row remembers which combination of the
// inserted vectors produced it, so reduce() can also return a solution.
class EchelonBasis {
 public:
  explicit EchelonBasis(bool track_combinations = false) : track_(track_combinations) {}

  // Returns true if the vector increased the rank.
  bool insert(SparseVec v, std::size_t tag = 0);

  struct Reduction {
    SparseVec remainder;
    SparseVec combination;  // v - remainder = sum combination[tag] * inserted[tag]
  };
  Reduction reduce(SparseVec v) const;
  bool contains(const SparseVec& v) const { return reduce(v).remainder.empty(); }

  std::size_t rank() const { return rows_.size(); }
  const std::map<std::size_t, SparseVec>& rows() const { return rows_; }

 private:
  bool track_;
  std::map<std::size_t, SparseVec> rows_;    // pivot -> normalised row
  std::map<std::size_t, SparseVec> combos_;  // pivot -> combination of tags
};

using DenseMatrix = std::vector<std::vector<Rational>>;

std::size_t rank(const DenseMatrix& a);
std::size_t rank(const std::vector<SparseVec>& rows);

// Solves sum_k x_k columns[k] = rhs; nullopt if inconsistent.
std::optional<SparseVec> solve_columns(const std::vector<SparseVec>& columns, const SparseVec& rhs);

DenseMatrix identity_matrix(std::size_t n);

}  // namespace qshift
