#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "qshift/gca.hpp"

namespace qshift {

enum class TruncationMode { WeightGraded, DegreeTruncated };

// WeightGraded: y_i has weight w_i and eta_i weight 1 - w_i; the bound is the
// largest total weight considered. DegreeTruncated: y_i has weight 1 and eta_i
// weight deg f - 1; the bound is the largest such degree.
struct TruncationSpec {
  TruncationMode mode = TruncationMode::WeightGraded;
  int bound = 8;
  int stabilisation_window = 2;
};

enum class CohomologyField { QAtHbarOne, QOfHbar, QAtHbarZero };

std::string field_name(CohomologyField field);
std::string mode_name(TruncationMode mode);

struct CohomologyReport {
  std::map<int, long long> dims_by_degree;  // degrees -m..0
  CohomologyField field = CohomologyField::QOfHbar;
  TruncationSpec truncation;
  bool stabilised = false;
  long long euler_characteristic = 0;
  int level = 0;                  // truncation level at which the dims settled
  std::size_t rank_computations = 0;
  std::size_t fallback_ranks = 0;  // specialisations disagreed, exact elimination used

  long long total() const;
};

// dim_Q Q[y]/(d_1 f, ..., d_m f). Throws ZeroPolynomial, NotPolynomial, or
// NonIsolated when the quotient has not settled below degree cap.
long long milnor_number(const Element& f, int m, int cap = 30, int window = 2);

// Cohomology over Q(hbar) of O_X[hbar^-1, hbar] with differential delta + hbar Delta_BV.
CohomologyReport twisted_derham_dims(const CritLocus& x, const TruncationSpec& trunc, std::uint64_t seed = 0);

// Cohomology over Q of the Koszul complex (O_X, delta).
CohomologyReport koszul_dims_at_hbar_zero(const CritLocus& x, const TruncationSpec& trunc, std::uint64_t seed = 0);

}  // namespace qshift
