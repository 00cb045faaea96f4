#include <algorithm>

#include "qshift/error.hpp"
#include "qshift/quantise.hpp"

namespace qshift {

namespace {

long long choose(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

long long count_operator_monomials(int m, int d, int k, int w) {
  if (k < 0 || w < 0) return 0;
  long long total = 0;
  const long long y_monomials = choose(w + m, m);
  for (int t = 0; t <= std::min(m, k); ++t) {
    const int s = t - d;
    if (s < 0 || s > m) continue;
    total += y_monomials * choose(m, s) * choose(m, t) * choose(k - t + m, m);
  }
  return total;
}

std::optional<int> filtration_order_bound(const FiltrationLabel& label, int p, int j) {
  if (j < 0 || j < p) return std::nullopt;
  int bound = j;
  switch (label.kind) {
    case FiltrationKind::Ftilde:
      if (j < label.level) return std::nullopt;
      break;
    case FiltrationKind::G:
      bound = j - label.level;
      break;
    case FiltrationKind::GconvF:
      bound = j < label.level ? 2 * j - label.level : j;
      break;
  }
  if (bound < 0) return std::nullopt;
  return bound;
}

DimTable filtration_dims(const FiltrationLabel& label, int p, const IntWindow& degree_window,
                         const IntWindow& hbar_window, const CritLocus& x, std::optional<int> weight_bound) {
  if (!weight_bound) throw Error(ErrorKind::TruncationRequired, "filtration dimensions need a weight bound");
  if (label.level < 0) throw Error(ErrorKind::InvalidArgument, "filtration level must be non-negative");
  DimTable out;
  for (int e = hbar_window.lo; e <= hbar_window.hi; ++e) {
    const auto bound = filtration_order_bound(label, p, e + 1);
    for (int d = degree_window.lo; d <= degree_window.hi; ++d) {
      out[{d, e}] = bound ? count_operator_monomials(x.m(), d, *bound, *weight_bound) : 0;
    }
  }
  return out;
}

}  // namespace qshift
