#include <map>

#include "qshift/derham.hpp"
#include "qshift/error.hpp"
#include "qshift/linalg.hpp"
#include "qshift/quantise.hpp"

namespace qshift {

namespace {

DenseMatrix shifted(const DenseMatrix& a, const Rational& lambda) {
  DenseMatrix out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i][i] -= lambda;
  return out;
}

}  // namespace

EigenReport nu_eigen_analysis(const CritLocus& x, int p, int k, std::optional<int> weight_bound) {
  if (!weight_bound) throw Error(ErrorKind::TruncationRequired, "eigen analysis needs a weight bound");
  if (p < 0 || k < 1) throw Error(ErrorKind::InvalidArgument, "eigen analysis needs p >= 0 and k >= 1");
  const int m = x.m();
  EigenReport rep;
  rep.p = p;
  rep.k = k;

  std::vector<OpKey> basis;
  for (const OpKey& key : enumerate_opkeys(m, std::nullopt, p, *weight_bound)) {
    if (key.order() == p) basis.push_back(key);
  }
  std::map<OpKey, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
  const std::size_t n = basis.size();
  rep.dimension = n;

  const DRWord omega = canonical_symplectic(x);
  const Operator delta = bv_quantisation(x).series();
  const int level = p + k - 1;  // a symbol of arity p at G-level k sits at hbar^{p+k-1}

  DenseMatrix nu_matrix(n, std::vector<Rational>(n, Rational(0)));
  DenseMatrix d_matrix(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t col = 0; col < n; ++col) {
    const Operator rho = Operator::from_key(m, basis[col], HSeries::hbar(level));
    const Operator image = nu_series(omega, delta, rho).hbar_coefficient(level + 1);
    for (const auto& [key, c] : image.terms()) {
      if (key.order() > p) {
        throw Error(ErrorKind::InvalidArgument, "nu(omega, pi) does not preserve the order filtration on this window");
      }
      if (key.order() < p) continue;
      auto it = index.find(key);
      if (it == index.end()) throw Error(ErrorKind::TruncationRequired, "window is not stable under nu(omega, pi)");
      nu_matrix[it->second][col] = c.coeff(0);
    }
    // d/d(hbar^{-1}) = -hbar^2 d/dhbar
    for (const auto& [key, c] : rho.terms()) {
      const HSeries d = -hbar_derivative_scaled(c);
      d_matrix[index.at(key)][col] += d.coeff(level + 1);
    }
  }

  std::size_t found = 0;
  const int range = p + k + 4;
  for (int lambda = -range; lambda <= range; ++lambda) {
    const std::size_t nullity = n - rank(shifted(nu_matrix, Rational(lambda)));
    if (nullity == 0) continue;
    rep.eigenvalues.push_back(lambda);
    found += nullity;
  }
  rep.diagonalisable = found == n;

  DenseMatrix combined = nu_matrix;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) combined[i][j] += d_matrix[i][j];
  }
  bool scalar = n > 0;
  for (std::size_t i = 0; i < n && scalar; ++i) {
    for (std::size_t j = 0; j < n && scalar; ++j) {
      if (i != j && combined[i][j] != 0) scalar = false;
      if (i == j && combined[i][i] != combined[0][0]) scalar = false;
    }
  }
  if (scalar) rep.combined_scalar = combined[0][0];
  rep.invertible = rank(combined) == n;
  return rep;
}

}  // namespace qshift
