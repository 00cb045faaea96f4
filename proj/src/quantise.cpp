#include "qshift/quantise.hpp"

#include <bit>

#include "qshift/error.hpp"

namespace qshift {

Quantisation Quantisation::make(int m, const std::map<int, Operator>& coeffs, std::optional<int> g_trunc) {
  Quantisation q(m);
  q.g_trunc_ = g_trunc;
  for (const auto& [j, d] : coeffs) {
    if (d.is_zero()) continue;
    if (d.m() != m) throw Error(ErrorKind::SignatureMismatch, "quantisation coefficient has the wrong number of variables");
    const std::string where = "coefficient Delta_" + std::to_string(j);
    if (j < 2) throw Error(ErrorKind::InvalidQuantisation, where + ": indices start at 2");
    for (const auto& [key, c] : d.terms()) {
      if (!c.is_constant()) throw Error(ErrorKind::InvalidQuantisation, where + " must not involve hbar");
      if (key.degree() != 1) throw Error(ErrorKind::InvalidQuantisation, where + " must have cohomological degree 1");
    }
    if (op_order(d) > j) {
      throw Error(ErrorKind::InvalidQuantisation,
                  where + " has order " + std::to_string(op_order(d)) + " > " + std::to_string(j));
    }
    q.coeffs_.emplace(j, d);
  }
  return q;
}

Operator Quantisation::coefficient(int j) const {
  auto it = coeffs_.find(j);
  return it == coeffs_.end() ? Operator(m_) : it->second;
}

Operator Quantisation::series() const {
  Operator s(m_);
  for (const auto& [j, d] : coeffs_) s += d.times_hbar(j - 1);
  return s;
}

Operator bv_operator(int m) {
  Operator d(m);
  for (int i = 0; i < m; ++i) d += op_compose(Operator::d_y(m, i), Operator::d_eta(m, i));
  return d;
}

Quantisation bv_quantisation(const CritLocus& x) { return Quantisation::make(x.m(), {{2, bv_operator(x.m())}}); }

Operator kappa_series(const CritLocus& x, const Operator& d) {
  Operator k = op_commutator(koszul_operator(x), d);
  k += op_commutator(d, d).scaled(HSeries(Rational(1, 2)));
  return k;
}

Operator kappa(const CritLocus& x, const Quantisation& delta) { return kappa_series(x, delta.series()); }

Operator TangentElement::eps_series() const {
  Operator s(base.m());
  for (const auto& [j, v] : eps_part) s += v.times_hbar(j);
  return s;
}

TangentElement sigma_tangent(const Quantisation& delta) {
  TangentElement t{delta, {}};
  for (const auto& [j, d] : delta.coeffs()) {
    if (j != 1) t.eps_part.emplace(j, d.scaled(HSeries(j - 1)));
  }
  return t;
}

Operator centre_differential_series(const CritLocus& x, const Operator& delta_series, const Operator& u) {
  return op_commutator(koszul_operator(x) + delta_series, u);
}

Operator centre_differential(const CritLocus& x, const Quantisation& delta, const Operator& u, bool allow_non_mc) {
  const Operator s = delta.series();
  if (!allow_non_mc && !kappa_series(x, s).is_zero()) {
    throw Error(ErrorKind::NotMaurerCartan, "Delta does not satisfy the Maurer-Cartan equation");
  }
  return centre_differential_series(x, s, u);
}

Element polynomial_determinant(const std::vector<std::vector<Element>>& matrix, int m) {
  const int n = static_cast<int>(matrix.size());
  if (n == 0) return Element::constant(m, HSeries(1));
  if (n > 20) throw Error(ErrorKind::InvalidArgument, "pairing matrix too large");
  // Row-by-row expansion over subsets of used columns; the sign of a
  // permutation accumulates one inversion per earlier-placed larger column.
  std::map<std::uint32_t, Element> layer{{0u, Element::constant(m, HSeries(1))}};
  for (int r = 0; r < n; ++r) {
    std::map<std::uint32_t, Element> next;
    for (const auto& [mask, acc] : layer) {
      for (int c = 0; c < n; ++c) {
        if (mask & (1u << c)) continue;
        const Element& entry = matrix[r][c];
        if (entry.is_zero()) continue;
        Element term = gmul(acc, entry);
        if (term.is_zero()) continue;
        if (std::popcount(mask >> (c + 1)) % 2) term = -term;
        auto [it, inserted] = next.emplace(mask | (1u << c), term);
        if (!inserted) it->second += term;
      }
    }
    layer = std::move(next);
  }
  auto it = layer.find((1u << n) - 1);
  return it == layer.end() ? Element(m) : it->second;
}

namespace {

Element eta_free_part(const Element& a) {
  Element out(a.m());
  for (const auto& [mono, c] : a.terms()) {
    if (mono.eta == 0) out.add_term(mono, c);
  }
  return out;
}

Element function_part(const Polyvector& p, int m) {
  Element out(m);
  for (const auto& [key, c] : p.terms()) {
    if (key.order() == 0) out.add_term(key.left, c);
  }
  return out;
}

bool is_nonzero_constant(const Element& e) {
  if (e.terms().size() != 1) return false;
  const auto& [mono, c] = *e.terms().begin();
  return mono.eta == 0 && mono.y_degree() == 0 && c.is_constant() && !c.is_zero();
}

}  // namespace

NondegeneracyReport is_nondegenerate_operator(const CritLocus& x, const Operator& delta2) {
  const int m = x.m();
  NondegeneracyReport rep;
  const Polyvector pi = delta2.is_zero() ? Polyvector(m) : symbol(delta2, 2);
  std::vector<std::pair<GenKind, int>> gens;
  for (int i = 0; i < m; ++i) gens.emplace_back(GenKind::Xi, i);
  for (int i = 0; i < m; ++i) gens.emplace_back(GenKind::Theta, i);
  rep.pairing.assign(2 * m, std::vector<Element>(2 * m, Element(m)));
  std::vector<std::vector<Element>> reduced = rep.pairing;
  for (int a = 0; a < 2 * m; ++a) {
    for (int b = 0; b < 2 * m; ++b) {
      const Polyvector inner = pi.left_derivative(gens[b].first, gens[b].second);
      rep.pairing[a][b] = function_part(inner.left_derivative(gens[a].first, gens[a].second), m);
      reduced[a][b] = eta_free_part(rep.pairing[a][b]);
    }
  }
  rep.determinant = polynomial_determinant(reduced, m);
  rep.nondegenerate = is_nonzero_constant(rep.determinant);
  return rep;
}

NondegeneracyReport is_nondegenerate(const CritLocus& x, const Quantisation& delta) {
  return is_nondegenerate_operator(x, delta.coefficient(2));
}

}  // namespace qshift
