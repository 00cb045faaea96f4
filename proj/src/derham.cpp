#include "qshift/derham.hpp"

#include <algorithm>
#include <sstream>

#include "qshift/error.hpp"
#include "qshift/linalg.hpp"

namespace qshift {

int WordKey::degree() const {
  int d = length();
  for (const auto& a : factors) d += a.degree();
  return d;
}

bool operator<(const WordKey& a, const WordKey& b) {
  if (a.hbar_exp != b.hbar_exp) return a.hbar_exp < b.hbar_exp;
  return a.factors < b.factors;
}

int DRWord::max_length() const {
  int r = -1;
  for (const auto& [key, c] : terms_) r = std::max(r, key.length());
  return r;
}

void DRWord::add_term(const WordKey& key, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

DRWord& DRWord::operator+=(const DRWord& other) {
  if (m_ == 0) {
    m_ = other.m_;
    hodge_weight_ = other.hodge_weight_;
  } else {
    hodge_weight_ = std::min(hodge_weight_, other.hodge_weight_);
  }
  for (const auto& [key, c] : other.terms_) add_term(key, c);
  return *this;
}

DRWord& DRWord::operator-=(const DRWord& other) { return *this += -other; }

DRWord DRWord::operator-() const { return scaled(Rational(-1)); }

DRWord DRWord::scaled(const Rational& c) const {
  DRWord w(m_, hodge_weight_);
  for (const auto& [key, x] : terms_) w.add_term(key, x * c);
  return w;
}

DRWord DRWord::times_hbar(int k) const {
  DRWord w(m_, hodge_weight_);
  for (const auto& [key, x] : terms_) {
    WordKey shifted = key;
    shifted.hbar_exp += k;
    w.add_term(shifted, x);
  }
  return w;
}

std::string DRWord::to_string(const AlgebraSignature& sig) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.get_str() << ")";
    if (key.hbar_exp != 0) os << "*hbar^" << key.hbar_exp;
    os << "*[";
    for (std::size_t i = 0; i < key.factors.size(); ++i) {
      if (i) os << " | ";
      os << monomial_string(key.factors[i], sig);
    }
    os << "]";
  }
  return os.str();
}

namespace {

Monomial unit_monomial(int m) { return Monomial{std::vector<int>(m, 0), 0}; }

void add_scaled(DRWord& w, const WordKey& key, const Rational& c, int sign) { w.add_term(key, sign < 0 ? Rational(-c) : c); }

}  // namespace

DRWord dr_of(const Element& a) {
  DRWord w(a.m(), 0);
  for (const auto& [mono, c] : a.terms()) {
    for (const auto& [e, x] : c.coefficients()) w.add_term(WordKey{e, {mono}}, x);
  }
  return w;
}

DRWord dr_unit_pair(int m) {
  DRWord w(m, 1);
  w.add_term(WordKey{0, {unit_monomial(m), unit_monomial(m)}}, Rational(1));
  return w;
}

DRWord dr_d(const Element& a) {
  const int m = a.m();
  DRWord w(m, 1);
  for (const auto& [mono, c] : a.terms()) {
    for (const auto& [e, x] : c.coefficients()) {
      w.add_term(WordKey{e, {unit_monomial(m), mono}}, x);
      add_scaled(w, WordKey{e, {mono, unit_monomial(m)}}, x, mono.odd() ? 1 : -1);
    }
  }
  return w;
}

DRWord cup(const DRWord& w1, const DRWord& w2) {
  DRWord out(w1.m() ? w1.m() : w2.m(), w1.hodge_weight() + w2.hodge_weight());
  for (const auto& [k1, c1] : w1.terms()) {
    for (const auto& [k2, c2] : w2.terms()) {
      const Monomial& a = k1.factors.back();
      const Monomial& b = k2.factors.front();
      const int sign = wedge_sign(a.eta, b.eta);
      if (sign == 0) continue;
      WordKey key;
      key.hbar_exp = k1.hbar_exp + k2.hbar_exp;
      key.factors.assign(k1.factors.begin(), k1.factors.end() - 1);
      Monomial mid{a.y, a.eta | b.eta};
      for (std::size_t i = 0; i < mid.y.size(); ++i) mid.y[i] += b.y[i];
      key.factors.push_back(std::move(mid));
      key.factors.insert(key.factors.end(), k2.factors.begin() + 1, k2.factors.end());
      add_scaled(out, key, c1 * c2, sign);
    }
  }
  return out;
}

DRWord dr_total_d(const CritLocus& x, const DRWord& w) {
  const int m = x.m();
  DRWord out(m, w.hodge_weight());
  for (const auto& [key, c] : w.terms()) {
    const auto& fs = key.factors;
    int parity = 0;  // degree of everything to the left of the current factor
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const int sign = parity % 2 ? -1 : 1;
      // delta on the factor
      const Element da = apply_koszul_delta(x, Element::monomial(m, fs[i]));
      for (const auto& [mono, coeff] : da.terms()) {
        WordKey k = key;
        k.factors[i] = mono;
        add_scaled(out, k, c * coeff.coeff(0), sign);
      }
      // e a_i
      {
        WordKey k = key;
        k.factors.insert(k.factors.begin() + static_cast<long>(i), unit_monomial(m));
        add_scaled(out, k, c, sign);
      }
      // -(-1)^{|a_i|} a_i e
      {
        WordKey k = key;
        k.factors.insert(k.factors.begin() + static_cast<long>(i) + 1, unit_monomial(m));
        add_scaled(out, k, c, fs[i].odd() ? sign : -sign);
      }
      parity += fs[i].odd() ? 1 : 0;
      if (i + 1 < fs.size()) {
        // D(e) = e e
        WordKey k = key;
        k.factors.insert(k.factors.begin() + static_cast<long>(i) + 1, unit_monomial(m));
        add_scaled(out, k, c, parity % 2 ? -1 : 1);
        parity += 1;
      }
    }
  }
  return out;
}

namespace {

Operator word_product(int m, const WordKey& key, const Operator& delta, int rho_slot, const Operator& rho) {
  Operator op = Operator::multiplication(Element::monomial(m, key.factors[0]));
  for (std::size_t i = 1; i < key.factors.size(); ++i) {
    const Operator& middle = static_cast<int>(i) - 1 == rho_slot ? rho : delta;
    op = op_compose(op, middle);
    if (op.is_zero()) return op;
    op = op_compose(op, Operator::multiplication(Element::monomial(m, key.factors[i])));
  }
  return op;
}

}  // namespace

Operator mu_series(const DRWord& w, const Operator& delta) {
  const int m = w.m() ? w.m() : delta.m();
  Operator out(m);
  for (const auto& [key, c] : w.terms()) {
    const Operator op = word_product(m, key, delta, -1, delta);
    out += op.scaled(HSeries::monomial(c, key.hbar_exp));
  }
  return out;
}

Operator mu(const DRWord& w, const Quantisation& delta) {
  const int m = w.m() ? w.m() : delta.m();
  const Operator s = delta.is_zero() ? Operator(m) : delta.series();
  return mu_series(w, s);
}

Operator nu_series(const DRWord& w, const Operator& delta, const Operator& rho) {
  const int m = w.m() ? w.m() : delta.m();
  Operator out(m);
  for (bool rho_odd : {false, true}) {
    const Operator part = rho.parity_part(rho_odd);
    if (part.is_zero()) continue;
    const int shift = rho_odd ? 0 : 1;  // |rho| - 1 mod 2
    for (const auto& [key, c] : w.terms()) {
      int prefix = 0;
      for (int i = 0; i < key.length(); ++i) {
        prefix += key.factors[i].odd() ? 1 : 0;
        const int sign = (shift * (prefix + i)) % 2 ? -1 : 1;
        const Operator op = word_product(m, key, delta, i, part);
        out += op.scaled(HSeries::monomial(sign < 0 ? Rational(-c) : c, key.hbar_exp));
      }
    }
  }
  return out;
}

Operator nu(const DRWord& w, const Quantisation& delta, const Operator& rho) {
  const int m = w.m() ? w.m() : delta.m();
  return nu_series(w, delta.is_zero() ? Operator(m) : delta.series(), rho);
}

Operator check_keylemma_series(const CritLocus& x, const DRWord& w, const Operator& delta) {
  const Operator lhs = centre_differential_series(x, delta, mu_series(w, delta));
  const Operator k = kappa_series(x, delta);
  return lhs - mu_series(dr_total_d(x, w), delta) - nu_series(w, delta, k);
}

Operator check_keylemma(const CritLocus& x, const DRWord& w, const Quantisation& delta) {
  return check_keylemma_series(x, w, delta.is_zero() ? Operator(x.m()) : delta.series());
}

DRWord canonical_symplectic(const CritLocus& x) {
  const int m = x.m();
  DRWord omega(m, 2);
  for (int i = 0; i < m; ++i) omega += cup(dr_d(Element::y(m, i)), dr_d(Element::eta(m, i)));
  omega.set_hodge_weight(2);
  return omega;
}

std::string compat_kind_name(CompatKind kind) {
  switch (kind) {
    case CompatKind::ExactCocycleEquality: return "ExactCocycleEquality";
    case CompatKind::CoboundaryWitness: return "CoboundaryWitness";
    case CompatKind::Fails: return "Fails";
  }
  return "Fails";
}

std::optional<int> centre_conv_order_bound(int q, int j) {
  if (j < 0) return std::nullopt;
  const int bound = j >= q ? j : 2 * j - q;
  if (bound < 0) return std::nullopt;
  return bound;
}

CompatVerdict check_compatibility(const CritLocus& x, const DRWord& omega, const Quantisation& delta,
                                  const CompatWindow& window) {
  const int m = x.m();
  if (!kappa(x, delta).is_zero()) throw Error(ErrorKind::NotMaurerCartan, "Delta does not satisfy the Maurer-Cartan equation");
  if (window.hbar_order < 1 || window.weight_bound < 0) throw Error(ErrorKind::InvalidArgument, "invalid search window");

  CompatVerdict verdict;
  verdict.window = window;
  verdict.witness = Operator(m);
  verdict.residual = mu(omega, delta) - sigma_tangent(delta).eps_series();
  if (verdict.residual.is_zero()) {
    verdict.kind = CompatKind::ExactCocycleEquality;
    return verdict;
  }

  const int trunc = window.hbar_order;
  const Operator delta_series = delta.is_zero() ? Operator(m) : delta.series();

  // Coordinates of the equation: (key, hbar exponent) pairs below the truncation.
  std::map<std::pair<OpKey, int>, std::size_t> index;
  auto coords = [&](const Operator& op) {
    SparseVec v;
    for (const auto& [key, c] : op.terms()) {
      for (const auto& [e, q] : c.coefficients()) {
        if (e >= trunc) continue;
        auto [it, inserted] = index.emplace(std::make_pair(key, e), index.size());
        v[it->second] += q;
      }
    }
    std::erase_if(v, [](const auto& t) { return t.second == 0; });
    return v;
  };

  std::vector<Operator> basis;
  std::vector<SparseVec> columns;
  for (int j = 1; j < trunc; ++j) {
    const auto bound = centre_conv_order_bound(2, j);
    if (!bound) continue;
    for (const OpKey& key : enumerate_opkeys(m, 0, *bound, window.weight_bound)) {
      Operator h = Operator::from_key(m, key, HSeries::hbar(j));
      columns.push_back(coords(centre_differential_series(x, delta_series, h)));
      basis.push_back(std::move(h));
    }
  }
  verdict.unknowns = basis.size();
  const SparseVec rhs = coords(verdict.residual);
  if (auto sol = solve_columns(columns, rhs)) {
    for (const auto& [k, c] : *sol) verdict.witness += basis[k].scaled(HSeries(c));
    verdict.kind = CompatKind::CoboundaryWitness;
  } else {
    verdict.kind = CompatKind::Fails;
  }
  return verdict;
}

}  // namespace qshift
