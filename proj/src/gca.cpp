#include "qshift/gca.hpp"

#include <bit>
#include <sstream>

#include "qshift/error.hpp"
#include "qshift/linalg.hpp"

namespace qshift {

int odd_count(OddSet s) { return std::popcount(s); }

int count_below(OddSet s, int i) { return std::popcount(s & ((OddSet{1} << i) - 1)); }

int count_above(OddSet s, int i) { return std::popcount(s >> (i + 1)); }

int wedge_sign(OddSet s, OddSet t) {
  if (s & t) return 0;
  int swaps = 0;
  for (OddSet rest = t; rest; rest &= rest - 1) swaps += count_above(s, std::countr_zero(rest));
  return swaps % 2 ? -1 : 1;
}

int compare_subsets(OddSet a, OddSet b) {
  if (a == b) return 0;
  const int i = std::countr_zero(a ^ b);
  const OddSet above = ~((OddSet{2} << i) - 1);
  if (a & (OddSet{1} << i)) return (b & above) ? -1 : 1;
  return (a & above) ? 1 : -1;
}

int Monomial::y_degree() const {
  int d = 0;
  for (int e : y) d += e;
  return d;
}

bool operator<(const Monomial& a, const Monomial& b) {
  if (a.y != b.y) return a.y < b.y;
  return compare_subsets(a.eta, b.eta) < 0;
}

AlgebraSignature AlgebraSignature::standard(int m) {
  AlgebraSignature sig;
  sig.m = m;
  for (int i = 1; i <= m; ++i) sig.names.push_back("y" + std::to_string(i));
  return sig;
}

std::string AlgebraSignature::y_name(int i) const {
  if (i < static_cast<int>(names.size())) return names[i];
  return "y" + std::to_string(i + 1);
}

std::string AlgebraSignature::eta_name(int i) const { return "eta_" + y_name(i); }

std::string monomial_string(const Monomial& mono, const AlgebraSignature& sig) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < mono.y.size(); ++i) {
    if (mono.y[i] == 0) continue;
    std::string p = sig.y_name(static_cast<int>(i));
    if (mono.y[i] > 1) p += "^" + std::to_string(mono.y[i]);
    parts.push_back(std::move(p));
  }
  for (OddSet rest = mono.eta; rest; rest &= rest - 1) parts.push_back(sig.eta_name(std::countr_zero(rest)));
  if (parts.empty()) return "1";
  std::string out = parts[0];
  for (std::size_t k = 1; k < parts.size(); ++k) out += "*" + parts[k];
  return out;
}

Element Element::constant(int m, const HSeries& c) {
  Element e(m);
  e.add_term(Monomial{std::vector<int>(m, 0), 0}, c);
  return e;
}

Element Element::y(int m, int i) {
  Monomial mono{std::vector<int>(m, 0), 0};
  mono.y[i] = 1;
  return monomial(m, mono);
}

Element Element::eta(int m, int i) { return monomial(m, Monomial{std::vector<int>(m, 0), OddSet{1} << i}); }

Element Element::monomial(int m, const Monomial& mono, const HSeries& c) {
  Element e(m);
  e.add_term(mono, c);
  return e;
}

std::optional<int> Element::degree() const {
  std::optional<int> d;
  for (const auto& [mono, c] : terms_) {
    if (d && *d != mono.degree()) return std::nullopt;
    d = mono.degree();
  }
  return d;
}

bool Element::is_hbar_free() const {
  for (const auto& [mono, c] : terms_) {
    if (!c.is_constant()) return false;
  }
  return true;
}

bool Element::is_eta_free() const {
  for (const auto& [mono, c] : terms_) {
    if (mono.eta) return false;
  }
  return true;
}

void Element::add_term(const Monomial& mono, const HSeries& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(mono);
  if (it == terms_.end()) {
    terms_.emplace(mono, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Element& Element::operator+=(const Element& other) {
  if (m_ == 0) m_ = other.m_;
  for (const auto& [mono, c] : other.terms_) add_term(mono, c);
  return *this;
}

Element& Element::operator-=(const Element& other) { return *this += -other; }

Element Element::operator-() const {
  Element e = *this;
  for (auto& [mono, c] : e.terms_) c = -c;
  return e;
}

Element Element::scaled(const HSeries& c) const {
  Element e(m_);
  for (const auto& [mono, x] : terms_) e.add_term(mono, x * c);
  return e;
}

Element Element::degree_part(int degree) const {
  Element e(m_);
  for (const auto& [mono, c] : terms_) {
    if (mono.degree() == degree) e.terms_.emplace(mono, c);
  }
  return e;
}

std::string Element::to_string(const AlgebraSignature& sig) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    const std::string cs = c.to_string();
    const bool unit = mono.y_degree() == 0 && mono.eta == 0;
    if (unit) {
      os << cs;
    } else if (cs == "1") {
      os << monomial_string(mono, sig);
    } else {
      os << "(" << cs << ")*" << monomial_string(mono, sig);
    }
  }
  return os.str();
}

Element gmul(const Element& a, const Element& b) {
  Element out(a.m() ? a.m() : b.m());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const int sign = wedge_sign(ma.eta, mb.eta);
      if (sign == 0) continue;
      Monomial mono{ma.y, ma.eta | mb.eta};
      for (std::size_t i = 0; i < mono.y.size(); ++i) mono.y[i] += mb.y[i];
      HSeries c = ca * cb;
      if (sign < 0) c = -c;
      out.add_term(mono, c);
    }
  }
  return out;
}

Element operator*(const Element& a, const Element& b) { return gmul(a, b); }

Element diff_y(const Element& a, int i) {
  Element out(a.m());
  for (const auto& [mono, c] : a.terms()) {
    if (mono.y[i] == 0) continue;
    Monomial d = mono;
    d.y[i] -= 1;
    out.add_term(d, c * Rational(mono.y[i]));
  }
  return out;
}

Element diff_eta(const Element& a, int i) {
  Element out(a.m());
  const OddSet bit = OddSet{1} << i;
  for (const auto& [mono, c] : a.terms()) {
    if (!(mono.eta & bit)) continue;
    Monomial d = mono;
    d.eta &= ~bit;
    out.add_term(d, count_below(mono.eta, i) % 2 ? -c : c);
  }
  return out;
}

namespace {

std::optional<std::vector<Rational>> detect_weights(const Element& f, int m) {
  // One equation sum_i a_i w_i = 1 per monomial; unknowns w_1..w_m.
  std::vector<SparseVec> columns(m);
  SparseVec rhs;
  std::size_t row = 0;
  for (const auto& [mono, c] : f.terms()) {
    for (int i = 0; i < m; ++i) {
      if (mono.y[i] != 0) columns[i].emplace(row, Rational(mono.y[i]));
    }
    rhs.emplace(row, Rational(1));
    ++row;
  }
  if (rank(columns) != static_cast<std::size_t>(m)) return std::nullopt;
  auto sol = solve_columns(columns, rhs);
  if (!sol) return std::nullopt;
  std::vector<Rational> w(m, Rational(0));
  for (const auto& [i, v] : *sol) w[i] = v;
  for (const auto& v : w) {
    if (v <= 0) return std::nullopt;
  }
  return w;
}

}  // namespace

CritLocus make_crit_locus(const Element& f, const AlgebraSignature& signature) {
  const int m = signature.m;
  if (m < 1 || m > kMaxVars) throw Error(ErrorKind::InvalidArgument, "number of variables out of range");
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "f is the zero polynomial");
  if (!f.is_eta_free() || !f.is_hbar_free()) {
    throw Error(ErrorKind::NotPolynomial, "f must be a polynomial in the y variables only");
  }
  for (const auto& [mono, c] : f.terms()) {
    if (static_cast<int>(mono.y.size()) != m) throw Error(ErrorKind::SignatureMismatch, "f has the wrong number of variables");
  }
  CritLocus x;
  x.signature = signature;
  x.f = f;
  for (int i = 0; i < m; ++i) x.partials.push_back(diff_y(f, i));
  x.signature.weights = detect_weights(f, m);
  return x;
}

CritLocus make_crit_locus(const Element& f, int m) { return make_crit_locus(f, AlgebraSignature::standard(m)); }

Element apply_koszul_delta(const CritLocus& x, const Element& a) {
  Element out(x.m());
  for (int i = 0; i < x.m(); ++i) {
    Element c = diff_eta(a, i);
    if (!c.is_zero()) out += gmul(x.partials[i], c);
  }
  return out;
}

}  // namespace qshift
