#include "qshift/diffops.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "qshift/error.hpp"

namespace qshift {

int OpKey::order() const {
  int k = odd_count(deta);
  for (int e : dy) k += e;
  return k;
}

bool operator<(const OpKey& a, const OpKey& b) {
  if (!(a.left == b.left)) return a.left < b.left;
  if (a.dy != b.dy) return a.dy < b.dy;
  return compare_subsets(a.deta, b.deta) < 0;
}

OpKey multiplication_key(const Monomial& mono) {
  return OpKey{mono, std::vector<int>(mono.y.size(), 0), 0};
}

void KeyedSum::add_term(const OpKey& key, const HSeries& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

std::optional<int> KeyedSum::degree() const {
  std::optional<int> d;
  for (const auto& [key, c] : terms_) {
    if (d && *d != key.degree()) return std::nullopt;
    d = key.degree();
  }
  return d;
}

std::optional<int> KeyedSum::max_order() const {
  std::optional<int> k;
  for (const auto& [key, c] : terms_) k = std::max(k.value_or(0), key.order());
  return k;
}

std::set<int> KeyedSum::hbar_exponents() const {
  std::set<int> out;
  for (const auto& [key, c] : terms_) {
    for (const auto& [e, x] : c.coefficients()) out.insert(e);
  }
  return out;
}

bool KeyedSum::truncated() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.truncated(); });
}

namespace {

Rational falling(int n, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Rational r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

using TermMap = std::map<OpKey, HSeries>;

void accumulate(TermMap& out, const OpKey& key, const HSeries& c) {
  if (c.is_zero()) return;
  auto it = out.find(key);
  if (it == out.end()) {
    out.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) out.erase(it);
}

// (d_y^b d_eta_T) o (single normal-ordered term), reduced to normal order.
TermMap push_derivatives(const std::vector<int>& b, OddSet t_set, const OpKey& rhs, const HSeries& coeff) {
  TermMap cur{{rhs, coeff}};
  for (int t = kMaxVars - 1; t >= 0; --t) {
    const OddSet bit = OddSet{1} << t;
    if (!(t_set & bit)) continue;
    TermMap next;
    for (const auto& [k, x] : cur) {
      if (k.left.eta & bit) {
        OpKey k1 = k;
        k1.left.eta &= ~bit;
        accumulate(next, k1, count_below(k.left.eta, t) % 2 ? -x : x);
      }
      if (!(k.deta & bit)) {
        const int flips = odd_count(k.left.eta) + count_below(k.deta, t);
        OpKey k2 = k;
        k2.deta |= bit;
        accumulate(next, k2, flips % 2 ? -x : x);
      }
    }
    cur = std::move(next);
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] == 0) continue;
    TermMap next;
    for (const auto& [k, x] : cur) {
      const int have = k.left.y[i];
      for (int j = 0; j <= std::min(b[i], have); ++j) {
        OpKey k1 = k;
        k1.left.y[i] -= j;
        k1.dy[i] += b[i] - j;
        accumulate(next, k1, x * (binomial(b[i], j) * falling(have, j)));
      }
    }
    cur = std::move(next);
  }
  return cur;
}

void check_same_m(int a, int b) {
  if (a != 0 && b != 0 && a != b) throw Error(ErrorKind::SignatureMismatch, "operands have different numbers of variables");
}

std::string key_parts(const OpKey& key, const AlgebraSignature& sig, bool as_symbol) {
  std::vector<std::string> parts;
  const std::string left = monomial_string(key.left, sig);
  if (left != "1") parts.push_back(left);
  for (std::size_t i = 0; i < key.dy.size(); ++i) {
    if (key.dy[i] == 0) continue;
    std::string p = (as_symbol ? "xi_" : "d_") + sig.y_name(static_cast<int>(i));
    if (key.dy[i] > 1) p += "^" + std::to_string(key.dy[i]);
    parts.push_back(std::move(p));
  }
  for (OddSet rest = key.deta; rest; rest &= rest - 1) {
    parts.push_back((as_symbol ? "theta_" : "d_eta_") + sig.y_name(std::countr_zero(rest)));
  }
  if (parts.empty()) return "1";
  std::string out = parts[0];
  for (std::size_t k = 1; k < parts.size(); ++k) out += "*" + parts[k];
  return out;
}

std::string sum_string(const KeyedSum::Terms& terms, const AlgebraSignature& sig, bool as_symbol) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms) {
    if (!first) os << " + ";
    first = false;
    const std::string ks = key_parts(key, sig, as_symbol);
    const std::string cs = c.to_string();
    if (ks == "1") {
      os << cs;
    } else if (cs == "1") {
      os << ks;
    } else {
      os << "(" << cs << ")*" << ks;
    }
  }
  return os.str();
}

}  // namespace

std::string opkey_string(const OpKey& key, const AlgebraSignature& sig, bool as_symbol) {
  return key_parts(key, sig, as_symbol);
}

Operator Operator::identity(int m) { return from_key(m, multiplication_key(Monomial{std::vector<int>(m, 0), 0})); }

Operator Operator::multiplication(const Element& a) {
  Operator d(a.m());
  for (const auto& [mono, c] : a.terms()) d.add_term(multiplication_key(mono), c);
  return d;
}

Operator Operator::d_y(int m, int i) {
  OpKey key = multiplication_key(Monomial{std::vector<int>(m, 0), 0});
  key.dy[i] = 1;
  return from_key(m, key);
}

Operator Operator::d_eta(int m, int i) {
  OpKey key = multiplication_key(Monomial{std::vector<int>(m, 0), 0});
  key.deta = OddSet{1} << i;
  return from_key(m, key);
}

Operator Operator::from_key(int m, const OpKey& key, const HSeries& c) {
  Operator d(m);
  d.add_term(key, c);
  return d;
}

Operator& Operator::operator+=(const Operator& other) {
  check_same_m(m_, other.m_);
  if (m_ == 0) m_ = other.m_;
  for (const auto& [key, c] : other.terms_) add_term(key, c);
  return *this;
}

Operator& Operator::operator-=(const Operator& other) { return *this += -other; }

Operator Operator::operator-() const {
  Operator d = *this;
  for (auto& [key, c] : d.terms_) c = -c;
  return d;
}

Operator Operator::scaled(const HSeries& c) const {
  Operator d(m_);
  for (const auto& [key, x] : terms_) d.add_term(key, x * c);
  return d;
}

Operator Operator::parity_part(bool odd) const {
  Operator d(m_);
  for (const auto& [key, c] : terms_) {
    if (key.odd() == odd) d.terms_.emplace(key, c);
  }
  return d;
}

Operator Operator::degree_part(int degree) const {
  Operator d(m_);
  for (const auto& [key, c] : terms_) {
    if (key.degree() == degree) d.terms_.emplace(key, c);
  }
  return d;
}

Operator Operator::order_part(int order) const {
  Operator d(m_);
  for (const auto& [key, c] : terms_) {
    if (key.order() == order) d.terms_.emplace(key, c);
  }
  return d;
}

Operator Operator::hbar_coefficient(int exponent) const {
  Operator d(m_);
  for (const auto& [key, c] : terms_) d.add_term(key, HSeries(c.coeff(exponent)));
  return d;
}

Operator Operator::times_hbar(int exponent) const { return scaled(HSeries::hbar(exponent)); }

Operator Operator::with_trunc(int trunc_order) const {
  Operator d(m_);
  for (const auto& [key, c] : terms_) d.add_term(key, c.with_trunc(trunc_order));
  return d;
}

std::string Operator::to_string(const AlgebraSignature& sig) const { return sum_string(terms_, sig, false); }

int op_order(const Operator& d) {
  auto k = d.max_order();
  if (!k) throw Error(ErrorKind::ZeroOperator, "order of the zero operator is undefined");
  return *k;
}

Element op_apply(const Operator& d, const Element& a) {
  check_same_m(d.m(), a.m());
  Element out(a.m() ? a.m() : d.m());
  for (const auto& [key, c] : d.terms()) {
    Element e = a;
    for (int t = kMaxVars - 1; t >= 0 && !e.is_zero(); --t) {
      if (key.deta & (OddSet{1} << t)) e = diff_eta(e, t);
    }
    for (std::size_t i = 0; i < key.dy.size(); ++i) {
      for (int r = 0; r < key.dy[i] && !e.is_zero(); ++r) e = diff_y(e, static_cast<int>(i));
    }
    if (e.is_zero()) continue;
    out += gmul(Element::monomial(out.m(), key.left, c), e);
  }
  return out;
}

Operator op_compose(const Operator& d1, const Operator& d2) {
  check_same_m(d1.m(), d2.m());
  Operator out(d1.m() ? d1.m() : d2.m());
  for (const auto& [ka, ca] : d1.terms()) {
    for (const auto& [kb, cb] : d2.terms()) {
      for (const auto& [k, x] : push_derivatives(ka.dy, ka.deta, kb, ca * cb)) {
        const int sign = wedge_sign(ka.left.eta, k.left.eta);
        if (sign == 0) continue;
        OpKey prod = k;
        prod.left.eta |= ka.left.eta;
        for (std::size_t i = 0; i < prod.left.y.size(); ++i) prod.left.y[i] += ka.left.y[i];
        out.add_term(prod, sign < 0 ? -x : x);
      }
    }
  }
  return out;
}

Operator operator*(const Operator& d1, const Operator& d2) { return op_compose(d1, d2); }

Operator op_commutator(const Operator& d1, const Operator& d2) {
  Operator out(d1.m() ? d1.m() : d2.m());
  for (bool p : {false, true}) {
    const Operator a = d1.parity_part(p);
    if (a.is_zero()) continue;
    for (bool q : {false, true}) {
      const Operator b = d2.parity_part(q);
      if (b.is_zero()) continue;
      out += op_compose(a, b);
      if (p && q) {
        out += op_compose(b, a);
      } else {
        out -= op_compose(b, a);
      }
    }
  }
  return out;
}

std::vector<std::vector<int>> exponent_vectors(int m, int max_total) {
  std::vector<std::vector<int>> out;
  if (max_total < 0) return out;
  std::vector<int> cur(m, 0);
  // Odometer over vectors with bounded total degree.
  for (;;) {
    out.push_back(cur);
    int total = 0;
    for (int e : cur) total += e;
    int i = m - 1;
    for (; i >= 0; --i) {
      if (total < max_total) {
        cur[i] += 1;
        break;
      }
      total -= cur[i];
      cur[i] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

std::vector<OpKey> enumerate_opkeys(int m, std::optional<int> degree, int max_order, int max_ydeg) {
  std::vector<OpKey> out;
  if (max_order < 0 || max_ydeg < 0) return out;
  const auto ys = exponent_vectors(m, max_ydeg);
  for (OddSet s = 0; s < (OddSet{1} << m); ++s) {
    for (OddSet t = 0; t < (OddSet{1} << m); ++t) {
      const int order_t = odd_count(t);
      if (order_t > max_order) continue;
      if (degree && order_t - odd_count(s) != *degree) continue;
      for (const auto& b : exponent_vectors(m, max_order - order_t)) {
        for (const auto& y : ys) out.push_back(OpKey{Monomial{y, s}, b, t});
      }
    }
  }
  return out;
}

Operator koszul_operator(const CritLocus& x) {
  Operator d(x.m());
  for (int i = 0; i < x.m(); ++i) d += op_compose(Operator::multiplication(x.partials[i]), Operator::d_eta(x.m(), i));
  return d;
}

Polyvector Polyvector::from_key(int m, const OpKey& key, const HSeries& c) {
  Polyvector p(m);
  p.add_term(key, c);
  return p;
}

Polyvector Polyvector::generator(int m, GenKind kind, int i) {
  OpKey key = multiplication_key(Monomial{std::vector<int>(m, 0), 0});
  switch (kind) {
    case GenKind::Y: key.left.y[i] = 1; break;
    case GenKind::Eta: key.left.eta = OddSet{1} << i; break;
    case GenKind::Xi: key.dy[i] = 1; break;
    case GenKind::Theta: key.deta = OddSet{1} << i; break;
  }
  return from_key(m, key);
}

Polyvector Polyvector::function(const Element& a) {
  Polyvector p(a.m());
  for (const auto& [mono, c] : a.terms()) p.add_term(multiplication_key(mono), c);
  return p;
}

Polyvector& Polyvector::operator+=(const Polyvector& other) {
  check_same_m(m_, other.m_);
  if (m_ == 0) m_ = other.m_;
  for (const auto& [key, c] : other.terms_) add_term(key, c);
  return *this;
}

Polyvector& Polyvector::operator-=(const Polyvector& other) { return *this += -other; }

Polyvector Polyvector::operator-() const {
  Polyvector p = *this;
  for (auto& [key, c] : p.terms_) c = -c;
  return p;
}

Polyvector Polyvector::scaled(const HSeries& c) const {
  Polyvector p(m_);
  for (const auto& [key, x] : terms_) p.add_term(key, x * c);
  return p;
}

std::optional<int> Polyvector::arity() const {
  std::optional<int> a;
  for (const auto& [key, c] : terms_) {
    if (a && *a != key.order()) throw Error(ErrorKind::ArityMismatch, "polyvector is not homogeneous in arity");
    a = key.order();
  }
  return a;
}

Polyvector Polyvector::parity_part(bool odd) const {
  Polyvector p(m_);
  for (const auto& [key, c] : terms_) {
    if (key.odd() == odd) p.terms_.emplace(key, c);
  }
  return p;
}

Polyvector Polyvector::left_derivative(GenKind kind, int i) const {
  Polyvector out(m_);
  const OddSet bit = OddSet{1} << i;
  for (const auto& [key, c] : terms_) {
    OpKey k = key;
    switch (kind) {
      case GenKind::Y:
        if (key.left.y[i] == 0) continue;
        k.left.y[i] -= 1;
        out.add_term(k, c * Rational(key.left.y[i]));
        break;
      case GenKind::Xi:
        if (key.dy[i] == 0) continue;
        k.dy[i] -= 1;
        out.add_term(k, c * Rational(key.dy[i]));
        break;
      case GenKind::Eta:
        if (!(key.left.eta & bit)) continue;
        k.left.eta &= ~bit;
        out.add_term(k, count_below(key.left.eta, i) % 2 ? -c : c);
        break;
      case GenKind::Theta: {
        if (!(key.deta & bit)) continue;
        k.deta &= ~bit;
        const int flips = odd_count(key.left.eta) + count_below(key.deta, i);
        out.add_term(k, flips % 2 ? -c : c);
        break;
      }
    }
  }
  return out;
}

Polyvector Polyvector::right_derivative(GenKind kind, int i) const {
  if (kind == GenKind::Y || kind == GenKind::Xi) return left_derivative(kind, i);
  Polyvector out(m_);
  const OddSet bit = OddSet{1} << i;
  for (const auto& [key, c] : terms_) {
    OpKey k = key;
    if (kind == GenKind::Eta) {
      if (!(key.left.eta & bit)) continue;
      k.left.eta &= ~bit;
      const int flips = count_above(key.left.eta, i) + odd_count(key.deta);
      out.add_term(k, flips % 2 ? -c : c);
    } else {
      if (!(key.deta & bit)) continue;
      k.deta &= ~bit;
      out.add_term(k, count_above(key.deta, i) % 2 ? -c : c);
    }
  }
  return out;
}

std::string Polyvector::to_string(const AlgebraSignature& sig) const { return sum_string(terms_, sig, true); }

Polyvector pv_mul(const Polyvector& a, const Polyvector& b) {
  check_same_m(a.m(), b.m());
  Polyvector out(a.m() ? a.m() : b.m());
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      const int s1 = wedge_sign(ka.left.eta, kb.left.eta);
      const int s2 = wedge_sign(ka.deta, kb.deta);
      if (s1 == 0 || s2 == 0) continue;
      int sign = s1 * s2;
      if ((odd_count(ka.deta) * odd_count(kb.left.eta)) % 2) sign = -sign;
      OpKey k = ka;
      k.left.eta |= kb.left.eta;
      k.deta |= kb.deta;
      for (std::size_t i = 0; i < k.dy.size(); ++i) {
        k.left.y[i] += kb.left.y[i];
        k.dy[i] += kb.dy[i];
      }
      const HSeries c = ca * cb;
      out.add_term(k, sign < 0 ? -c : c);
    }
  }
  return out;
}

Polyvector operator*(const Polyvector& a, const Polyvector& b) { return pv_mul(a, b); }

Polyvector symbol(const Operator& d, int k) {
  Polyvector p(d.m());
  for (const auto& [key, c] : d.terms()) {
    if (key.order() > k) {
      throw Error(ErrorKind::OrderTooLow, "operator has order " + std::to_string(key.order()) +
                                              ", above the requested symbol degree " + std::to_string(k));
    }
    if (key.order() == k) p.add_term(key, c);
  }
  return p;
}

Operator lift(const Polyvector& p) {
  Operator d(p.m());
  for (const auto& [key, c] : p.terms()) d.add_term(key, c);
  return d;
}

Polyvector schouten(const Polyvector& p, const Polyvector& q) {
  p.arity();
  q.arity();
  const int m = p.m() ? p.m() : q.m();
  Polyvector out(m);
  if (p.is_zero() || q.is_zero()) return out;
  for (int i = 0; i < m; ++i) {
    out += pv_mul(p.right_derivative(GenKind::Xi, i), q.left_derivative(GenKind::Y, i));
    out -= pv_mul(p.right_derivative(GenKind::Y, i), q.left_derivative(GenKind::Xi, i));
    out += pv_mul(p.right_derivative(GenKind::Theta, i), q.left_derivative(GenKind::Eta, i));
    out += pv_mul(p.right_derivative(GenKind::Eta, i), q.left_derivative(GenKind::Theta, i));
  }
  return out;
}

Polyvector schouten_via_commutator(const Polyvector& p, const Polyvector& q) {
  const auto a = p.arity();
  const auto b = q.arity();
  if (!a || !b) return Polyvector(p.m() ? p.m() : q.m());
  const int k = *a + *b - 1;
  const Operator c = op_commutator(lift(p), lift(q));
  if (k < 0) return Polyvector(c.m());
  return symbol(c, k);
}

}  // namespace qshift
