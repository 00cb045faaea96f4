#include "qshift/duality.hpp"

#include <array>
#include <vector>

#include "qshift/error.hpp"
#include "qshift/linalg.hpp"

namespace qshift {

namespace {

constexpr std::array<GenKind, 4> kKinds{GenKind::Y, GenKind::Eta, GenKind::Xi, GenKind::Theta};

Operator generator(int m, GenKind kind, int i) {
  switch (kind) {
    case GenKind::Y: return Operator::multiplication(Element::y(m, i));
    case GenKind::Eta: return Operator::multiplication(Element::eta(m, i));
    case GenKind::Xi: return Operator::d_y(m, i);
    case GenKind::Theta: return Operator::d_eta(m, i);
  }
  return Operator(m);
}

bool odd_kind(GenKind kind) { return kind == GenKind::Eta || kind == GenKind::Theta; }

// The key as an ordered word of generators y^a eta_S d_y^b d_eta_T.
std::vector<std::pair<GenKind, int>> key_word(int m, const OpKey& key) {
  std::vector<std::pair<GenKind, int>> word;
  for (int i = 0; i < m; ++i) {
    for (int e = 0; e < key.left.y[i]; ++e) word.emplace_back(GenKind::Y, i);
  }
  for (int i = 0; i < m; ++i) {
    if (key.left.eta & (OddSet{1} << i)) word.emplace_back(GenKind::Eta, i);
  }
  for (int i = 0; i < m; ++i) {
    for (int e = 0; e < key.dy[i]; ++e) word.emplace_back(GenKind::Xi, i);
  }
  for (int i = 0; i < m; ++i) {
    if (key.deta & (OddSet{1} << i)) word.emplace_back(GenKind::Theta, i);
  }
  return word;
}

Operator transpose_key(int m, const OpKey& key, const SignProfile& profile) {
  const auto word = key_word(m, key);
  int odd = 0;
  int sign = 1;
  for (const auto& [kind, i] : word) {
    if (odd_kind(kind)) ++odd;
    sign *= profile.sign(kind);
  }
  // Reversing k odd letters costs (-1)^{k(k-1)/2}.
  if ((odd * (odd - 1) / 2) % 2) sign = -sign;
  Operator out = Operator::identity(m);
  for (auto it = word.rbegin(); it != word.rend(); ++it) out = out * generator(m, it->first, it->second);
  return sign < 0 ? -out : out;
}

Operator symbol_as_operator(const Operator& d, int p) {
  Operator out(d.m());
  for (const auto& [key, c] : d.terms()) {
    if (key.order() == p) out.add_term(key, c);
  }
  return out;
}

std::vector<Operator> generators(int m) {
  std::vector<Operator> gens;
  for (GenKind kind : kKinds) {
    for (int i = 0; i < m; ++i) gens.push_back(generator(m, kind, i));
  }
  return gens;
}

// Generators and their pairwise products.
std::vector<Operator> test_basis(int m) {
  const std::vector<Operator> gens = generators(m);
  std::vector<Operator> basis = gens;
  for (const Operator& a : gens) {
    for (const Operator& b : gens) {
      Operator ab = a * b;
      if (!ab.is_zero()) basis.push_back(std::move(ab));
    }
  }
  return basis;
}

bool is_odd(const Operator& d) { return d.terms().begin()->first.odd(); }

}  // namespace

Operator transpose(const Operator& d, const SignProfile& profile) {
  Operator out(d.m());
  for (const auto& [key, c] : d.terms()) out += transpose_key(d.m(), key, profile).scaled(c);
  return out;
}

bool profile_is_valid(int m, const SignProfile& profile) {
  for (int i = 0; i < m; ++i) {
    for (GenKind kind : {GenKind::Y, GenKind::Eta}) {
      const Operator g = generator(m, kind, i);
      if (!(transpose(g, profile) == g)) return false;
    }
  }
  const std::vector<Operator> basis = test_basis(m);
  for (const Operator& a : basis) {
    const Operator ta = transpose(a, profile);
    if (!(transpose(ta, profile) == a)) return false;
    const int p = op_order(a);
    const Operator lead = symbol_as_operator(ta, p);
    const Operator expected = symbol_as_operator(a, p);
    if (!(lead == (p % 2 ? -expected : expected))) return false;
  }
  for (const Operator& a : generators(m)) {
    const Operator ta = transpose(a, profile);
    for (const Operator& b : basis) {
      Operator rhs = transpose(b, profile) * ta;
      if (is_odd(a) && is_odd(b)) rhs = -rhs;
      if (!(transpose(a * b, profile) == rhs)) return false;
    }
  }
  return true;
}

SignProfile solve_sign_profile(const CritLocus& x) {
  const int m = x.m();
  std::vector<SignProfile> found;
  for (unsigned mask = 0; mask < 16; ++mask) {
    SignProfile profile;
    profile.divergence_term = Element(m);
    for (std::size_t k = 0; k < kKinds.size(); ++k) profile.gen_signs[kKinds[k]] = (mask >> k) & 1u ? -1 : 1;
    if (profile_is_valid(m, profile)) found.push_back(std::move(profile));
  }
  if (found.size() != 1) {
    throw Error(ErrorKind::NoConsistentProfile,
                "expected a unique transpose sign profile, found " + std::to_string(found.size()));
  }
  return found.front();
}

Quantisation star(const Quantisation& delta, const SignProfile& profile) {
  std::map<int, Operator> coeffs;
  for (const auto& [j, d] : delta.coeffs()) {
    const Operator t = transpose(d, profile);
    // -(-1)^{j-1} = (-1)^j
    coeffs.emplace(j, j % 2 ? -t : t);
  }
  return Quantisation::make(delta.m(), coeffs, delta.g_trunc());
}

SelfDualVerdict is_self_dual(const Quantisation& delta, const SignProfile& profile) {
  SelfDualVerdict v;
  const Quantisation s = star(delta, profile);
  const int m = delta.m();
  const Operator lhs = s.is_zero() ? Operator(m) : s.series();
  const Operator rhs = delta.is_zero() ? Operator(m) : delta.series();
  v.residual = lhs - rhs;
  v.strict = v.residual.is_zero();
  return v;
}

FixedSlot gr_g_fixed_slot(int m, int k, int j, int weight_bound, const SignProfile& profile) {
  FixedSlot out;
  const int p = j - k;
  if (p < 0 || j < 2) return out;
  std::vector<OpKey> basis;
  for (const OpKey& key : enumerate_opkeys(m, 1, p, weight_bound)) {
    if (key.order() == p) basis.push_back(key);
  }
  std::map<OpKey, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
  const std::size_t n = basis.size();
  DenseMatrix a(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t col = 0; col < n; ++col) {
    const Quantisation q = Quantisation::make(m, {{j, Operator::from_key(m, basis[col])}});
    const Operator image = star(q, profile).coefficient(j);
    for (const auto& [key, c] : image.terms()) {
      if (key.order() != p) continue;
      a[index.at(key)][col] += c.coeff(0);
    }
    a[col][col] -= 1;
  }
  out.slot_dimension = n;
  out.fixed_dimension = n - rank(a);
  return out;
}

}  // namespace qshift
