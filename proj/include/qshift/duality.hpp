#pragma once

#include <map>

#include "qshift/diffops.hpp"
#include "qshift/gca.hpp"
#include "qshift/quantise.hpp"

namespace qshift {

// Signs applied to the generators y, eta, d_y, d_eta by the transpose, in the
// chart trivialised by the constant volume form dy_1 ... dy_m.
struct SignProfile {
  std::map<GenKind, int> gen_signs;
  Element divergence_term;  // zero in this chart

  int sign(GenKind kind) const { return gen_signs.at(kind); }
};

// Searches all 16 sign assignments and returns the one that gives an
// involutive anti-automorphism fixing multiplications with the (-1)^p symbol
// rule. Throws NoConsistentProfile when zero or several candidates survive.
SignProfile solve_sign_profile(const CritLocus& x);
// Profile test used by the search, exposed for diagnostics.
bool profile_is_valid(int m, const SignProfile& profile);

Operator transpose(const Operator& d, const SignProfile& profile);

// (Delta*)_j = -(-1)^{j-1} (Delta_j)^t
Quantisation star(const Quantisation& delta, const SignProfile& profile);

struct SelfDualVerdict {
  bool strict = false;
  Operator residual;  // star(Delta) - Delta as an hbar-series
};

SelfDualVerdict is_self_dual(const Quantisation& delta, const SignProfile& profile);

struct FixedSlot {
  std::size_t slot_dimension = 0;
  std::size_t fixed_dimension = 0;
};

// Action of star on gr_G^k of the degree-1 coefficient slot at hbar^{j-1},
// i.e. on operators of order exactly j - k modulo lower order, restricted to
// multiplication factors of y-degree <= weight_bound.
FixedSlot gr_g_fixed_slot(int m, int k, int j, int weight_bound, const SignProfile& profile);

}  // namespace qshift
