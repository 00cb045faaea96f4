#include "qshift/cohomology.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <vector>

#include "qshift/diffops.hpp"
#include "qshift/error.hpp"
#include "qshift/linalg.hpp"
#include "qshift/quantise.hpp"

namespace qshift {

std::string field_name(CohomologyField field) {
  switch (field) {
    case CohomologyField::QAtHbarOne: return "Q";
    case CohomologyField::QOfHbar: return "Q(hbar)";
    case CohomologyField::QAtHbarZero: return "Q[hbar=0]";
  }
  return "?";
}

std::string mode_name(TruncationMode mode) {
  return mode == TruncationMode::WeightGraded ? "weight" : "truncate";
}

long long CohomologyReport::total() const {
  long long t = 0;
  for (const auto& [d, n] : dims_by_degree) t += n;
  return t;
}

namespace {

int total_degree(const Element& f) {
  int d = 0;
  for (const auto& [mono, c] : f.terms()) d = std::max(d, mono.y_degree());
  return d;
}

void check_polynomial(const Element& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "f is the zero polynomial");
  if (!f.is_eta_free() || !f.is_hbar_free()) throw Error(ErrorKind::NotPolynomial, "f must be a polynomial in y");
}

// Integer-valued filtration on monomials y^a eta_S of O_X.
struct Grading {
  std::vector<long long> y;
  std::vector<long long> eta;
  long long step = 1;  // increment between consecutive truncation levels

  long long value(const Monomial& mono) const {
    long long v = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      v += y[i] * mono.y[i];
      if (mono.eta & (OddSet{1} << i)) v += eta[i];
    }
    return v;
  }
};

Grading make_grading(const CritLocus& x, const TruncationSpec& trunc) {
  const int m = x.m();
  Grading g;
  if (trunc.mode == TruncationMode::WeightGraded) {
    if (!x.signature.weights) {
      throw Error(ErrorKind::TruncationRequired, "weight-graded truncation needs a quasi-homogeneous f");
    }
    Integer denom = 1;
    for (const Rational& w : *x.signature.weights) denom = lcm(denom, Integer(w.get_den()));
    for (const Rational& w : *x.signature.weights) {
      const Rational wy = w * denom;
      const Rational we = (1 - w) * denom;
      g.y.push_back(Integer(wy.get_num()).get_si());
      g.eta.push_back(Integer(we.get_num()).get_si());
    }
    g.step = denom.get_si();
  } else {
    const int e = std::max(total_degree(x.f) - 1, 0);
    g.y.assign(m, 1);
    g.eta.assign(m, e);
    g.step = 1;
  }
  return g;
}

// Monomials of cohomological degree `degree` with filtration value <= level.
std::vector<Monomial> graded_basis(int m, const Grading& g, int degree, long long level) {
  std::vector<Monomial> out;
  long long min_y = *std::min_element(g.y.begin(), g.y.end());
  if (min_y <= 0) min_y = 1;
  const int max_total = static_cast<int>(std::max<long long>(level, 0) / min_y);
  for (OddSet s = 0; s < (OddSet{1} << m); ++s) {
    if (-std::popcount(s) != degree) continue;
    for (const auto& a : exponent_vectors(m, max_total)) {
      Monomial mono{a, s};
      if (g.value(mono) <= level) out.push_back(mono);
    }
  }
  return out;
}

class ComplexSlicer {
 public:
  ComplexSlicer(const CritLocus& x, const Operator& d, bool over_hbar, std::uint64_t seed)
      : x_(x), d_(d), over_hbar_(over_hbar), seed_(seed) {}

  // Persistent dimension of H^k: cycles of F_level modulo boundaries coming from F_outer.
  long long persistent_dim(const Grading& g, int k, long long level, long long outer) {
    const int m = x_.m();
    const std::vector<Monomial> inner = graded_basis(m, g, k, level);
    const long long cycles = static_cast<long long>(inner.size()) - static_cast<long long>(image_rank(inner, nullptr));
    if (k - 1 < -m) return cycles;
    const std::vector<Monomial> sources = graded_basis(m, g, k - 1, outer);
    std::map<Monomial, std::size_t> row_of;
    const std::size_t full = image_rank(sources, &row_of);
    // Rank of the rows outside F_level.
    std::vector<std::size_t> outside_rows;
    for (const auto& [mono, r] : row_of) {
      if (g.value(mono) > level) outside_rows.push_back(r);
    }
    const std::size_t outside = outside_rows.empty() ? 0 : restricted_rank(outside_rows);
    return cycles - static_cast<long long>(full - outside);
  }

  std::size_t rank_computations() const { return calls_; }
  std::size_t fallback_ranks() const { return fallbacks_; }

 private:
  // Rank of d on span(sources); rows of the last matrix are kept for restricted_rank.
  std::size_t image_rank(const std::vector<Monomial>& sources, std::map<Monomial, std::size_t>* row_of) {
    std::map<Monomial, std::size_t> rows;
    std::vector<SparseHRow> transposed;  // one row per source, i.e. the transpose matrix
    for (std::size_t c = 0; c < sources.size(); ++c) {
      const Element image = op_apply(d_, Element::monomial(x_.m(), sources[c]));
      SparseHRow row;
      for (const auto& [mono, coeff] : image.terms()) {
        auto [it, inserted] = rows.emplace(mono, rows.size());
        row[it->second] = coeff;
      }
      transposed.push_back(std::move(row));
    }
    last_ = transposed;
    last_cols_ = rows.size();
    if (row_of) *row_of = rows;
    return rank_of(transposed, rows.size());
  }

  std::size_t restricted_rank(const std::vector<std::size_t>& keep) {
    std::map<std::size_t, std::size_t> renumber;
    for (std::size_t i = 0; i < keep.size(); ++i) renumber[keep[i]] = i;
    std::vector<SparseHRow> rows;
    for (const auto& r : last_) {
      SparseHRow v;
      for (const auto& [j, c] : r) {
        auto it = renumber.find(j);
        if (it != renumber.end()) v[it->second] = c;
      }
      rows.push_back(std::move(v));
    }
    return rank_of(rows, keep.size());
  }

  std::size_t rank_of(const std::vector<SparseHRow>& rows, std::size_t ncols) {
    ++calls_;
    if (!over_hbar_) {
      std::vector<SparseVec> q;
      for (const auto& r : rows) {
        SparseVec v;
        for (const auto& [j, c] : r) {
          Rational val = c.coeff(0);
          if (val != 0) v.emplace(j, std::move(val));
        }
        q.push_back(std::move(v));
      }
      return rank(q);
    }
    const RankCertificate cert = rank_over_hbar_field_sparse(rows, ncols, seed_ + calls_);
    if (cert.used_fallback) ++fallbacks_;
    return cert.rank;
  }

  const CritLocus& x_;
  Operator d_;
  bool over_hbar_;
  std::uint64_t seed_;
  std::vector<SparseHRow> last_;
  std::size_t last_cols_ = 0;
  std::size_t calls_ = 0;
  std::size_t fallbacks_ = 0;
};

CohomologyReport run_truncated(const CritLocus& x, const TruncationSpec& trunc, const Operator& d, bool over_hbar,
                               CohomologyField field, std::uint64_t seed) {
  if (trunc.bound < 0) throw Error(ErrorKind::TruncationRequired, "truncation bound must be non-negative");
  if (trunc.stabilisation_window < 1) throw Error(ErrorKind::InvalidArgument, "stabilisation window must be positive");
  const int m = x.m();
  const Grading g = make_grading(x, trunc);
  // Boundaries are drawn from a wider window so that truncation artefacts die.
  const long long slack = trunc.mode == TruncationMode::WeightGraded ? 0 : 2LL * (total_degree(x.f) + 1);
  ComplexSlicer slicer(x, d, over_hbar, seed);

  CohomologyReport rep;
  rep.field = field;
  rep.truncation = trunc;
  std::map<int, long long> previous;
  int same = 0;
  for (int level = 0; level <= trunc.bound; ++level) {
    const long long inner = static_cast<long long>(level) * g.step;
    std::map<int, long long> dims;
    for (int k = -m; k <= 0; ++k) dims[k] = slicer.persistent_dim(g, k, inner, inner + slack * g.step);
    same = level > 0 && dims == previous ? same + 1 : 0;
    previous = dims;
    if (same >= trunc.stabilisation_window) {
      rep.dims_by_degree = dims;
      rep.stabilised = true;
      rep.level = level;
      break;
    }
  }
  if (!rep.stabilised) {
    throw Error(ErrorKind::NotStabilised, "cohomology did not stabilise up to truncation bound " + std::to_string(trunc.bound));
  }
  for (const auto& [k, n] : rep.dims_by_degree) rep.euler_characteristic += (k % 2 ? -n : n);
  rep.rank_computations = slicer.rank_computations();
  rep.fallback_ranks = slicer.fallback_ranks();
  return rep;
}

}  // namespace

long long milnor_number(const Element& f, int m, int cap, int window) {
  check_polynomial(f);
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "need at least one variable");
  std::vector<Element> partials;
  std::vector<int> partial_degree;
  for (int i = 0; i < m; ++i) {
    Element p = diff_y(f, i);
    partial_degree.push_back(p.is_zero() ? -1 : total_degree(p));
    partials.push_back(std::move(p));
  }

  // Rows up to degree e + lag are used to judge the quotient in degree <= e,
  // since cancellation of leading terms can need products of higher degree.
  const int lag = 2 * std::max(0, *std::max_element(partial_degree.begin(), partial_degree.end()));
  const int top_degree = cap + lag;

  // Higher degrees get smaller column indices so that echelon pivots are
  // leading monomials and reduction pushes towards lower degree.
  std::vector<std::size_t> per_degree(top_degree + 1, 0);
  std::map<std::vector<int>, std::size_t> column;
  const std::size_t stride = std::size_t{1} << 40;
  auto band = [&](int deg) { return static_cast<std::size_t>(top_degree + 1 - deg) * stride; };
  auto index = [&](const std::vector<int>& a) {
    auto it = column.find(a);
    if (it != column.end()) return it->second;
    const int deg = std::accumulate(a.begin(), a.end(), 0);
    const std::size_t id = band(deg) + per_degree[deg]++;
    column.emplace(a, id);
    return id;
  };
  auto monomials_of_degree = [&](int d) {
    std::vector<std::vector<int>> out;
    for (const auto& a : exponent_vectors(m, d)) {
      if (std::accumulate(a.begin(), a.end(), 0) == d) out.push_back(a);
    }
    return out;
  };

  EchelonBasis ideal;
  long long monomials = 0;  // number of monomials of degree <= e
  std::optional<long long> last;
  int same = 0;
  for (int d = 0; d <= top_degree; ++d) {
    for (const auto& a : monomials_of_degree(d)) index(a);
    for (int i = 0; i < m; ++i) {
      if (partial_degree[i] < 0 || partial_degree[i] > d) continue;
      for (const auto& b : monomials_of_degree(d - partial_degree[i])) {
        SparseVec v;
        for (const auto& [mono, c] : partials[i].terms()) {
          std::vector<int> e = mono.y;
          for (int t = 0; t < m; ++t) e[t] += b[t];
          v[index(e)] += c.coeff(0);
        }
        std::erase_if(v, [](const auto& t) { return t.second == 0; });
        if (!v.empty()) ideal.insert(std::move(v));
      }
    }
    const int e = d - lag;
    if (e < 0) continue;
    const std::vector<std::vector<int>> top = monomials_of_degree(e);
    monomials += static_cast<long long>(top.size());
    // Every degree-e monomial must be congruent to lower-degree ones.
    bool top_reduces = true;
    for (const auto& a : top) {
      const SparseVec rem = ideal.reduce(SparseVec{{index(a), Rational(1)}}).remainder;
      if (!rem.empty() && rem.begin()->first < band(e - 1)) {
        top_reduces = false;
        break;
      }
    }
    // Rows whose leading monomial has degree <= e span the ideal in that range.
    long long in_range = 0;
    for (const auto& [pivot, row] : ideal.rows()) {
      if (pivot >= band(e)) ++in_range;
    }
    const long long quotient = monomials - in_range;
    if (top_reduces && last && *last == quotient) {
      ++same;
    } else {
      same = 0;
    }
    last = top_reduces ? std::optional<long long>(quotient) : std::nullopt;
    if (same >= window) return quotient;
  }
  throw Error(ErrorKind::NonIsolated, "Jacobian quotient did not stabilise below degree " + std::to_string(cap));
}

CohomologyReport twisted_derham_dims(const CritLocus& x, const TruncationSpec& trunc, std::uint64_t seed) {
  const Operator d = koszul_operator(x) + bv_operator(x.m()).scaled(HSeries::hbar(1));
  return run_truncated(x, trunc, d, true, CohomologyField::QOfHbar, seed);
}

CohomologyReport koszul_dims_at_hbar_zero(const CritLocus& x, const TruncationSpec& trunc, std::uint64_t seed) {
  return run_truncated(x, trunc, koszul_operator(x), false, CohomologyField::QAtHbarZero, seed);
}

}  // namespace qshift
