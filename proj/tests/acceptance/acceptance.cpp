// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// All comparisons are exact over Q; runtime budgets are wall-clock per instance.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qshift/cohomology.hpp"
#include "qshift/derham.hpp"
#include "qshift/duality.hpp"
#include "qshift/error.hpp"
#include "qshift/json_schema.hpp"
#include "qshift/problem.hpp"
#include "qshift/quantise.hpp"
#include "qshift/report.hpp"
#include "unit/corpus.hpp"
#include "unit/support.hpp"

using namespace qshift;
using testing::ypow;

namespace {

constexpr double kMasterBudgetMs = 1000;
constexpr double kCompatBudgetMs = 5000;
constexpr double kCohomologyBudgetMs = 30000;
constexpr int kRandomInstances = 200;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (failures.size() < 5) failures.push_back(what);
    }
  }
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string corpus_text(const testing::CorpusEntry& e) {
  static const std::vector<std::string> names = {"x", "y", "z"};
  ProblemFile p;
  p.vars.assign(names.begin(), names.begin() + e.m);
  p.f = e.f;
  return print_problem(p);
}

std::string fmt_ms(double ms) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << ms << "ms";
  return os.str();
}

Outcome master_equation() {
  Outcome out;
  double worst = 0;
  for (const auto& e : testing::corpus()) {
    Stopwatch sw;
    const Report r = run_command_text("check-mc", corpus_text(e), {});
    const double ms = sw.ms();
    worst = std::max(worst, ms);
    out.require(r.status == Status::Ok && r.residual_terms.empty(), e.name + ": residual nonzero (" + r.reason + ")");
    out.require(ms < kMasterBudgetMs, e.name + ": " + fmt_ms(ms) + " over budget");
  }
  out.detail = "corpus=" + std::to_string(testing::corpus().size()) + " residual=0 exact, slowest " + fmt_ms(worst);
  return out;
}

Outcome compatibility() {
  Outcome out;
  double worst = 0;
  for (const auto& e : testing::corpus()) {
    Stopwatch sw;
    const CritLocus x = make_crit_locus(e.f, e.m);
    const Quantisation q = bv_quantisation(x);
    const Report r = run_command_text("check-compat", corpus_text(e), {});
    out.require(r.status == Status::Ok && r.payload.value("verdict", "") == "ExactCocycleEquality",
                e.name + ": verdict " + r.payload.value("verdict", r.reason));
    // hbar^2 sum_i d_eta_i d_y_i, composed in that order, and hbar^2 dDelta/dhbar.
    Operator expected(e.m);
    for (int i = 0; i < e.m; ++i) expected += Operator::d_eta(e.m, i) * Operator::d_y(e.m, i);
    expected = expected.scaled(HSeries::hbar(2));
    Operator hbar_derivative(e.m);
    const Operator series = q.series();
    for (const auto& [key, c] : series.terms()) hbar_derivative.add_term(key, hbar_derivative_scaled(c));
    const Operator image = mu(canonical_symplectic(x), q);
    out.require(image == expected, e.name + ": mu(omega) differs from hbar^2 sum d_eta d_y");
    out.require(image == hbar_derivative, e.name + ": mu(omega) differs from hbar^2 dDelta/dhbar");
    const double ms = sw.ms();
    worst = std::max(worst, ms);
    out.require(ms < kCompatBudgetMs, e.name + ": " + fmt_ms(ms) + " over budget");
  }
  out.detail = "ExactCocycleEquality on corpus (m<=3), slowest " + fmt_ms(worst);
  return out;
}

Outcome vanishing_cycles() {
  Outcome out;
  struct Case {
    std::string name;
    int m;
    Element f;
    std::optional<long long> pinned;
  };
  std::vector<Case> cases;
  for (const auto& e : testing::corpus()) {
    if (e.name == "x^3+xy") continue;
    std::optional<long long> pinned;
    if (e.name == "x^3+y^3") pinned = 4;
    if (e.name == "x^3+y^5") pinned = 8;
    if (e.name == "x^2+y^2+z^2") pinned = 1;
    cases.push_back({e.name, e.m, e.f, pinned});
  }
  for (int k = 1; k <= 5; ++k) cases.push_back({"x^" + std::to_string(k + 1), 1, ypow(1, 0, k + 1), k});

  double worst = 0;
  for (const auto& c : cases) {
    Stopwatch sw;
    const CritLocus x = make_crit_locus(c.f, c.m);
    const long long mu = milnor_number(c.f, c.m);
    const CohomologyReport rep = twisted_derham_dims(x, {TruncationMode::WeightGraded, 8, 2}, 1);
    const double ms = sw.ms();
    worst = std::max(worst, ms);
    int nonzero = 0;
    for (const auto& [d, n] : rep.dims_by_degree) nonzero += n != 0 ? 1 : 0;
    out.require(rep.total() == mu, c.name + ": total " + std::to_string(rep.total()) + " vs Milnor " + std::to_string(mu));
    if (c.pinned) out.require(rep.total() == *c.pinned, c.name + ": expected " + std::to_string(*c.pinned));
    out.require(nonzero == 1, c.name + ": not concentrated in one degree");
    out.require(ms < kCohomologyBudgetMs, c.name + ": " + fmt_ms(ms) + " over budget");
  }
  out.detail = std::to_string(cases.size()) + " instances, dims == Milnor exactly, slowest " + fmt_ms(worst);
  return out;
}

Outcome key_identity() {
  Outcome out;
  SplitMix64 rng(2024);
  int non_mc = 0;
  for (int trial = 0; trial < kRandomInstances; ++trial) {
    const int m = 1 + static_cast<int>(rng.uniform(2));
    const CritLocus x = make_crit_locus(testing::random_polynomial(rng, m, 3, 3), m);
    Operator delta(m);
    for (int j = 1; j <= 2; ++j) delta += testing::random_operator(rng, m, 3, 2, 4).degree_part(1).scaled(HSeries::hbar(j));
    DRWord w(m);
    for (int t = 0; t < 3; ++t) {
      WordKey key;
      key.hbar_exp = static_cast<int>(rng.uniform(2));
      const int len = static_cast<int>(rng.uniform(3));
      for (int i = 0; i <= len; ++i) key.factors.push_back(testing::random_monomial(rng, m, 2));
      w.add_term(key, testing::nonzero_rational(rng));
    }
    if (!kappa_series(x, delta).is_zero()) ++non_mc;
    out.require(check_keylemma_series(x, w, delta).is_zero(), "instance " + std::to_string(trial) + " has a residual");
  }
  out.require(non_mc > 0, "no non-MC Delta sampled");
  out.detail = std::to_string(kRandomInstances) + " random (word, Delta), " + std::to_string(non_mc) +
               " with kappa != 0, residual exact zero";
  return out;
}

int sgn(bool odd) { return odd ? -1 : 1; }

Outcome schouten_coherence() {
  Outcome out;
  SplitMix64 rng(2025);
  int nonzero = 0;
  for (int trial = 0; trial < kRandomInstances; ++trial) {
    const int m = 1 + static_cast<int>(rng.uniform(3));
    const Polyvector p = testing::random_polyvector(rng, m, 1 + static_cast<int>(rng.uniform(3)), 3, 3);
    const Polyvector q = testing::random_polyvector(rng, m, static_cast<int>(rng.uniform(4)), 3, 3);
    const Polyvector bracket = schouten(p, q);
    if (!bracket.is_zero()) ++nonzero;
    out.require(bracket == schouten_via_commutator(p, q), "pair " + std::to_string(trial) + " differs");
  }
  int jacobi = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(rng.uniform(2));
    const Polyvector p = testing::random_polyvector(rng, m, 1 + static_cast<int>(rng.uniform(2)), 2, 2);
    const Polyvector q = testing::random_polyvector(rng, m, 1 + static_cast<int>(rng.uniform(2)), 2, 2);
    const Polyvector r = testing::random_polyvector(rng, m, static_cast<int>(rng.uniform(3)), 2, 2);
    for (bool a : {false, true}) {
      for (bool b : {false, true}) {
        const Polyvector pa = p.parity_part(a);
        const Polyvector qb = q.parity_part(b);
        const HSeries s(sgn(a && b));
        out.require(schouten(pa, qb * r) == schouten(pa, qb) * r + (qb * schouten(pa, r)).scaled(s), "Leibniz");
        out.require(schouten(pa, schouten(qb, r)) == schouten(schouten(pa, qb), r) + schouten(qb, schouten(pa, r)).scaled(s),
                    "Jacobi");
        ++jacobi;
      }
    }
  }
  out.require(nonzero > kRandomInstances / 2, "too many vanishing brackets");
  out.detail = std::to_string(kRandomInstances) + " pairs (" + std::to_string(nonzero) +
               " nonzero) biderivation == symbol of commutator, " +
               std::to_string(jacobi) + " Jacobi/Leibniz triples, exact";
  return out;
}

Outcome self_duality() {
  Outcome out;
  for (const auto& e : testing::corpus()) {
    const CritLocus x = make_crit_locus(e.f, e.m);
    const SignProfile profile = solve_sign_profile(x);
    out.require(is_self_dual(bv_quantisation(x), profile).strict, e.name + ": BV quantisation not strictly self-dual");
  }
  SplitMix64 rng(2026);
  int checks = 0;
  for (int trial = 0; trial < kRandomInstances; ++trial) {
    const int m = 1 + static_cast<int>(rng.uniform(2));
    const SignProfile profile = solve_sign_profile(make_crit_locus(ypow(m, 0, 2), m));
    const Operator a = testing::random_operator(rng, m, 3, 2, 4);
    const Operator b = testing::random_operator(rng, m, 3, 2, 4);
    out.require(transpose(transpose(a, profile), profile) == a, "transpose is not an involution");
    Operator rhs(m);
    for (bool ao : {false, true}) {
      for (bool bo : {false, true}) {
        const Operator t = transpose(b.parity_part(bo), profile) * transpose(a.parity_part(ao), profile);
        rhs += ao && bo ? -t : t;
      }
    }
    out.require(transpose(a * b, profile) == rhs, "transpose is not anti-multiplicative");
    const int p = static_cast<int>(rng.uniform(5));
    const Operator d = testing::random_operator_of_order(rng, m, p, 2, 4);
    if (p > 0) {
      const Polyvector s = symbol(d, p);
      out.require(symbol(transpose(d, profile), p) == (p % 2 ? -s : s), "(-1)^p symbol rule fails at p=" + std::to_string(p));
    } else {
      out.require(transpose(d, profile) == d, "order-0 operator not fixed");
    }
    ++checks;
  }
  int slots = 0;
  for (int m = 1; m <= 2; ++m) {
    const SignProfile profile = solve_sign_profile(make_crit_locus(ypow(m, 0, 2), m));
    for (int j = 2; j <= 5; ++j) {
      for (int k = 0; k <= j; ++k) {
        const FixedSlot slot = gr_g_fixed_slot(m, k, j, 1, profile);
        out.require(k % 2 == 0 ? slot.fixed_dimension == slot.slot_dimension : slot.fixed_dimension == 0,
                    "gr_G^" + std::to_string(k) + " fixed slot wrong at j=" + std::to_string(j));
        ++slots;
      }
    }
  }
  out.detail = "Strict on corpus, " + std::to_string(checks) + " random transpose checks (p<=4), " +
               std::to_string(slots) + " gr_G slots";
  return out;
}

Outcome obstruction_eigenvalues() {
  Outcome out;
  int cases = 0;
  double worst = 0;
  for (int m = 1; m <= 2; ++m) {
    const CritLocus x = make_crit_locus(m == 1 ? ypow(1, 0, 3) : ypow(2, 0, 3) + ypow(2, 1, 3), m);
    for (int p = 0; p <= 4; ++p) {
      for (int k = 1; k <= 4; ++k) {
        Stopwatch sw;
        const EigenReport rep = nu_eigen_analysis(x, p, k, 1);
        worst = std::max(worst, sw.ms());
        const std::string tag = "m=" + std::to_string(m) + " p=" + std::to_string(p) + " k=" + std::to_string(k);
        out.require(rep.dimension > 0, tag + ": empty window");
        out.require(rep.eigenvalues == std::vector<long long>{p}, tag + ": eigenvalues differ from {p}");
        out.require(rep.diagonalisable, tag + ": not diagonalisable");
        out.require(rep.combined_scalar && *rep.combined_scalar == Rational(1 - k), tag + ": combined scalar differs from 1-k");
        out.require(rep.invertible == (k >= 2), tag + ": invertibility differs from k>=2");
        ++cases;
      }
    }
  }
  out.detail = std::to_string(cases) + " (m,p,k) with p<=4, k<=4: eigenvalue p, scalar 1-k, exact; slowest " + fmt_ms(worst);
  return out;
}

// gr^F_q D: normal-ordered monomials of order exactly q, counted by brute force.
long long graded_piece(int m, int degree, int q, int w) {
  if (q < 0) return 0;
  long long n = 0;
  const int ymax = std::max(q, w);
  std::vector<int> a(m, 0);
  std::vector<int> b(m, 0);
  std::function<void(int, int, std::vector<int>&, const std::function<void()>&)> loop =
      [&](int i, int left, std::vector<int>& v, const std::function<void()>& body) {
        if (i == m) {
          body();
          return;
        }
        for (int e = 0; e <= left; ++e) {
          v[i] = e;
          loop(i + 1, left - e, v, body);
        }
        v[i] = 0;
      };
  loop(0, std::min(w, ymax), a, [&] {
    loop(0, q, b, [&] {
      int bsum = 0;
      for (int e : b) bsum += e;
      for (unsigned s = 0; s < (1u << m); ++s) {
        for (unsigned t = 0; t < (1u << m); ++t) {
          const int tt = __builtin_popcount(t);
          if (bsum + tt == q && tt - __builtin_popcount(s) == degree) ++n;
        }
      }
    });
  });
  return n;
}

long long up_to_order(int m, int degree, int q, int w) {
  long long n = 0;
  for (int r = 0; r <= q; ++r) n += graded_piece(m, degree, r, w);
  return n;
}

Outcome filtration_shapes() {
  Outcome out;
  int entries = 0;
  const IntWindow degrees{-2, 2};
  const IntWindow hbars{-1, 5};
  for (int m = 1; m <= 2; ++m) {
    const CritLocus x = make_crit_locus(ypow(m, 0, 2), m);
    for (int w = 0; w <= 2; ++w) {
      for (int p = 0; p <= 4; ++p) {
        for (int i = 0; i <= p; ++i) {
          // gr_G^i Ftilde^{p-i} = prod_{j >= p-i} gr^F_{j-i} D hbar^{j-1}
          const DimTable gi = filtration_dims({FiltrationKind::G, i}, p - i, degrees, hbars, x, w);
          const DimTable gn = filtration_dims({FiltrationKind::G, i + 1}, p - i, degrees, hbars, x, w);
          for (int d = degrees.lo; d <= degrees.hi; ++d) {
            for (int e = hbars.lo; e <= hbars.hi; ++e) {
              const int j = e + 1;
              const long long expected = j >= p - i ? graded_piece(m, d, j - i, w) : 0;
              out.require(gi.at({d, e}) - gn.at({d, e}) == expected, "gr_G reindexing mismatch");
              ++entries;
            }
          }
        }
      }
      // (G*Ftilde)^2 = A + Ftilde^2
      const DimTable conv = filtration_dims({FiltrationKind::GconvF, 2}, 0, degrees, hbars, x, w);
      for (int d = degrees.lo; d <= degrees.hi; ++d) {
        for (int e = hbars.lo; e <= hbars.hi; ++e) {
          const int j = e + 1;
          const long long a = j == 1 ? up_to_order(m, d, 0, w) : 0;
          const long long f2 = j >= 2 ? up_to_order(m, d, j, w) : 0;
          out.require(conv.at({d, e}) == a + f2, "(G*F~)^2 split mismatch");
          ++entries;
        }
      }
    }
  }
  out.detail = std::to_string(entries) + " table entries (m<=2) equal to enumerated product formulas";
  return out;
}

Outcome parser_and_reports() {
  Outcome out;
  const auto& schema = report_schema();
  int reports = 0;
  for (const auto& e : testing::corpus()) {
    const std::string text = corpus_text(e);
    const ProblemFile p = parse_problem(text);
    out.require(parse_problem(print_problem(p)) == p && print_problem(p) == text, e.name + ": round trip");
    for (const std::string& cmd : command_names()) {
      CommandOptions opts;
      if (cmd == "eigen") {
        opts.p = 2;
        opts.k = 2;
      }
      const Report r = run_command(cmd, p, opts);
      const auto errs = validate_json(r.to_json(), schema);
      out.require(errs.empty(), cmd + " on " + e.name + ": " + (errs.empty() ? "" : errs.front()));
      out.require(r.exit_code() == (r.status == Status::Ok ? 0 : r.status == Status::Fail ? 1 : 2), "exit code mapping");
      ++reports;
    }
  }
  const Report ok = run_command_text("check-mc", "vars x; f = x^2;", {});
  const Report fail = run_command_text("vc-dims", "vars x y; f = x^2*y - x; mode = truncate; max_degree = 20;", {});
  const Report error = run_command_text("milnor", "vars x; f = x + z;", {});
  out.require(ok.exit_code() == 0, "ok report does not exit 0");
  out.require(fail.exit_code() == 1, "fail report does not exit 1");
  out.require(error.exit_code() == 2 && error.error_kind == "UnknownVariable", "error report does not exit 2");
  for (const Report* r : {&ok, &fail, &error}) out.require(validate_json(r->to_json(), schema).empty(), "exit-code report invalid");
  out.detail = std::to_string(reports) + " corpus reports schema-valid, round trips exact, exit codes 0/1/2";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"quantum master equation", master_equation},
      {"compatibility on the nose", compatibility},
      {"vanishing-cycles dimensions", vanishing_cycles},
      {"key identity", key_identity},
      {"Schouten/symbol coherence", schouten_coherence},
      {"self-duality", self_duality},
      {"obstruction eigenvalues", obstruction_eigenvalues},
      {"filtration shapes", filtration_shapes},
      {"parser/report round trips", parser_and_reports},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    Stopwatch sw;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << index << "] " << name << ": " << o.detail << " (" << fmt_ms(sw.ms())
              << ")\n";
    for (const auto& f : o.failures) std::cout << "        " << f << "\n";
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
