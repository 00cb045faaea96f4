#include "qshift/report.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>

#include "qshift/cohomology.hpp"
#include "qshift/derham.hpp"
#include "qshift/duality.hpp"
#include "qshift/error.hpp"
#include "qshift/quantise.hpp"

namespace qshift {

using nlohmann::json;

std::string status_name(Status status) {
  switch (status) {
    case Status::Ok: return "ok";
    case Status::Fail: return "fail";
    case Status::Error: return "error";
  }
  return "error";
}

json Report::to_json() const {
  json j;
  j["schema_version"] = "1.0";
  j["command"] = command;
  j["status"] = status_name(status);
  j["payload"] = payload;
  j["residual_terms"] = residual_terms;
  j["timing_ms"] = timing_ms;
  if (!reason.empty()) j["reason"] = reason;
  if (!error_kind.empty()) j["error_kind"] = error_kind;
  if (!problem.empty()) j["problem"] = problem;
  if (seed) j["seed"] = *seed;
  return j;
}

int Report::exit_code() const {
  switch (status) {
    case Status::Ok: return 0;
    case Status::Fail: return 1;
    case Status::Error: return 2;
  }
  return 2;
}

std::string rational_string(const Rational& q) { return q.get_str(); }

json residual_json(const Operator& residual, const AlgebraSignature& sig) {
  json out = json::array();
  for (const auto& [key, c] : residual.terms()) {
    for (const auto& [e, q] : c.coefficients()) {
      std::string mono = opkey_string(key, sig);
      if (e != 0) mono += e == 1 ? "*hbar" : "*hbar^" + std::to_string(e);
      out.push_back({{"monomial", mono}, {"coefficient", rational_string(q)}});
    }
  }
  return out;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"milnor",         "vc-dims", "check-mc",   "check-compat",
                                                 "check-selfdual", "eigen",   "filtration", "koszul-dims"};
  return names;
}

namespace {

struct Context {
  const ProblemFile& problem;
  const CommandOptions& flags;
  Report& report;

  std::optional<int> int_option(const std::optional<int>& flag, const std::string& key) const {
    if (flag) return flag;
    if (const std::string* v = problem.option(key)) {
      try {
        std::size_t used = 0;
        const int value = std::stoi(*v, &used);
        if (used == v->size()) return value;
      } catch (const std::exception&) {
      }
      throw Error(ErrorKind::InvalidArgument, "option " + key + " must be an integer, got '" + *v + "'");
    }
    return std::nullopt;
  }

  std::optional<std::string> string_option(const std::optional<std::string>& flag, const std::string& key) const {
    if (flag) return flag;
    if (const std::string* v = problem.option(key)) return *v;
    return std::nullopt;
  }

  std::uint64_t seed() const {
    if (flags.seed) return *flags.seed;
    if (const std::string* v = problem.option("seed")) {
      try {
        return std::stoull(*v);
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "option seed must be a natural number");
      }
    }
    return 0;
  }
};

json dims_json(const std::map<int, long long>& dims) {
  json j = json::object();
  for (const auto& [d, n] : dims) j[std::to_string(d)] = n;
  return j;
}

TruncationSpec truncation_for(const Context& ctx, const CritLocus& x) {
  TruncationSpec t;
  const auto mode = ctx.string_option(ctx.flags.mode, "mode");
  if (!mode) {
    t.mode = x.signature.weights ? TruncationMode::WeightGraded : TruncationMode::DegreeTruncated;
  } else if (*mode == "weight") {
    t.mode = TruncationMode::WeightGraded;
  } else if (*mode == "truncate") {
    t.mode = TruncationMode::DegreeTruncated;
  } else {
    throw Error(ErrorKind::InvalidArgument, "mode must be 'weight' or 'truncate'");
  }
  const auto bound = ctx.int_option(ctx.flags.max_degree, "max_degree");
  t.bound = bound ? *bound : (t.mode == TruncationMode::WeightGraded ? 8 : 16);
  return t;
}

json cohomology_payload(const CohomologyReport& rep) {
  return {{"dims", dims_json(rep.dims_by_degree)},
          {"field", field_name(rep.field)},
          {"stabilised", rep.stabilised},
          {"mode", mode_name(rep.truncation.mode)},
          {"bound", rep.truncation.bound},
          {"level", rep.level},
          {"total", rep.total()},
          {"euler_characteristic", rep.euler_characteristic},
          {"rank_computations", rep.rank_computations},
          {"fallback_ranks", rep.fallback_ranks}};
}

void cmd_milnor(Context& ctx) {
  const CritLocus x = crit_locus_of(ctx.problem);
  const auto cap = ctx.int_option(ctx.flags.max_degree, "max_degree");
  ctx.report.payload = {{"milnor_number", milnor_number(x.f, x.m(), cap ? *cap : 30)}, {"vars", x.m()}};
  ctx.report.status = Status::Ok;
}

void cmd_vc_dims(Context& ctx) {
  const CritLocus x = crit_locus_of(ctx.problem);
  const std::uint64_t seed = ctx.seed();
  ctx.report.seed = seed;
  const CohomologyReport rep = twisted_derham_dims(x, truncation_for(ctx, x), seed);
  json payload = cohomology_payload(rep);
  std::optional<long long> mu;
  try {
    mu = milnor_number(x.f, x.m());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NonIsolated) throw;
  }
  payload["milnor_number"] = mu ? json(*mu) : json(nullptr);
  long long nonzero_degrees = 0;
  for (const auto& [d, n] : rep.dims_by_degree) nonzero_degrees += n != 0 ? 1 : 0;
  payload["concentrated"] = nonzero_degrees <= 1;
  ctx.report.payload = payload;
  if (mu && rep.total() != *mu) {
    ctx.report.status = Status::Fail;
    ctx.report.reason = "total dimension " + std::to_string(rep.total()) + " differs from the Milnor number " + std::to_string(*mu);
  } else if (nonzero_degrees > 1) {
    ctx.report.status = Status::Fail;
    ctx.report.reason = "cohomology is spread over several degrees";
  } else {
    ctx.report.status = Status::Ok;
  }
}

void cmd_koszul(Context& ctx) {
  const CritLocus x = crit_locus_of(ctx.problem);
  const std::uint64_t seed = ctx.seed();
  ctx.report.seed = seed;
  ctx.report.payload = cohomology_payload(koszul_dims_at_hbar_zero(x, truncation_for(ctx, x), seed));
  ctx.report.status = Status::Ok;
}

void cmd_check_mc(Context& ctx) {
  const CritLocus x = crit_locus_of(ctx.problem);
  const Quantisation q = bv_quantisation(x);
  const Operator residual = kappa(x, q);
  ctx.report.residual_terms = residual_json(residual, x.signature);
  ctx.report.payload = {{"quantisation", q.series().to_string(x.signature)}, {"residual_zero", residual.is_zero()}};
  if (residual.is_zero()) {
    ctx.report.status = Status::Ok;
  } else {
    ctx.report.status = Status::Fail;
    ctx.report.reason = "the master equation residual is nonzero";
  }
}

void cmd_check_compat(Context& ctx) {
  const CritLocus x = crit_locus_of(ctx.problem);
  CompatWindow window;
  if (auto w = ctx.int_option(ctx.flags.window, "window")) window.weight_bound = *w;
  if (auto h = ctx.int_option(ctx.flags.hbar_order, "hbar_order")) window.hbar_order = *h;
  const Quantisation q = bv_quantisation(x);
  const DRWord omega = canonical_symplectic(x);
  const CompatVerdict v = check_compatibility(x, omega, q, window);
  ctx.report.residual_terms = residual_json(v.residual, x.signature);
  ctx.report.payload = {{"verdict", compat_kind_name(v.kind)},
                        {"mu", mu(omega, q).to_string(x.signature)},
                        {"sigma", sigma_tangent(q).eps_series().to_string(x.signature)},
                        {"witness", v.witness.to_string(x.signature)},
                        {"unknowns", v.unknowns},
                        {"weight_bound", v.window.weight_bound},
                        {"hbar_order", v.window.hbar_order}};
  if (v.kind == CompatKind::Fails) {
    ctx.report.status = Status::Fail;
    ctx.report.reason = "no coboundary witness in the search window";
  } else {
    ctx.report.status = Status::Ok;
  }
}

void cmd_check_selfdual(Context& ctx) {
  const CritLocus x = crit_locus_of(ctx.problem);
  const SignProfile profile = solve_sign_profile(x);
  const SelfDualVerdict v = is_self_dual(bv_quantisation(x), profile);
  ctx.report.residual_terms = residual_json(v.residual, x.signature);
  ctx.report.payload = {{"profile",
                         {{"y", profile.sign(GenKind::Y)},
                          {"eta", profile.sign(GenKind::Eta)},
                          {"d_y", profile.sign(GenKind::Xi)},
                          {"d_eta", profile.sign(GenKind::Theta)}}},
                        {"verdict", v.strict ? "Strict" : "Fails"}};
  if (v.strict) {
    ctx.report.status = Status::Ok;
  } else {
    ctx.report.status = Status::Fail;
    ctx.report.reason = "star(Delta) differs from Delta";
  }
}

void cmd_eigen(Context& ctx) {
  const CritLocus x = crit_locus_of(ctx.problem);
  const int p = ctx.int_option(ctx.flags.p, "p").value_or(1);
  const int k = ctx.int_option(ctx.flags.k, "k").value_or(1);
  const int w = ctx.int_option(ctx.flags.weight_bound, "weight_bound").value_or(1);
  const EigenReport rep = nu_eigen_analysis(x, p, k, w);
  json eig = json::array();
  for (long long e : rep.eigenvalues) eig.push_back(e);
  ctx.report.payload = {{"p", p},
                        {"k", k},
                        {"weight_bound", w},
                        {"dimension", rep.dimension},
                        {"eigenvalues", eig},
                        {"diagonalisable", rep.diagonalisable},
                        {"combined_scalar", rep.combined_scalar ? json(rational_string(*rep.combined_scalar)) : json(nullptr)},
                        {"interval", json::array({1 - p - k, 1 - k})},
                        {"invertible", rep.invertible}};
  const bool in_interval =
      rep.combined_scalar && *rep.combined_scalar >= 1 - p - k && *rep.combined_scalar <= 1 - k;
  if (rep.diagonalisable && in_interval) {
    ctx.report.status = Status::Ok;
  } else {
    ctx.report.status = Status::Fail;
    ctx.report.reason = "nu(omega, pi) is not a scalar shift with eigenvalues in the expected interval";
  }
}

void cmd_filtration(Context& ctx) {
  const CritLocus x = crit_locus_of(ctx.problem);
  const std::string kind = ctx.string_option(ctx.flags.kind, "kind").value_or("ftilde");
  FiltrationLabel label;
  if (kind == "g") {
    label.kind = FiltrationKind::G;
  } else if (kind == "ftilde") {
    label.kind = FiltrationKind::Ftilde;
  } else if (kind == "conv") {
    label.kind = FiltrationKind::GconvF;
  } else {
    throw Error(ErrorKind::InvalidArgument, "kind must be one of g, ftilde, conv");
  }
  label.level = ctx.int_option(ctx.flags.level, "level").value_or(0);
  const int p = ctx.int_option(ctx.flags.p, "p").value_or(0);
  const int w = ctx.int_option(ctx.flags.weight_bound, "weight_bound").value_or(2);
  const int max_hbar = ctx.int_option(ctx.flags.max_hbar, "max_hbar").value_or(4);
  const IntWindow degrees{-x.m(), x.m()};
  const IntWindow hbars{0, max_hbar};
  const DimTable table = filtration_dims(label, p, degrees, hbars, x, w);
  json dims = json::object();
  for (const auto& [de, n] : table) dims[std::to_string(de.first)][std::to_string(de.second)] = n;
  ctx.report.payload = {{"kind", kind}, {"level", label.level}, {"p", p}, {"weight_bound", w}, {"max_hbar", max_hbar},
                        {"dims", dims}};
  ctx.report.status = Status::Ok;
}

const std::map<std::string, std::function<void(Context&)>>& dispatch() {
  static const std::map<std::string, std::function<void(Context&)>> table = {
      {"milnor", cmd_milnor},         {"vc-dims", cmd_vc_dims},         {"check-mc", cmd_check_mc},
      {"check-compat", cmd_check_compat}, {"check-selfdual", cmd_check_selfdual}, {"eigen", cmd_eigen},
      {"filtration", cmd_filtration}, {"koszul-dims", cmd_koszul},
  };
  return table;
}

void fill_error(Report& report, const std::string& kind, const std::string& reason) {
  report.status = Status::Error;
  report.error_kind = kind;
  report.reason = reason.empty() ? kind : reason;
  report.payload = json::object();
  report.residual_terms = json::array();
}

}  // namespace

Report run_command(const std::string& command, const ProblemFile& problem, const CommandOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.command = command;
  report.problem = print_problem(problem);
  auto it = dispatch().find(command);
  if (it == dispatch().end()) {
    fill_error(report, "InvalidArgument", "unknown command '" + command + "'");
  } else {
    Context ctx{problem, options, report};
    try {
      it->second(ctx);
    } catch (const Error& e) {
      fill_error(report, std::string(error_kind_name(e.kind())), e.what());
    } catch (const std::exception& e) {
      fill_error(report, "Internal", e.what());
    }
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;
  report.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  return report;
}

Report run_command_text(const std::string& command, std::string_view problem_text, const CommandOptions& options) {
  ProblemFile problem;
  try {
    problem = parse_problem(problem_text);
  } catch (const Error& e) {
    Report report;
    report.command = command;
    fill_error(report, std::string(error_kind_name(e.kind())), e.what());
    return report;
  }
  return run_command(command, problem, options);
}

}  // namespace qshift
