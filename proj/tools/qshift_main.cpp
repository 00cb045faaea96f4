#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qshift/json_schema.hpp"
#include "qshift/report.hpp"

namespace {

struct Flags {
  std::string file;
  std::string mode;
  int max_degree = -1;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int window = -1;
  int hbar_order = -1;
  int p = -1;
  int k = -1;
  std::string kind;
  int level = -1;
  int weight_bound = -1;
  int max_hbar = -1;
};

std::optional<int> opt(int v) { return v < 0 ? std::nullopt : std::optional<int>(v); }
std::optional<std::string> opt(const std::string& v) { return v.empty() ? std::nullopt : std::optional<std::string>(v); }

qshift::CommandOptions to_options(const Flags& f) {
  qshift::CommandOptions o;
  o.mode = opt(f.mode);
  o.max_degree = opt(f.max_degree);
  if (f.seed_set) o.seed = f.seed;
  o.window = opt(f.window);
  o.hbar_order = opt(f.hbar_order);
  o.p = opt(f.p);
  o.k = opt(f.k);
  o.kind = opt(f.kind);
  o.level = opt(f.level);
  o.weight_bound = opt(f.weight_bound);
  o.max_hbar = opt(f.max_hbar);
  if (const char* env = std::getenv("QSHIFT_SEED")) {
    try {
      o.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "qshift: ignoring malformed QSHIFT_SEED\n";
    }
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qshift: BV quantisations of derived critical loci"};
  app.require_subcommand(1);
  Flags flags;

  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", flags.file, "problem file ('-' for stdin)")->required();
    return sub;
  };

  add("milnor", "Milnor number of f")->add_option("--max-degree", flags.max_degree, "degree cap");
  for (const char* name : {"vc-dims", "koszul-dims"}) {
    CLI::App* sub = add(name, std::string(name) == "vc-dims" ? "twisted de Rham cohomology over Q(hbar)"
                                                             : "Koszul cohomology at hbar = 0");
    sub->add_option("--mode", flags.mode, "weight | truncate")->check(CLI::IsMember({"weight", "truncate"}));
    sub->add_option("--max-degree", flags.max_degree, "truncation bound");
    sub->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& s) {
      flags.seed = s;
      flags.seed_set = true;
    }, "seed for the rank specialisations");
  }
  add("check-mc", "master equation for the BV quantisation");
  CLI::App* compat = add("check-compat", "compatibility of the canonical pair");
  compat->add_option("--window", flags.window, "weight bound of the witness search");
  compat->add_option("--hbar-order", flags.hbar_order, "hbar truncation order");
  add("check-selfdual", "self-duality of the BV quantisation");
  CLI::App* eigen = add("eigen", "eigenvalues of nu(omega, pi)");
  eigen->add_option("--p", flags.p, "symbol arity")->check(CLI::NonNegativeNumber);
  eigen->add_option("--k", flags.k, "G-level")->check(CLI::PositiveNumber);
  eigen->add_option("--weight-bound", flags.weight_bound, "y-degree bound of the window");
  CLI::App* filt = add("filtration", "dimensions of filtration pieces");
  filt->add_option("--kind", flags.kind, "g | ftilde | conv")->check(CLI::IsMember({"g", "ftilde", "conv"}));
  filt->add_option("--level", flags.level, "filtration level")->check(CLI::NonNegativeNumber);
  filt->add_option("--p", flags.p, "intersect with Ftilde^p")->check(CLI::NonNegativeNumber);
  filt->add_option("--weight-bound", flags.weight_bound, "y-degree bound");
  filt->add_option("--max-hbar", flags.max_hbar, "largest hbar exponent");

  app.add_subcommand("schema", "print the report JSON schema");
  CLI::App* canon = app.add_subcommand("print", "print the canonical form of a problem file");
  canon->add_option("file", flags.file, "problem file ('-' for stdin)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  if (command == "schema") {
    std::cout << qshift::report_schema().dump(2) << "\n";
    return 0;
  }

  std::string text;
  if (flags.file == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(flags.file);
    if (!in) {
      qshift::Report r;
      r.command = command;
      r.status = qshift::Status::Error;
      r.error_kind = "InvalidArgument";
      r.reason = "cannot read problem file '" + flags.file + "'";
      std::cout << r.to_json().dump(2) << "\n";
      return r.exit_code();
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  if (command == "print") {
    try {
      std::cout << qshift::print_problem(qshift::parse_problem(text));
      return 0;
    } catch (const qshift::Error& e) {
      std::cerr << "qshift: " << e.what() << "\n";
      return 2;
    }
  }

  const qshift::Report report = qshift::run_command_text(command, text, to_options(flags));
  if (report.status == qshift::Status::Error) std::cerr << "qshift: " << report.reason << "\n";
  std::cout << report.to_json().dump(2) << "\n";
  return report.exit_code();
}
