#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qshift/diffops.hpp"
#include "qshift/problem.hpp"

namespace qshift {

enum class Status { Ok, Fail, Error };

std::string status_name(Status status);

struct Report {
  std::string command;
  Status status = Status::Error;
  nlohmann::json payload = nlohmann::json::object();
  nlohmann::json residual_terms = nlohmann::json::array();
  long long timing_ms = 0;
  std::string reason;
  std::string error_kind;
  std::string problem;  // canonical problem text, empty when parsing failed
  std::optional<std::uint64_t> seed;

  nlohmann::json to_json() const;
  // 0 ok, 1 fail, 2 error
  int exit_code() const;
};

// Flags shared by the commands; unset fields fall back to the problem file
// options of the same name and then to built-in defaults.
struct CommandOptions {
  std::optional<std::string> mode;  // weight | truncate
  std::optional<int> max_degree;
  std::optional<std::uint64_t> seed;
  std::optional<int> window;  // weight bound of the compatibility search
  std::optional<int> hbar_order;
  std::optional<int> p;
  std::optional<int> k;
  std::optional<std::string> kind;  // g | ftilde | conv
  std::optional<int> level;
  std::optional<int> weight_bound;
  std::optional<int> max_hbar;
};

const std::vector<std::string>& command_names();

Report run_command(const std::string& command, const ProblemFile& problem, const CommandOptions& options);
// Parses first; parse failures become error reports.
Report run_command_text(const std::string& command, std::string_view problem_text, const CommandOptions& options);

nlohmann::json residual_json(const Operator& residual, const AlgebraSignature& sig);
std::string rational_string(const Rational& q);

}  // namespace qshift
