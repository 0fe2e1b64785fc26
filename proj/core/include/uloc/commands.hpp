#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "uloc/problem.hpp"

namespace uloc {

struct BoundFlags {
  std::optional<int> depth;
  std::optional<int> ext_bound;
  std::optional<int> coeff_window;
  std::optional<int> word_length;
  std::optional<std::uint64_t> seed;
};

struct Invocation {
  std::string command;            // check, coker, ..., loc, division-probe
  std::vector<std::string> args;  // names from the problem file
  std::string sigma;              // empty: the first sigma in the file
  std::string rho;                // empty: the first rank function in the file
  std::optional<int> length;
  std::optional<int> degree;
  BoundFlags bounds;
};

struct Report {
  nlohmann::json data;
  std::string summary;
  int exit_code = 0;  // 0 definite, 2 unknown, 1 error
};

const std::vector<std::string>& command_names();

Report run(const AnyProblem& problem, const Invocation& inv);
// Re-checks every witness embedded in a report against the problem, without search.
Report replay(const AnyProblem& problem, const nlohmann::json& report);
Report error_report(const std::string& command, const std::exception& e);

}  // namespace uloc
