#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "uloc/commands.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw uloc::ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computations in universal localisations of finitely presented modules"};
  app.set_help_flag("-h,--help", "Show usage");

  uloc::Invocation inv;
  std::string problem_path;
  bool as_json = false;
  std::string out_path;

  std::string commands;
  for (const auto& c : uloc::command_names()) commands += (commands.empty() ? "" : ", ") + c;
  commands += ", replay";

  app.add_option("command", inv.command, "One of: " + commands)->required();
  app.add_option("problem", problem_path, "Problem file")->required();
  app.add_option("args", inv.args, "Names from the problem file (replay: a report file)");
  app.add_option("--depth", inv.bounds.depth, "Search depth for sigma words");
  app.add_option("--ext-bound", inv.bounds.ext_bound, "Extension length bound");
  app.add_option("--coeff-window", inv.bounds.coeff_window, "Coefficient window for hom searches");
  app.add_option("--word-length", inv.bounds.word_length, "Maximum sigma word length");
  app.add_option("--seed", inv.bounds.seed, "Seed for randomised searches");
  app.add_option("--sigma", inv.sigma, "Name of the sigma list to use");
  app.add_option("--rho", inv.rho, "Rank function, for example p:3");
  app.add_option("--length", inv.length, "Length bound for closure and preloc-check");
  app.add_option("--degree", inv.degree, "Tor degree for stably-flat");
  app.add_flag("--json", as_json, "Print the JSON report instead of the summary");
  app.add_option("-o,--out", out_path, "Also write the JSON report to this file");

  CLI11_PARSE(app, argc, argv);

  uloc::Report report;
  try {
    auto problem = uloc::load_problem(problem_path);
    if (inv.command == "replay") {
      if (inv.args.size() != 1) throw uloc::ParseError("replay needs exactly one report file");
      report = uloc::replay(problem, nlohmann::json::parse(read_file(inv.args[0])));
    } else {
      report = uloc::run(problem, inv);
    }
  } catch (const std::exception& e) {
    report = uloc::error_report(inv.command, e);
  }

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << report.data.dump(2) << "\n";
  }
  if (as_json) std::cout << report.data.dump(2) << "\n";
  else std::cout << report.summary;
  return report.exit_code;
}
