#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "banach_ortho/cli.hpp"

namespace {

// exit-code contract: 0 ok (verdicts may still be false), 1 internal,
// 2 schema violation, 3 capability, 4 diagnostic/empty band
int code_for(const std::exception& e) {
  if (dynamic_cast<const bjo::CapabilityError*>(&e)) return 3;
  if (dynamic_cast<const bjo::DiagnosticError*>(&e)) return 4;
  if (dynamic_cast<const bjo::DomainError*>(&e)) return 2;
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) return 2;
  return 1;
}

void write_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + tmp);
    out << content << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

void emit(const bjo::json& report, const std::string& out_path) {
  std::string text = report.dump(2);
  if (out_path.empty())
    std::cout << text << std::endl;
  else
    write_atomic(out_path, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Birkhoff-James orthogonality and numerical range toolkit"};
  app.require_subcommand(1);

  std::string problem_path, out_path, suite_name;
  std::uint64_t seed = 1;
  double tol_override = 0.0;
  int budget_override = 0, grid_override = 0;

  auto* run = app.add_subcommand("run", "run a problem file");
  run->add_option("file", problem_path, "problem JSON file")->required();
  run->add_option("--out", out_path, "write the report here (atomic)");
  run->add_option("--tol", tol_override, "override the decision tolerance");
  run->add_option("--budget", budget_override, "override sampling budgets");
  run->add_option("--grid", grid_override, "override grid resolutions");

  auto* suite = app.add_subcommand("suite", "run a property suite");
  suite->add_option("name", suite_name, "paper-equivalences | invariants")->required();
  suite->add_option("--seed", seed, "RNG seed (reports are reproducible per seed)")->required();
  suite->add_option("--out", out_path, "write the summary here (atomic)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      std::ifstream in(problem_path);
      if (!in) {
        std::cerr << "cannot open " << problem_path << "\n";
        return 2;
      }
      bjo::json problem = bjo::json::parse(in);
      if (tol_override > 0.0) problem["tol"] = tol_override;
      if (budget_override > 0) problem["budget"] = budget_override;
      if (grid_override > 0) problem["grid"] = grid_override;
      emit(bjo::cli::run_problem(problem), out_path);
      return 0;
    }
    emit(bjo::cli::run_suite(suite_name, seed), out_path);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return code_for(e);
  }
}
