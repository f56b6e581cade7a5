#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli_app.hpp"

namespace {

struct Flags {
  std::vector<std::string> spaces;
  std::vector<std::string> functions;
  entire::Index n_max = 2000;
  entire::Index tail_budget = 0;
  std::string format;
  std::string output;
  std::string config;
  double rho = 0.0;
  bool use_upper = false;
  double rho_tolerance = 0.02;
  double sigma_tolerance = 0.03;
  double entire_below = 0.05;
  double not_entire_above = 0.5;
  entire::Index lacunary = 0;
  bool paper_variants = false;
  int jobs = 1;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--space", f.spaces, "Space spec, e.g. hardy:p=2 (repeatable)");
  cmd->add_option("--function", f.functions, "Function spec, e.g. exp:lambda=1 (repeatable for matrix)");
  cmd->add_option("--n-max", f.n_max, "Largest n (default 2000)");
  cmd->add_option("--tail-budget", f.tail_budget, "Tail terms per entry (default 10n+200)");
  cmd->add_option("--format", f.format, "csv | json | table")->check(CLI::IsMember({"csv", "json", "table"}));
  cmd->add_option("-o,--output", f.output, "Output file (relative paths go under $ENTIRE_OUTPUT_DIR)");
  cmd->add_option("--config", f.config, "JSON file of flat overrides");
  cmd->add_option("--rho", f.rho, "Order used in the type formulas (default: estimated)");
  cmd->add_flag("--use-upper", f.use_upper, "Estimate from upper bounds even where E_n is exact");
  cmd->add_option("--rho-tolerance", f.rho_tolerance, "Cross-check tolerance on rho (default 0.02)");
  cmd->add_option("--sigma-tolerance", f.sigma_tolerance, "Cross-check tolerance on sigma (default 0.03)");
  cmd->add_option("--entire-below", f.entire_below, "Root threshold for the entire verdict (default 0.05)");
  cmd->add_option("--not-entire-above", f.not_entire_above, "Root threshold for not_entire (default 0.5)");
  cmd->add_option("--lacunary", f.lacunary, "integer: run the lacunary construction with K terms");
  cmd->add_flag("--paper-variants", f.paper_variants, "norms: add the displayed closed forms");
  cmd->add_option("--jobs", f.jobs, "matrix: worker threads (output order is fixed)");
}

// Config file first, explicit flags on top.
entire::cli::RunConfig build(const std::string& command, CLI::App* cmd, const Flags& f) {
  entire::cli::RunConfig cfg;
  if (!f.config.empty()) entire::cli::apply_config_file(cfg, f.config);
  cfg.command = command;
  auto given = [&](const char* name) { return cmd->get_option(name)->count() > 0; };
  if (given("--space")) cfg.spaces = f.spaces;
  if (given("--function")) cfg.functions = f.functions;
  if (given("--n-max")) cfg.n_max = f.n_max;
  if (given("--tail-budget")) cfg.tail_budget = f.tail_budget;
  if (given("--format")) cfg.format = f.format;
  if (given("--output")) cfg.output = f.output;
  if (given("--rho")) cfg.rho = f.rho;
  if (given("--use-upper")) cfg.use_upper = f.use_upper;
  if (given("--rho-tolerance")) cfg.rho_tolerance = f.rho_tolerance;
  if (given("--sigma-tolerance")) cfg.sigma_tolerance = f.sigma_tolerance;
  if (given("--entire-below")) cfg.thresholds.entire_below = f.entire_below;
  if (given("--not-entire-above")) cfg.thresholds.not_entire_above = f.not_entire_above;
  if (given("--lacunary")) cfg.lacunary = f.lacunary;
  if (given("--paper-variants")) cfg.paper_variants = f.paper_variants;
  if (given("--jobs")) cfg.jobs = f.jobs;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial approximation errors and growth estimates for entire functions"};
  app.require_subcommand(1);
  Flags flags;
  const std::pair<const char*, const char*> commands[] = {
      {"norms", "Monomial norms ||z^n|| for n = 0..n_max"},
      {"approx", "Lower / exact / upper approximation errors E_n"},
      {"estimate", "Entirety verdict, order and type estimates with cross-check"},
      {"integer", "Gaussian-integer approximation and the lacunary construction"},
      {"matrix", "Estimate every (space, function) cell of a grid"},
  };
  for (auto [name, help] : commands) add_common(app.add_subcommand(name, help), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    entire::io::Json j = {{"error", "usage_error"}, {"message", e.what()}};
    std::cerr << j.dump() << '\n';
    return entire::cli::kConfig;
  }

  CLI::App* cmd = app.get_subcommands().front();
  entire::cli::RunResult res;
  try {
    res = entire::cli::run(build(cmd->get_name(), cmd, flags));
  } catch (const entire::cli::ConfigError& e) {
    entire::io::Json j = {{"error", "config_error"}, {"message", e.what()}};
    std::cerr << j.dump() << '\n';
    return entire::cli::kConfig;
  }
  std::cout << res.output;
  if (!res.error.empty()) std::cerr << res.error << '\n';
  return res.exit_code;
}
