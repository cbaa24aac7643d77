// Command-line driver: solve | compare | ratecheck | diagnose.

#include <CLI11.hpp>

#include <iostream>

#include "sine/errors.hpp"
#include "sine/experiment.hpp"

namespace {

struct Args {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  bool history = false;
};

void add_common(CLI::App* cmd, Args& args, bool config_required) {
  auto* opt = cmd->add_option("--config", args.config, "JSON configuration file");
  if (config_required) opt->required();
  opt->check(CLI::ExistingFile);
  cmd->add_option("--out", args.out, "Output directory")->capture_default_str();
  cmd->add_option("--seed", args.seed, "Override the problem seed");
  cmd->add_flag("--history", args.history, "Retain Krylov vectors for diagnostics");
}

nlohmann::json read_config(const std::string& path) {
  return path.empty() ? nlohmann::json::object() : sine::load_json_file(path);
}

std::filesystem::path config_dir(const std::string& path) {
  return path.empty() ? std::filesystem::path{} : std::filesystem::path(path).parent_path();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shift-and-invert Krylov regularization (SINE) and CGNE experiments"};
  app.require_subcommand(1);

  Args args;
  auto* solve = app.add_subcommand("solve", "Run one solver with discrepancy-principle stopping");
  auto* compare = app.add_subcommand("compare", "Run SINE and CGNE on the same problem, per-step residual table");
  auto* ratecheck = app.add_subcommand("ratecheck", "Error vs noise level sweep on the multiplication problem");
  auto* diagnose = app.add_subcommand("diagnose", "Ritz values, interlacing and orthogonality audit of a SINE run");
  for (auto* cmd : {solve, compare, diagnose}) add_common(cmd, args, false);
  add_common(ratecheck, args, false);

  CLI11_PARSE(app, argc, argv);

  sine::CommandOptions opts;
  opts.out_dir = args.out;
  opts.seed = args.seed;
  opts.history = args.history;

  try {
    const auto json = read_config(args.config);
    if (ratecheck->parsed()) return sine::cmd_ratecheck(sine::parse_ratecheck_config(json), opts);
    const auto cfg = sine::parse_run_config(json, config_dir(args.config));
    if (solve->parsed()) return sine::cmd_solve(cfg, opts);
    if (compare->parsed()) return sine::cmd_compare(cfg, opts);
    if (diagnose->parsed()) return sine::cmd_diagnose(cfg, opts);
  } catch (const sine::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sine::kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sine::kExitInputError;
  }
  return sine::kExitInputError;
}
