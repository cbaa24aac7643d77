#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sine/diagnostics.hpp"
#include "sine/problem.hpp"
#include "sine/stopping.hpp"

namespace sine {

enum class ProblemKind { multiplication, random, file };

/// Problem source section of a run configuration.
struct ProblemConfig {
  ProblemKind kind = ProblemKind::multiplication;
  // multiplication
  std::size_t n = 4096;
  double exponent = 1.0;
  // random
  RandomProblemSpec random{};
  // file
  ProblemFiles files{};
  // common
  double delta = 1e-3;
  NoiseMode noise = NoiseMode::constant;
  std::uint64_t seed = 0;
};

/// Everything `solve`, `compare` and `diagnose` need. Missing JSON keys keep
/// these defaults.
struct RunConfig {
  std::string solver = "sine";
  double gamma = 1e-3;
  double tau = 1.001;
  std::size_t max_iters = 0;
  std::optional<std::filesystem::path> x0_path;
  bool history = false;
  ProblemConfig problem{};
};

struct RateCheckConfig {
  std::vector<double> delta_grid{1e-2, 3e-3, 1e-3, 3e-4, 1e-4, 3e-5, 1e-5};
  std::vector<double> exponents{1.0, 3.0};  ///< truth t^e, source exponent mu = e/2
  std::size_t n = 4096;
  double tau = 1.001;
  double gamma = 1e-3;
  std::size_t max_iters = 0;

  /// Throws InputError unless the grid is non-empty, positive and strictly decreasing.
  void validate() const;
};

/// Parses a run configuration; relative paths resolve against `base_dir`.
RunConfig parse_run_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
RateCheckConfig parse_ratecheck_config(const nlohmann::json& j);
nlohmann::json load_json_file(const std::filesystem::path& path);

Problem build_problem(const ProblemConfig& cfg);
StoppingRule make_rule(const RunConfig& cfg, const Problem& problem);
RunOptions make_options(const RunConfig& cfg, const Problem& problem);
RunReport run_solver(const std::string& solver, const Problem& problem, const RunConfig& cfg,
                     std::size_t min_steps = 0);

// ---------------------------------------------------------------- compare

struct CompareRow {
  std::size_t m = 0;
  double sine_residual = 0.0;
  double cgne_residual = 0.0;
  bool dominates = true;  ///< sine <= cgne + 1e-10 ||r_0||
  friend bool operator==(const CompareRow&, const CompareRow&) = default;
};

struct CompareResult {
  RunReport sine;
  RunReport cgne;
  std::size_t m_gamma = 0;
  std::size_t m_inf = 0;
  std::vector<CompareRow> rows;

  bool all_dominate() const;
};

inline constexpr double kDominanceSlack = 1e-10;

/// Per-step residual table for two runs on the same data. A run that stopped
/// early (breakdown) keeps its last residual for later steps.
std::vector<CompareRow> dominance_table(const std::vector<double>& sine, const std::vector<double>& cgne,
                                        std::size_t last_m);

CompareResult compare_solvers(const Problem& problem, const RunConfig& cfg);

// -------------------------------------------------------------- ratecheck

struct RateRecord {
  double delta = 0.0;
  std::size_t stopping_index = 0;
  double error = 0.0;
  bool flagged = false;  ///< run hit the iteration cap; excluded from the fit
  friend bool operator==(const RateRecord&, const RateRecord&) = default;
};

struct RateCheckResult {
  double exponent = 1.0;
  double mu = 0.5;
  double theory_rate = 0.5;  ///< 2mu/(2mu+1)
  std::vector<RateRecord> records;  ///< decreasing delta
  std::optional<double> slope;

  std::size_t flagged_count() const;
  /// Number of adjacent pairs where the error fails to decrease with delta.
  std::size_t monotonicity_inversions() const;
  friend bool operator==(const RateCheckResult&, const RateCheckResult&) = default;
};

/// Least-squares slope of log(error) against log(delta) over unflagged records
/// with positive error; absent with fewer than two such records.
std::optional<double> fit_rate(const std::vector<RateRecord>& records);

/// One multiplication problem per (exponent, delta), solved in parallel.
std::vector<RateCheckResult> run_ratecheck(const RateCheckConfig& cfg);

// ------------------------------------------------------------------- JSON

nlohmann::json to_json(const RunReport& r);
RunReport run_report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CompareResult& c);
CompareResult compare_result_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RateCheckResult& r);
RateCheckResult ratecheck_result_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DiagnosticsReport& d);
DiagnosticsReport diagnostics_from_json(const nlohmann::json& j);

bool same_record(const CompareResult& a, const CompareResult& b);

// --------------------------------------------------------------- commands

/// Process exit codes of the CLI commands.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitIterationCap = 2,
  kExitAssertion = 3,
};

struct CommandOptions {
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;
  bool history = false;
};

/// report.json + residuals.csv
int cmd_solve(const RunConfig& cfg, const CommandOptions& opts);
/// report.json + compare.csv
int cmd_compare(const RunConfig& cfg, const CommandOptions& opts);
/// ratecheck.json + ratecheck.csv
int cmd_ratecheck(const RateCheckConfig& cfg, const CommandOptions& opts);
/// diagnostics.json + report.json
int cmd_diagnose(const RunConfig& cfg, const CommandOptions& opts);

}  // namespace sine
