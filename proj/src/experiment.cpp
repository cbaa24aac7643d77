#include "sine/experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <set>

#include "sine/cgne_solver.hpp"
#include "sine/errors.hpp"
#include "sine/io.hpp"
#include "sine/sine_solver.hpp"

namespace sine {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& known, const std::string& section) {
  if (!j.is_object()) throw InputError(section + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw InputError("unknown key '" + key + "' in " + section);
  }
}

template <class T>
void read_key(const json& j, const char* key, T& out) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("config key '") + key + "': " + e.what());
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

ProblemKind parse_problem_kind(const std::string& name) {
  if (name == "multiplication") return ProblemKind::multiplication;
  if (name == "random") return ProblemKind::random;
  if (name == "file") return ProblemKind::file;
  throw InputError("unknown problem kind '" + name + "' (expected multiplication, random or file)");
}

ProblemConfig parse_problem_config(const json& j, const std::filesystem::path& base) {
  reject_unknown_keys(j,
                      {"kind", "n", "exponent", "rows", "cols", "decay", "rate", "operator", "format", "data", "truth",
                       "delta", "noise", "seed"},
                      "problem");
  ProblemConfig cfg;
  std::string kind = "multiplication";
  read_key(j, "kind", kind);
  cfg.kind = parse_problem_kind(kind);
  read_key(j, "n", cfg.n);
  read_key(j, "exponent", cfg.exponent);
  read_key(j, "rows", cfg.random.rows);
  read_key(j, "cols", cfg.random.cols);
  std::string decay = to_string(cfg.random.profile.kind);
  read_key(j, "decay", decay);
  cfg.random.profile.kind = parse_decay_kind(decay);
  read_key(j, "rate", cfg.random.profile.rate);
  read_key(j, "delta", cfg.delta);
  read_key(j, "seed", cfg.seed);

  cfg.noise = cfg.kind == ProblemKind::random ? NoiseMode::random_direction : NoiseMode::constant;
  if (j.contains("noise")) cfg.noise = parse_noise_mode(j.at("noise").get<std::string>());

  if (cfg.kind == ProblemKind::file) {
    if (!j.contains("operator") || !j.contains("data")) throw InputError("file problems need 'operator' and 'data'");
    cfg.files.operator_path = resolve(base, j.at("operator").get<std::string>());
    cfg.files.data_path = resolve(base, j.at("data").get<std::string>());
    std::string format = "mtx";
    read_key(j, "format", format);
    cfg.files.format = parse_operator_format(format);
    if (j.contains("truth")) cfg.files.truth_path = resolve(base, j.at("truth").get<std::string>());
  }
  return cfg;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

void write_json(const std::filesystem::path& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

// ------------------------------------------------------------------ config

void RateCheckConfig::validate() const {
  if (delta_grid.empty()) throw InputError("ratecheck delta_grid is empty");
  for (std::size_t i = 0; i < delta_grid.size(); ++i) {
    if (!(delta_grid[i] > 0.0)) throw InputError("ratecheck delta_grid entries must be positive");
    if (i > 0 && !(delta_grid[i] < delta_grid[i - 1])) throw InputError("ratecheck delta_grid must be strictly decreasing");
  }
  if (exponents.empty()) throw InputError("ratecheck needs at least one truth exponent");
  for (double e : exponents) {
    if (!(e > 0.0)) throw InputError("ratecheck truth exponents must be positive");
  }
  if (!(tau > 1.0)) throw InputError("discrepancy parameter tau must be > 1");
  if (!(gamma > 0.0)) throw InputError("shift gamma must be positive");
  if (n < 2) throw InputError("ratecheck grid size must be >= 2");
}

RunConfig parse_run_config(const json& j, const std::filesystem::path& base_dir) {
  reject_unknown_keys(j, {"solver", "gamma", "tau", "max_iters", "x0", "history", "problem", "ratecheck"}, "config");
  RunConfig cfg;
  read_key(j, "solver", cfg.solver);
  if (cfg.solver != "sine" && cfg.solver != "cgne") throw InputError("solver must be 'sine' or 'cgne'");
  read_key(j, "gamma", cfg.gamma);
  read_key(j, "tau", cfg.tau);
  read_key(j, "max_iters", cfg.max_iters);
  read_key(j, "history", cfg.history);
  if (j.contains("x0") && !j.at("x0").is_null()) cfg.x0_path = resolve(base_dir, j.at("x0").get<std::string>());
  if (j.contains("problem")) cfg.problem = parse_problem_config(j.at("problem"), base_dir);
  if (!(cfg.gamma > 0.0)) throw InputError("shift gamma must be positive");
  if (!(cfg.tau > 1.0)) throw InputError("discrepancy parameter tau must be > 1");
  return cfg;
}

RateCheckConfig parse_ratecheck_config(const json& root) {
  const json& j = root.contains("ratecheck") ? root.at("ratecheck") : root;
  reject_unknown_keys(j, {"delta_grid", "exponents", "n", "tau", "gamma", "max_iters"}, "ratecheck config");
  RateCheckConfig cfg;
  read_key(j, "delta_grid", cfg.delta_grid);
  read_key(j, "exponents", cfg.exponents);
  read_key(j, "n", cfg.n);
  read_key(j, "tau", cfg.tau);
  read_key(j, "gamma", cfg.gamma);
  read_key(j, "max_iters", cfg.max_iters);
  cfg.validate();
  return cfg;
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open config");
  try {
    return json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Problem build_problem(const ProblemConfig& cfg) {
  switch (cfg.kind) {
    case ProblemKind::multiplication: {
      Problem p = multiplication_problem(cfg.n, cfg.exponent, cfg.delta);
      if (cfg.noise == NoiseMode::random_direction) {
        p.y_delta = add_noise(*p.y_exact, cfg.delta, cfg.noise, cfg.seed, p.op.range());
      }
      return p;
    }
    case ProblemKind::random: {
      RandomProblemSpec spec = cfg.random;
      spec.delta = cfg.delta;
      spec.noise = cfg.noise;
      spec.seed = cfg.seed;
      return random_problem(spec);
    }
    case ProblemKind::file: {
      ProblemFiles files = cfg.files;
      files.delta = cfg.delta;
      return load_problem(files);
    }
  }
  throw InputError("unknown problem kind");
}

StoppingRule make_rule(const RunConfig& cfg, const Problem& problem) {
  StoppingRule rule{cfg.tau, problem.delta, cfg.max_iters};
  rule.validate();
  return rule;
}

RunOptions make_options(const RunConfig& cfg, const Problem& problem) {
  RunOptions options;
  options.keep_history = cfg.history;
  if (cfg.x0_path) {
    options.x0 = io::read_csv_vector(*cfg.x0_path);
    if (options.x0->size() != problem.op.domain_dim()) {
      throw InputError(cfg.x0_path->string() + ": initial guess has length " + std::to_string(options.x0->size()) +
                       ", expected " + std::to_string(problem.op.domain_dim()));
    }
  }
  return options;
}

RunReport run_solver(const std::string& solver, const Problem& problem, const RunConfig& cfg, std::size_t min_steps) {
  auto options = make_options(cfg, problem);
  options.min_steps = min_steps;
  const auto rule = make_rule(cfg, problem);
  if (solver == "sine") return run_sine(problem, cfg.gamma, rule, options);
  if (solver == "cgne") return run_cgne(problem, rule, options);
  throw InputError("solver must be 'sine' or 'cgne'");
}

// ----------------------------------------------------------------- compare

bool CompareResult::all_dominate() const {
  return std::all_of(rows.begin(), rows.end(), [](const CompareRow& r) { return r.dominates; });
}

std::vector<CompareRow> dominance_table(const std::vector<double>& sine, const std::vector<double>& cgne,
                                        std::size_t last_m) {
  std::vector<CompareRow> rows;
  if (sine.empty() || cgne.empty()) return rows;
  const double r0 = std::max(sine.front(), cgne.front());
  for (std::size_t m = 0; m <= last_m; ++m) {
    CompareRow row;
    row.m = m;
    row.sine_residual = sine[std::min(m, sine.size() - 1)];
    row.cgne_residual = cgne[std::min(m, cgne.size() - 1)];
    row.dominates = row.sine_residual <= row.cgne_residual + kDominanceSlack * r0;
    rows.push_back(row);
  }
  return rows;
}

CompareResult compare_solvers(const Problem& problem, const RunConfig& cfg) {
  CompareResult c;
  const auto first_sine = run_solver("sine", problem, cfg);
  const auto first_cgne = run_solver("cgne", problem, cfg);
  const std::size_t last = std::max(first_sine.stopping_index, first_cgne.stopping_index);
  // rerun so both histories cover steps 0..last
  c.sine = run_solver("sine", problem, cfg, last);
  c.cgne = run_solver("cgne", problem, cfg, last);
  c.m_gamma = c.sine.stopping_index;
  c.m_inf = c.cgne.stopping_index;
  c.rows = dominance_table(c.sine.residual_history, c.cgne.residual_history, last);
  return c;
}

// --------------------------------------------------------------- ratecheck

std::size_t RateCheckResult::flagged_count() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const RateRecord& r) { return r.flagged; }));
}

std::size_t RateCheckResult::monotonicity_inversions() const {
  std::size_t inversions = 0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (!(records[i].error < records[i - 1].error)) ++inversions;
  }
  return inversions;
}

std::optional<double> fit_rate(const std::vector<RateRecord>& records) {
  std::vector<double> lx, ly;
  for (const auto& r : records) {
    if (r.flagged || !(r.error > 0.0) || !(r.delta > 0.0)) continue;
    lx.push_back(std::log(r.delta));
    ly.push_back(std::log(r.error));
  }
  if (lx.size() < 2) return std::nullopt;
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

std::vector<RateCheckResult> run_ratecheck(const RateCheckConfig& cfg) {
  cfg.validate();
  const std::size_t ne = cfg.exponents.size();
  const std::size_t nd = cfg.delta_grid.size();
  std::vector<RateCheckResult> results(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    auto& res = results[e];
    res.exponent = cfg.exponents[e];
    res.mu = res.exponent / 2.0;
    res.theory_rate = 2.0 * res.mu / (2.0 * res.mu + 1.0);
    res.records.resize(nd);
  }

  std::exception_ptr failure;
  const auto jobs = static_cast<std::ptrdiff_t>(ne * nd);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t job = 0; job < jobs; ++job) {
    const std::size_t e = static_cast<std::size_t>(job) / nd;
    const std::size_t d = static_cast<std::size_t>(job) % nd;
    try {
      const double delta = cfg.delta_grid[d];
      const Problem problem = multiplication_problem(cfg.n, cfg.exponents[e], delta);
      const StoppingRule rule{cfg.tau, delta, cfg.max_iters};
      const RunReport rep = run_sine(problem, cfg.gamma, rule);
      RateRecord rec;
      rec.delta = delta;
      rec.stopping_index = rep.stopping_index;
      rec.error = rep.error_history->at(rep.stopping_index);
      rec.flagged = rep.terminated_by == Termination::iteration_cap;
      results[e].records[d] = rec;
    } catch (...) {
#pragma omp critical(sine_ratecheck_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (auto& res : results) res.slope = fit_rate(res.records);
  return results;
}

// -------------------------------------------------------------------- JSON

json to_json(const RunReport& r) {
  return json{{"solver", r.solver},
              {"gamma", optional_json(r.gamma)},
              {"tau", r.rule.tau},
              {"delta", r.rule.delta},
              {"max_iters", r.rule.max_iters},
              {"stopping_index", r.stopping_index},
              {"terminated_by", to_string(r.terminated_by)},
              {"breakdown_step", optional_json(r.breakdown_step)},
              {"elapsed_seconds", r.elapsed_seconds},
              {"residual_history", r.residual_history},
              {"error_history", optional_json(r.error_history)},
              {"alphas", r.alphas},
              {"betas", r.betas},
              {"x", r.x}};
}

RunReport run_report_from_json(const json& j) {
  RunReport r;
  r.solver = j.at("solver").get<std::string>();
  r.gamma = optional_from<double>(j, "gamma");
  r.rule.tau = j.at("tau").get<double>();
  r.rule.delta = j.at("delta").get<double>();
  r.rule.max_iters = j.at("max_iters").get<std::size_t>();
  r.stopping_index = j.at("stopping_index").get<std::size_t>();
  r.terminated_by = parse_termination(j.at("terminated_by").get<std::string>());
  r.breakdown_step = optional_from<std::size_t>(j, "breakdown_step");
  r.elapsed_seconds = j.at("elapsed_seconds").get<double>();
  r.residual_history = j.at("residual_history").get<std::vector<double>>();
  r.error_history = optional_from<std::vector<double>>(j, "error_history");
  r.alphas = j.at("alphas").get<std::vector<double>>();
  r.betas = j.at("betas").get<std::vector<double>>();
  r.x = j.at("x").get<Vector>();
  return r;
}

json to_json(const CompareResult& c) {
  json rows = json::array();
  for (const auto& row : c.rows) {
    rows.push_back({{"m", row.m},
                    {"sine_residual", row.sine_residual},
                    {"cgne_residual", row.cgne_residual},
                    {"dominates", row.dominates}});
  }
  return json{{"m_gamma", c.m_gamma}, {"m_inf", c.m_inf}, {"all_dominate", c.all_dominate()},
              {"rows", rows},         {"sine", to_json(c.sine)}, {"cgne", to_json(c.cgne)}};
}

CompareResult compare_result_from_json(const json& j) {
  CompareResult c;
  c.m_gamma = j.at("m_gamma").get<std::size_t>();
  c.m_inf = j.at("m_inf").get<std::size_t>();
  for (const auto& row : j.at("rows")) {
    c.rows.push_back({row.at("m").get<std::size_t>(), row.at("sine_residual").get<double>(),
                      row.at("cgne_residual").get<double>(), row.at("dominates").get<bool>()});
  }
  c.sine = run_report_from_json(j.at("sine"));
  c.cgne = run_report_from_json(j.at("cgne"));
  return c;
}

bool same_record(const CompareResult& a, const CompareResult& b) {
  return a.m_gamma == b.m_gamma && a.m_inf == b.m_inf && a.rows == b.rows && a.sine.same_record(b.sine) &&
         a.cgne.same_record(b.cgne);
}

json to_json(const RateCheckResult& r) {
  json records = json::array();
  for (const auto& rec : r.records) {
    records.push_back(
        {{"delta", rec.delta}, {"stopping_index", rec.stopping_index}, {"error", rec.error}, {"flagged", rec.flagged}});
  }
  return json{{"exponent", r.exponent},
              {"mu", r.mu},
              {"theory_rate", r.theory_rate},
              {"slope", optional_json(r.slope)},
              {"records", records}};
}

RateCheckResult ratecheck_result_from_json(const json& j) {
  RateCheckResult r;
  r.exponent = j.at("exponent").get<double>();
  r.mu = j.at("mu").get<double>();
  r.theory_rate = j.at("theory_rate").get<double>();
  r.slope = optional_from<double>(j, "slope");
  for (const auto& rec : j.at("records")) {
    r.records.push_back({rec.at("delta").get<double>(), rec.at("stopping_index").get<std::size_t>(),
                         rec.at("error").get<double>(), rec.at("flagged").get<bool>()});
  }
  return r;
}

json to_json(const DiagnosticsReport& d) {
  json audit_steps = json::array();
  for (const auto& s : d.audit.steps) {
    audit_steps.push_back({{"m", s.m}, {"galerkin", s.galerkin}, {"conjugacy", s.conjugacy}, {"normal_eq", s.normal_eq}});
  }
  json steps = json::array();
  for (const auto& s : d.steps) {
    steps.push_back({{"m", s.m},
                     {"ritz_values", s.ritz.values},
                     {"interlaces", optional_json(s.interlaces)},
                     {"rprime_at_zero", s.rprime},
                     {"within_norm_bound", s.within_norm_bound},
                     {"rprime_lower_bound", s.rprime_lower_bound},
                     {"residual_identity_gap", optional_json(s.residual_identity_gap)}});
  }
  return json{{"gamma", d.gamma},
              {"op_norm", d.op_norm},
              {"all_interlace", d.all_interlace},
              {"rprime_increasing", d.rprime_increasing},
              {"bounds_hold", d.bounds_hold},
              {"orthogonality",
               {{"max_galerkin", d.audit.max_galerkin},
                {"max_conjugacy", d.audit.max_conjugacy},
                {"max_normal_eq", d.audit.max_normal_eq},
                {"steps", audit_steps}}},
              {"steps", steps}};
}

DiagnosticsReport diagnostics_from_json(const json& j) {
  DiagnosticsReport d;
  d.gamma = j.at("gamma").get<double>();
  d.op_norm = j.at("op_norm").get<double>();
  d.all_interlace = j.at("all_interlace").get<bool>();
  d.rprime_increasing = j.at("rprime_increasing").get<bool>();
  d.bounds_hold = j.at("bounds_hold").get<bool>();
  const auto& o = j.at("orthogonality");
  d.audit.max_galerkin = o.at("max_galerkin").get<double>();
  d.audit.max_conjugacy = o.at("max_conjugacy").get<double>();
  d.audit.max_normal_eq = o.at("max_normal_eq").get<double>();
  for (const auto& s : o.at("steps")) {
    d.audit.steps.push_back({s.at("m").get<std::size_t>(), s.at("galerkin").get<double>(),
                             s.at("conjugacy").get<double>(), s.at("normal_eq").get<double>()});
  }
  for (const auto& s : j.at("steps")) {
    DiagnosticStep step;
    step.m = s.at("m").get<std::size_t>();
    step.ritz.values = s.at("ritz_values").get<std::vector<double>>();
    step.interlaces = optional_from<bool>(s, "interlaces");
    step.rprime = s.at("rprime_at_zero").get<double>();
    step.within_norm_bound = s.at("within_norm_bound").get<bool>();
    step.rprime_lower_bound = s.at("rprime_lower_bound").get<bool>();
    step.residual_identity_gap = optional_from<double>(s, "residual_identity_gap");
    d.steps.push_back(std::move(step));
  }
  return d;
}

// ---------------------------------------------------------------- commands

namespace {

RunConfig apply_overrides(RunConfig cfg, const CommandOptions& opts) {
  if (opts.seed) cfg.problem.seed = *opts.seed;
  cfg.history = cfg.history || opts.history;
  return cfg;
}

int exit_for(Termination t) { return t == Termination::iteration_cap ? kExitIterationCap : kExitOk; }

void write_residuals_csv(const std::filesystem::path& path, const RunReport& r) {
  auto out = open_out(path);
  out << "m,residual" << (r.error_history ? ",error" : "") << "\n";
  for (std::size_t m = 0; m < r.residual_history.size(); ++m) {
    out << m << "," << io::format_double(r.residual_history[m]);
    if (r.error_history) out << "," << io::format_double(r.error_history->at(m));
    out << "\n";
  }
}

}  // namespace

int cmd_solve(const RunConfig& config, const CommandOptions& opts) {
  const RunConfig cfg = apply_overrides(config, opts);
  std::filesystem::create_directories(opts.out_dir);
  const Problem problem = build_problem(cfg.problem);
  const RunReport report = run_solver(cfg.solver, problem, cfg);
  write_json(opts.out_dir / "report.json", to_json(report));
  write_residuals_csv(opts.out_dir / "residuals.csv", report);
  std::cout << cfg.solver << ": stopping index " << report.stopping_index << " (" << to_string(report.terminated_by)
            << "), residual " << report.residual_history.at(report.stopping_index) << "\n";
  return exit_for(report.terminated_by);
}

int cmd_compare(const RunConfig& config, const CommandOptions& opts) {
  const RunConfig cfg = apply_overrides(config, opts);
  std::filesystem::create_directories(opts.out_dir);
  const Problem problem = build_problem(cfg.problem);
  const CompareResult c = compare_solvers(problem, cfg);
  write_json(opts.out_dir / "report.json", to_json(c));
  {
    auto out = open_out(opts.out_dir / "compare.csv");
    out << "m,sine_residual,cgne_residual,dominates\n";
    for (const auto& row : c.rows) {
      out << row.m << "," << io::format_double(row.sine_residual) << "," << io::format_double(row.cgne_residual) << ","
          << (row.dominates ? 1 : 0) << "\n";
    }
  }
  std::cout << "stopping indices: sine " << c.m_gamma << ", cgne " << c.m_inf
            << (c.all_dominate() ? "; sine residual <= cgne residual at every step\n"
                                 : "; DOMINANCE VIOLATED\n");
  if (c.sine.terminated_by == Termination::iteration_cap || c.cgne.terminated_by == Termination::iteration_cap) {
    return kExitIterationCap;
  }
  if (!c.all_dominate() || c.m_gamma > c.m_inf) return kExitAssertion;
  return kExitOk;
}

int cmd_ratecheck(const RateCheckConfig& cfg, const CommandOptions& opts) {
  std::filesystem::create_directories(opts.out_dir);
  const auto results = run_ratecheck(cfg);
  json all = json::array();
  auto out = open_out(opts.out_dir / "ratecheck.csv");
  out << "exponent,delta,m,error,flagged\n";
  int code = kExitOk;
  for (const auto& r : results) {
    all.push_back(to_json(r));
    for (const auto& rec : r.records) {
      out << io::format_double(r.exponent) << "," << io::format_double(rec.delta) << "," << rec.stopping_index << ","
          << io::format_double(rec.error) << "," << (rec.flagged ? 1 : 0) << "\n";
    }
    std::cout << "truth t^" << r.exponent << " (mu = " << r.mu << "): slope ";
    if (r.slope) {
      std::cout << *r.slope;
    } else {
      std::cout << "n/a";
    }
    std::cout << ", order-optimal rate " << r.theory_rate << "\n";
    if (5 * r.flagged_count() > r.records.size()) code = kExitIterationCap;
  }
  write_json(opts.out_dir / "ratecheck.json", all);
  return code;
}

int cmd_diagnose(const RunConfig& config, const CommandOptions& opts) {
  const RunConfig cfg = apply_overrides(config, opts);
  if (!cfg.history) {
    throw InputError("diagnose needs retained history: pass --history or set \"history\": true in the config");
  }
  if (cfg.solver != "sine") throw InputError("diagnose runs on the sine solver only");
  std::filesystem::create_directories(opts.out_dir);
  const Problem problem = build_problem(cfg.problem);
  const RunReport report = run_solver("sine", problem, cfg);
  const DiagnosticsReport d = diagnose(problem, report);
  write_json(opts.out_dir / "diagnostics.json", to_json(d));
  write_json(opts.out_dir / "report.json", to_json(report));
  std::cout << "diagnostics over " << d.steps.size() << " steps: interlacing " << (d.all_interlace ? "ok" : "VIOLATED")
            << ", |r'(0)| increasing " << (d.rprime_increasing ? "ok" : "VIOLATED") << ", max Galerkin violation "
            << d.audit.max_galerkin << "\n";
  if (report.terminated_by == Termination::iteration_cap) return kExitIterationCap;
  return d.assertions_pass() ? kExitOk : kExitAssertion;
}

}  // namespace sine
