#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "sine/errors.hpp"
#include "sine/experiment.hpp"

using nlohmann::json;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("sine_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::vector<sine::RateRecord> power_law(double exponent, double scale) {
  std::vector<sine::RateRecord> out;
  for (double d : {1e-2, 1e-3, 1e-4, 1e-5}) out.push_back({d, 1, scale * std::pow(d, exponent), false});
  return out;
}

sine::RunConfig random_config() {
  sine::RunConfig cfg;
  cfg.gamma = 0.1;
  cfg.problem.kind = sine::ProblemKind::random;
  cfg.problem.delta = 1e-3;
  cfg.problem.noise = sine::NoiseMode::random_direction;
  cfg.problem.seed = 4;
  return cfg;
}

}  // namespace

TEST_CASE("fit_rate") {
  CHECK(*sine::fit_rate(power_law(1.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(*sine::fit_rate(power_law(0.0, 3.0)) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(*sine::fit_rate(power_law(0.75, 2.0)) == doctest::Approx(0.75).epsilon(1e-12));
  SUBCASE("flagged records are excluded") {
    auto recs = power_law(0.5, 1.0);
    recs.push_back({1e-6, 99, 1e3, true});
    CHECK(*sine::fit_rate(recs) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("too few usable records") {
    CHECK_FALSE(sine::fit_rate({{1e-3, 1, 0.1, false}}));
    CHECK_FALSE(sine::fit_rate({{1e-3, 1, 0.1, false}, {1e-4, 1, 0.01, true}}));
  }
}

TEST_CASE("rate check bookkeeping") {
  sine::RateCheckResult r;
  r.records = {{1e-2, 1, 0.1, false}, {1e-3, 2, 0.2, false}, {1e-4, 3, 0.05, true}};
  CHECK(r.flagged_count() == 1);
  CHECK(r.monotonicity_inversions() == 1);
}

TEST_CASE("run config parsing") {
  SUBCASE("defaults") {
    const auto cfg = sine::parse_run_config(json::object());
    CHECK(cfg.solver == "sine");
    CHECK(cfg.gamma == 1e-3);
    CHECK(cfg.tau == 1.001);
    CHECK(cfg.problem.kind == sine::ProblemKind::multiplication);
    CHECK(cfg.problem.n == 4096);
    CHECK(cfg.problem.noise == sine::NoiseMode::constant);
  }
  SUBCASE("random problems default to random noise") {
    const auto cfg = sine::parse_run_config(json::parse(R"({"problem": {"kind": "random", "rows": 8, "cols": 4}})"));
    CHECK(cfg.problem.kind == sine::ProblemKind::random);
    CHECK(cfg.problem.random.rows == 8);
    CHECK(cfg.problem.noise == sine::NoiseMode::random_direction);
  }
  SUBCASE("relative paths resolve against the config directory") {
    const auto cfg = sine::parse_run_config(
        json::parse(R"({"problem": {"kind": "file", "operator": "a.mtx", "data": "y.csv"}})"), "/some/dir");
    CHECK(cfg.problem.files.operator_path == std::filesystem::path("/some/dir/a.mtx"));
    CHECK(cfg.problem.files.data_path == std::filesystem::path("/some/dir/y.csv"));
  }
  SUBCASE("rejections") {
    CHECK_THROWS_AS(sine::parse_run_config(json::parse(R"({"gama": 1})")), sine::InputError);
    CHECK_THROWS_AS(sine::parse_run_config(json::parse(R"({"problem": {"size": 3}})")), sine::InputError);
    CHECK_THROWS_AS(sine::parse_run_config(json::parse(R"({"gamma": 0})")), sine::InputError);
    CHECK_THROWS_AS(sine::parse_run_config(json::parse(R"({"tau": 1})")), sine::InputError);
    CHECK_THROWS_AS(sine::parse_run_config(json::parse(R"({"solver": "gmres"})")), sine::InputError);
    CHECK_THROWS_AS(sine::parse_run_config(json::parse(R"({"problem": {"kind": "file"}})")), sine::InputError);
  }
}

TEST_CASE("ratecheck config parsing") {
  const auto nested = sine::parse_ratecheck_config(json::parse(R"({"ratecheck": {"n": 512, "exponents": [3]}})"));
  CHECK(nested.n == 512);
  CHECK(nested.exponents == std::vector<double>{3.0});
  const auto flat = sine::parse_ratecheck_config(json::parse(R"({"delta_grid": [1e-2, 1e-3]})"));
  CHECK(flat.delta_grid.size() == 2);
  CHECK_THROWS_AS(sine::parse_ratecheck_config(json::parse(R"({"delta_grid": [1e-3, 1e-2]})")), sine::InputError);
  CHECK_THROWS_AS(sine::parse_ratecheck_config(json::parse(R"({"grid": []})")), sine::InputError);
}

TEST_CASE("dominance_table") {
  const auto rows = sine::dominance_table({1.0, 0.5, 0.1}, {1.0, 0.6, 0.3, 0.2}, 3);
  REQUIRE(rows.size() == 4);
  CHECK(rows[2].sine_residual == 0.1);
  CHECK(rows[3].sine_residual == 0.1);  // carried forward past the end of the sine history
  for (const auto& r : rows) CHECK(r.dominates);
  const auto bad = sine::dominance_table({1.0, 0.7}, {1.0, 0.6}, 1);
  CHECK_FALSE(bad[1].dominates);
}

TEST_CASE("compare_solvers on a random problem") {
  const auto cfg = random_config();
  const auto p = sine::build_problem(cfg.problem);
  const auto c = sine::compare_solvers(p, cfg);
  CHECK(c.all_dominate());
  CHECK(c.m_gamma <= c.m_inf);
  CHECK(c.rows.size() == std::max(c.m_gamma, c.m_inf) + 1);
  CHECK(c.sine.stopping_index == c.m_gamma);
  CHECK(c.cgne.stopping_index == c.m_inf);
}

TEST_CASE("JSON round trips") {
  const auto cfg = random_config();
  const auto p = sine::build_problem(cfg.problem);
  SUBCASE("run report") {
    const auto r = sine::run_solver("sine", p, cfg);
    const auto back = sine::run_report_from_json(json::parse(sine::to_json(r).dump()));
    CHECK(back.same_record(r));
  }
  SUBCASE("compare result") {
    const auto c = sine::compare_solvers(p, cfg);
    CHECK(sine::same_record(sine::compare_result_from_json(json::parse(sine::to_json(c).dump())), c));
  }
  SUBCASE("diagnostics") {
    auto with_history = cfg;
    with_history.history = true;
    const auto r = sine::run_solver("sine", p, with_history);
    const auto d = sine::diagnose(p, r);
    CHECK(sine::diagnostics_from_json(json::parse(sine::to_json(d).dump())) == d);
  }
  SUBCASE("ratecheck") {
    sine::RateCheckResult r;
    r.exponent = 3;
    r.mu = 1.5;
    r.theory_rate = 0.75;
    r.records = power_law(0.75, 1.0);
    r.slope = 0.75;
    CHECK(sine::ratecheck_result_from_json(json::parse(sine::to_json(r).dump())) == r);
  }
}

TEST_CASE("commands") {
  SUBCASE("solve writes its artefacts") {
    const auto dir = scratch_dir("solve");
    sine::RunConfig cfg;
    cfg.problem.n = 256;
    CHECK(sine::cmd_solve(cfg, {dir, {}, false}) == sine::kExitOk);
    CHECK(std::filesystem::exists(dir / "report.json"));
    CHECK(std::filesystem::exists(dir / "residuals.csv"));
    const auto report = sine::run_report_from_json(sine::load_json_file(dir / "report.json"));
    CHECK(report.terminated_by == sine::Termination::discrepancy);
  }
  SUBCASE("iteration cap exits with 2") {
    const auto dir = scratch_dir("cap");
    sine::RunConfig cfg;
    cfg.problem.n = 256;
    cfg.problem.delta = 1e-8;
    cfg.max_iters = 1;
    CHECK(sine::cmd_solve(cfg, {dir, {}, false}) == sine::kExitIterationCap);
  }
  SUBCASE("seeded compare is reproducible") {
    const auto a = scratch_dir("cmp_a");
    const auto b = scratch_dir("cmp_b");
    const auto cfg = random_config();
    CHECK(sine::cmd_compare(cfg, {a, 7, false}) == sine::kExitOk);
    CHECK(sine::cmd_compare(cfg, {b, 7, false}) == sine::kExitOk);
    auto ra = sine::compare_result_from_json(sine::load_json_file(a / "report.json"));
    auto rb = sine::compare_result_from_json(sine::load_json_file(b / "report.json"));
    for (auto* r : {&ra, &rb}) r->sine.elapsed_seconds = r->cgne.elapsed_seconds = 0.0;  // wall-clock only
    CHECK(sine::same_record(ra, rb));
  }
  SUBCASE("diagnose needs history") {
    const auto dir = scratch_dir("diag");
    const auto cfg = random_config();
    CHECK_THROWS_AS(sine::cmd_diagnose(cfg, {dir, {}, false}), sine::InputError);
    CHECK(sine::cmd_diagnose(cfg, {dir, {}, true}) == sine::kExitOk);
    CHECK(std::filesystem::exists(dir / "diagnostics.json"));
  }
  SUBCASE("single-delta ratecheck reports no slope") {
    const auto dir = scratch_dir("rate");
    sine::RateCheckConfig cfg;
    cfg.delta_grid = {1e-3};
    cfg.exponents = {1.0};
    cfg.n = 512;
    CHECK(sine::cmd_ratecheck(cfg, {dir, {}, false}) == sine::kExitOk);
    const auto j = sine::load_json_file(dir / "ratecheck.json");
    REQUIRE(j.size() == 1);
    CHECK(j[0].at("slope").is_null());
  }
}
