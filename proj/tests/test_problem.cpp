#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "sine/errors.hpp"
#include "sine/io.hpp"
#include "sine/problem.hpp"
#include "sine/sine_solver.hpp"

using sine::Vector;

TEST_CASE("multiplication problem on a 4-point grid") {
  const auto p = sine::multiplication_problem(4, 1.0, 0.0);
  CHECK(p.op.backend() == sine::LinearOperator::Backend::diagonal);
  const auto d = p.op.diagonal_entries();
  CHECK(Vector(d.begin(), d.end()) == Vector{1.0 / 8, 3.0 / 8, 5.0 / 8, 7.0 / 8});
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(p.y_delta[i] == doctest::Approx(d[i] * d[i]));
    CHECK((*p.y_exact)[i] == p.y_delta[i]);
  }
  CHECK(p.op.domain().weights()[0] == 0.25);
  CHECK(p.source->mu == 0.5);
  CHECK(sine::multiplication_problem(8, 3.0, 0.0).source->mu == 1.5);
  CHECK_THROWS_AS(sine::multiplication_problem(1, 1.0, 0.0), sine::InputError);
}

TEST_CASE("multiplication problem noise has weighted norm delta") {
  for (std::size_t n : {4096, 1000, 7}) {
    const auto p = sine::multiplication_problem(n, 1.0, 1e-3);
    Vector diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = p.y_delta[i] - (*p.y_exact)[i];
    CHECK(std::abs(p.op.range().norm(diff) - 1e-3) <= 1e-14 * 1e-3 * 10);
    // y - T x+ is exactly the noise
    const Vector tx = p.op.apply(*p.truth);
    for (std::size_t i = 0; i < n; ++i) diff[i] = p.y_delta[i] - tx[i];
    CHECK(std::abs(p.op.range().norm(diff) - p.delta) <= 1e-12 * p.delta);
  }
}

TEST_CASE("midpoint discretization of t^k matches the L2(0,1) norm") {
  for (std::size_t n : {16, 64, 256, 4096}) {
    const auto space = sine::InnerProductSpace::uniform_quadrature(n);
    const auto t = sine::midpoint_grid(n);
    for (int k = 1; k <= 4; ++k) {
      Vector f(n);
      for (std::size_t i = 0; i < n; ++i) f[i] = std::pow(t[i], k);
      const double exact = 1.0 / std::sqrt(2.0 * k + 1.0);
      CHECK(std::abs(space.norm(f) - exact) / exact <= 10.0 / (static_cast<double>(n) * static_cast<double>(n)));
    }
  }
}

TEST_CASE("add_noise") {
  const Vector y{1, 2, 3, 4};
  const sine::InnerProductSpace unit(4);
  CHECK(sine::add_noise(y, 0.0, sine::NoiseMode::constant, 0, unit) == y);
  CHECK(sine::add_noise(y, 0.0, sine::NoiseMode::random_direction, 0, unit) == y);

  const auto c = sine::add_noise(y, 0.2, sine::NoiseMode::constant, 0, unit);
  for (std::size_t i = 0; i < 4; ++i) CHECK(c[i] - y[i] == doctest::Approx(0.2 / 2.0));  // delta / sqrt(n)

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const double delta = std::pow(10.0, -static_cast<double>(seed));
    for (auto mode : {sine::NoiseMode::constant, sine::NoiseMode::random_direction}) {
      const sine::InnerProductSpace weighted(Vector{0.5, 1.5, 2.0, 0.25});
      // on zero data the perturbation itself is returned
      const auto pure = sine::add_noise(Vector(4, 0.0), delta, mode, seed, weighted);
      CHECK(std::abs(weighted.norm(pure) - delta) <= 1e-14 * delta);
      // on O(1) data the recovered perturbation carries one rounding of y per entry
      const auto noisy = sine::add_noise(y, delta, mode, seed, weighted);
      Vector diff(4);
      for (std::size_t i = 0; i < 4; ++i) diff[i] = noisy[i] - y[i];
      CHECK(std::abs(weighted.norm(diff) - delta) <= 1e-14 * delta + 1e-14);
    }
  }
  CHECK_THROWS_AS(sine::add_noise(y, -1.0, sine::NoiseMode::constant, 0, unit), sine::InputError);
}

TEST_CASE("random problem spectrum and determinism") {
  sine::RandomProblemSpec spec;
  spec.rows = 12;
  spec.cols = 6;
  spec.profile = {sine::DecayKind::geometric, 0.1};
  spec.seed = 5;
  const auto p = sine::random_problem(spec);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(oracle::dense_of(p.op));
  for (int k = 0; k < 6; ++k) CHECK(std::abs(svd.singularValues()(k) - std::pow(10.0, -k)) <= 1e-10);

  spec.delta = 1e-2;
  const auto a = sine::random_problem(spec);
  const auto b = sine::random_problem(spec);
  CHECK(a.y_delta == b.y_delta);
  CHECK(*a.truth == *b.truth);
  const auto va = a.op.matrix().data, vb = b.op.matrix().data;
  CHECK(Vector(va.begin(), va.end()) == Vector(vb.begin(), vb.end()));

  spec.seed = 6;
  CHECK(sine::random_problem(spec).y_delta != a.y_delta);

  spec.profile = {sine::DecayKind::algebraic, 2.0};
  const auto alg = sine::random_problem(spec);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd2(oracle::dense_of(alg.op));
  for (int k = 0; k < 6; ++k) CHECK(std::abs(svd2.singularValues()(k) - std::pow(k + 1.0, -2.0)) <= 1e-12);

  spec.rows = 3;
  CHECK_THROWS_AS(sine::random_problem(spec), sine::InputError);
}

TEST_CASE("single-column random problem is solved in one step") {
  sine::RandomProblemSpec spec;
  spec.rows = 10;
  spec.cols = 1;
  spec.seed = 3;
  spec.delta = 1e-3;
  const auto p = sine::random_problem(spec);
  auto report = sine::run_sine(p, 0.1, {1.001, 0.0, 5});
  CHECK(report.terminated_by == sine::Termination::breakdown);
  CHECK(report.stopping_index == 1);
  const auto a = oracle::dense_of(p.op);
  const auto ls = oracle::pseudoinverse_solve(a, oracle::to_eigen(p.y_delta));
  CHECK(oracle::relative_error(oracle::to_eigen(report.x), ls) <= 1e-12);
}

TEST_CASE("load_problem") {
  const auto dir = std::filesystem::temp_directory_path() / "sine_test_problem";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "eye.mtx") << "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n2 2 1\n";
  std::ofstream(dir / "y.csv") << "1\n0\n";
  std::ofstream(dir / "y3.csv") << "1\n0\n2\n";
  std::ofstream(dir / "d.csv") << "1\n2\n";

  const auto p = sine::load_problem({dir / "eye.mtx", sine::OperatorFormat::matrix_market, dir / "y.csv", {}, 0.0});
  CHECK(p.op.domain_dim() == 2);
  CHECK(p.y_delta == Vector{1, 0});
  CHECK(p.op.apply(Vector{3, 4}) == Vector{3, 4});

  const auto d = sine::load_problem({dir / "d.csv", sine::OperatorFormat::diagonal_csv, dir / "y.csv", {}, 0.1});
  CHECK(d.op.backend() == sine::LinearOperator::Backend::diagonal);
  CHECK(d.delta == 0.1);

  try {
    sine::load_problem({dir / "eye.mtx", sine::OperatorFormat::matrix_market, dir / "y3.csv", {}, 0.0});
    FAIL("expected a dimension error");
  } catch (const sine::InputError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("length 3") != std::string::npos);
    CHECK(msg.find("2x2") != std::string::npos);
  }
}
