#include "sine/problem.hpp"

#include <cmath>
#include <random>

#include <Eigen/QR>

#include "sine/errors.hpp"
#include "sine/io.hpp"

namespace sine {

Vector add_noise(std::span<const double> y, double delta, NoiseMode mode, std::uint64_t seed,
                 const InnerProductSpace& space) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw InputError("noise level must be finite and >= 0");
  if (y.size() != space.dim()) throw InputError("noise: vector length does not match its space");
  Vector out(y.begin(), y.end());
  if (delta == 0.0) return out;

  Vector direction(y.size(), 1.0);
  if (mode == NoiseMode::random_direction) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    for (auto& e : direction) e = normal(rng);
  }
  const double scale = delta / space.norm(direction);
  kernels::axpy(scale, direction, out);
  return out;
}

Vector midpoint_grid(std::size_t n) {
  Vector t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  return t;
}

Problem multiplication_problem(std::size_t n, double truth_exponent, double delta) {
  if (n < 2) throw InputError("multiplication problem needs n >= 2, got " + std::to_string(n));
  if (!(truth_exponent > 0.0)) throw InputError("truth exponent must be positive");
  if (!(delta >= 0.0)) throw InputError("noise level must be >= 0");

  const auto space = InnerProductSpace::uniform_quadrature(n);
  Vector t = midpoint_grid(n);
  Vector truth(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    truth[i] = std::pow(t[i], truth_exponent);
    y[i] = t[i] * truth[i];
  }
  // constant perturbation: y_i + delta, whose weighted norm is delta
  Vector y_delta = y;
  for (auto& e : y_delta) e += delta;

  Problem p{LinearOperator::diagonal(std::move(t), space), std::move(y_delta), delta, std::move(y), std::move(truth),
            SourceCondition{truth_exponent / 2.0, 1.0}};
  return p;
}

Vector SpectrumProfile::singular_values(std::size_t count) const {
  if (!(rate > 0.0)) throw InputError("spectrum decay rate must be positive");
  Vector s(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double kk = static_cast<double>(k);
    s[k] = kind == DecayKind::geometric ? std::pow(rate, kk) : std::pow(kk + 1.0, -rate);
  }
  return s;
}

namespace {

Eigen::MatrixXd random_orthonormal_columns(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd g(rows, cols);
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return qr.householderQ() * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
}

}  // namespace

Problem random_problem(const RandomProblemSpec& spec) {
  if (spec.cols < 1 || spec.rows < spec.cols) {
    throw InputError("random problem needs rows >= cols >= 1, got " + std::to_string(spec.rows) + "x" +
                     std::to_string(spec.cols));
  }
  if (!(spec.delta >= 0.0)) throw InputError("noise level must be >= 0");

  std::mt19937_64 rng(spec.seed);
  const Eigen::MatrixXd u = random_orthonormal_columns(spec.rows, spec.cols, rng);
  const Eigen::MatrixXd v = random_orthonormal_columns(spec.cols, spec.cols, rng);
  const Vector sigma = spec.profile.singular_values(spec.cols);
  const Eigen::MatrixXd a =
      u * Eigen::Map<const Eigen::VectorXd>(sigma.data(), static_cast<Eigen::Index>(sigma.size())).asDiagonal() *
      v.transpose();

  Vector data(spec.rows * spec.cols);
  for (std::size_t i = 0; i < spec.rows; ++i) {
    for (std::size_t j = 0; j < spec.cols; ++j) {
      data[i * spec.cols + j] = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }

  std::normal_distribution<double> normal;
  Vector truth(spec.cols);
  for (auto& e : truth) e = normal(rng);
  const double tn = std::sqrt(kernels::serial::dot(truth, truth));
  for (auto& e : truth) e /= tn;

  auto op = LinearOperator::dense(spec.rows, spec.cols, std::move(data));
  Vector y = op.apply(truth);
  Vector y_delta = add_noise(y, spec.delta, spec.noise, spec.seed ^ 0x9e3779b97f4a7c15ULL, op.range());
  return Problem{std::move(op), std::move(y_delta), spec.delta, std::move(y), std::move(truth), std::nullopt};
}

Problem load_problem(const ProblemFiles& files) {
  if (!(files.delta >= 0.0)) throw InputError("noise level must be >= 0");
  std::optional<LinearOperator> op;
  switch (files.format) {
    case OperatorFormat::matrix_market:
    case OperatorFormat::csv: {
      auto m = files.format == OperatorFormat::matrix_market ? io::read_matrix_market(files.operator_path)
                                                             : io::read_csv_matrix(files.operator_path);
      op = LinearOperator::dense(m.rows, m.cols, std::move(m.row_major));
      break;
    }
    case OperatorFormat::diagonal_csv:
      op = LinearOperator::diagonal(io::read_csv_vector(files.operator_path));
      break;
  }

  Vector y = io::read_csv_vector(files.data_path);
  if (y.size() != op->range_dim()) {
    throw InputError(files.data_path.string() + ": data has length " + std::to_string(y.size()) +
                     " but operator " + files.operator_path.string() + " is " + std::to_string(op->range_dim()) + "x" +
                     std::to_string(op->domain_dim()));
  }
  std::optional<Vector> truth;
  if (files.truth_path) {
    truth = io::read_csv_vector(*files.truth_path);
    if (truth->size() != op->domain_dim()) {
      throw InputError(files.truth_path->string() + ": truth has length " + std::to_string(truth->size()) +
                       " but operator domain has dimension " + std::to_string(op->domain_dim()));
    }
  }
  return Problem{std::move(*op), std::move(y), files.delta, std::nullopt, std::move(truth), std::nullopt};
}

OperatorFormat parse_operator_format(const std::string& name) {
  if (name == "mtx" || name == "matrix_market") return OperatorFormat::matrix_market;
  if (name == "csv") return OperatorFormat::csv;
  if (name == "diagonal" || name == "diagonal_csv") return OperatorFormat::diagonal_csv;
  throw InputError("unknown operator format '" + name + "' (expected mtx, csv or diagonal)");
}

NoiseMode parse_noise_mode(const std::string& name) {
  if (name == "constant") return NoiseMode::constant;
  if (name == "random" || name == "random_direction") return NoiseMode::random_direction;
  throw InputError("unknown noise mode '" + name + "' (expected constant or random)");
}

DecayKind parse_decay_kind(const std::string& name) {
  if (name == "geometric") return DecayKind::geometric;
  if (name == "algebraic") return DecayKind::algebraic;
  throw InputError("unknown decay profile '" + name + "' (expected geometric or algebraic)");
}

std::string to_string(NoiseMode mode) { return mode == NoiseMode::constant ? "constant" : "random"; }
std::string to_string(DecayKind kind) { return kind == DecayKind::geometric ? "geometric" : "algebraic"; }
std::string to_string(OperatorFormat format) {
  switch (format) {
    case OperatorFormat::matrix_market: return "mtx";
    case OperatorFormat::csv: return "csv";
    case OperatorFormat::diagonal_csv: return "diagonal";
  }
  return "mtx";
}

}  // namespace sine
