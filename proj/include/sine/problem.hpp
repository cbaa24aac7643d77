#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "sine/operator.hpp"

namespace sine {

/// Source-set metadata: truth = (T*T)^mu w with ||w|| <= rho. Stored, not enforced.
struct SourceCondition {
  double mu = 0.0;
  double rho = 1.0;
};

/// Linear inverse problem T x = y_delta with ||y_delta - y|| = delta in the range norm.
struct Problem {
  LinearOperator op;
  Vector y_delta;
  double delta = 0.0;
  std::optional<Vector> y_exact;
  std::optional<Vector> truth;
  std::optional<SourceCondition> source;
};

enum class NoiseMode { constant, random_direction };

/// Adds a perturbation of weighted norm exactly `delta`: a constant vector
/// (constant mode) or a seeded Gaussian direction (random mode).
Vector add_noise(std::span<const double> y, double delta, NoiseMode mode, std::uint64_t seed,
                 const InnerProductSpace& space);

/// Multiplication operator (Tf)(t) = t f(t) on L2(0,1), midpoint grid
/// t_i = (i - 1/2)/n with weights 1/n, truth t^exponent and constant noise.
Problem multiplication_problem(std::size_t n, double truth_exponent, double delta);

/// Midpoint grid t_i = (i - 1/2)/n.
Vector midpoint_grid(std::size_t n);

enum class DecayKind { geometric, algebraic };

/// Prescribed singular values: geometric rate^k or algebraic (k+1)^-rate, k = 0..cols-1.
struct SpectrumProfile {
  DecayKind kind = DecayKind::geometric;
  double rate = 0.5;

  Vector singular_values(std::size_t count) const;
};

struct RandomProblemSpec {
  std::size_t rows = 30;
  std::size_t cols = 20;
  SpectrumProfile profile{};
  std::uint64_t seed = 0;
  double delta = 0.0;
  NoiseMode noise = NoiseMode::random_direction;
};

/// Dense U diag(sigma) V^T with Haar-like random U, V; unit-norm random truth.
/// Deterministic in the seed.
Problem random_problem(const RandomProblemSpec& spec);

enum class OperatorFormat { matrix_market, csv, diagonal_csv };

struct ProblemFiles {
  std::filesystem::path operator_path;
  OperatorFormat format = OperatorFormat::matrix_market;
  std::filesystem::path data_path;
  std::optional<std::filesystem::path> truth_path;
  double delta = 0.0;
};

Problem load_problem(const ProblemFiles& files);

OperatorFormat parse_operator_format(const std::string& name);
NoiseMode parse_noise_mode(const std::string& name);
DecayKind parse_decay_kind(const std::string& name);
std::string to_string(NoiseMode mode);
std::string to_string(DecayKind kind);
std::string to_string(OperatorFormat format);

}  // namespace sine
