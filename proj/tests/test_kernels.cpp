#include <doctest.h>
#include <omp.h>

#include <random>
#include <vector>

#include "sine/kernels.hpp"

namespace k = sine::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& e : v) e = u(rng);
  return v;
}

std::vector<double> positive_vector(std::size_t n, std::uint64_t seed) {
  auto v = random_vector(n, seed);
  for (auto& e : v) e = 1.5 + e;
  return v;
}

}  // namespace

TEST_CASE("parallel dot agrees with the serial reference") {
  for (std::size_t n : {0, 1, 7, 511, 512, 513, 10000, 100003}) {
    const auto x = random_vector(n, 1), y = random_vector(n, 2), w = positive_vector(n, 3);
    const double scale = std::max(1.0, k::serial::dot(x, x) + k::serial::dot(y, y));
    CHECK(std::abs(k::parallel::dot(x, y) - k::serial::dot(x, y)) <= 1e-13 * scale);
    CHECK(std::abs(k::parallel::dot(x, y, w) - k::serial::dot(x, y, w)) <= 1e-13 * 3 * scale);
  }
}

TEST_CASE("parallel dot is independent of the thread count") {
  const auto x = random_vector(200001, 4), y = random_vector(200001, 5);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double one = k::parallel::dot(x, y);
  omp_set_num_threads(4);
  const double four = k::parallel::dot(x, y);
  omp_set_num_threads(saved);
  CHECK(one == four);
}

TEST_CASE("unit weights give bit-identical dot products") {
  const auto x = random_vector(20000, 6), y = random_vector(20000, 7);
  const std::vector<double> ones(x.size(), 1.0);
  CHECK(k::dot(x, y, ones) == k::dot(x, y));
}

TEST_CASE("matrix-vector kernels are bit-identical to the serial loops") {
  for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{3, 2}, {150, 120}, {97, 301}}) {
    const auto a = random_vector(rows * cols, 8), x = random_vector(cols, 9), y = random_vector(rows, 10);
    const k::MatrixView view{a, rows, cols};
    std::vector<double> s1(rows), p1(rows), s2(cols), p2(cols);
    k::serial::gemv(view, x, s1);
    k::parallel::gemv(view, x, p1);
    CHECK(s1 == p1);
    k::serial::gemv_t(view, y, s2);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(3);
    k::parallel::gemv_t(view, y, p2);
    omp_set_num_threads(saved);
    CHECK(s2 == p2);
  }
}

TEST_CASE("axpy, xpby and hadamard") {
  std::vector<double> y{1, 2, 3};
  k::axpy(2.0, std::vector<double>{1, 1, 1}, y);
  CHECK(y == std::vector<double>{3, 4, 5});
  k::xpby(std::vector<double>{1, 0, -1}, -1.0, y);
  CHECK(y == std::vector<double>{-2, -4, -6});
  std::vector<double> out(3);
  k::hadamard(std::vector<double>{1, 2, 3}, std::vector<double>{1, 1, 1}, out);
  CHECK(out == std::vector<double>{1, 2, 3});

  const auto big = random_vector(50000, 11), d = random_vector(50000, 12);
  std::vector<double> ys = random_vector(50000, 13), yp = ys, hs(50000), hp(50000);
  k::serial::axpy(0.3, big, ys);
  k::parallel::axpy(0.3, big, yp);
  CHECK(ys == yp);
  k::serial::hadamard(d, big, hs);
  k::parallel::hadamard(d, big, hp);
  CHECK(hs == hp);
}
