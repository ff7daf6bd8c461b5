#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "btlab/kernels.hpp"

using namespace btlab;

namespace {
std::vector<double> random_vec(std::mt19937& rng, std::size_t n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}
}  // namespace

TEST_CASE("scalar reference matches simple sums") {
  kern::force_backend(kern::Backend::scalar);
  std::vector<double> a{1, 2, 3, 4, 5}, b{5, 4, 3, 2, 1};
  CHECK(kern::dot(a.data(), b.data(), 5) == doctest::Approx(35.0));
  CHECK(kern::sum(a.data(), 5) == doctest::Approx(15.0));
  std::vector<double> c{2, 2, 2, 2, 2};
  CHECK(kern::dot3(a.data(), b.data(), c.data(), 5) == doctest::Approx(70.0));
}

TEST_CASE("compensated accumulation survives cancellation") {
  kern::force_backend(kern::Backend::scalar);
  // large head, tiny tail, then the negated head: naive summation loses the tail
  std::vector<double> v;
  v.push_back(1e16);
  for (int i = 0; i < 1000; ++i) v.push_back(1e-3);
  v.push_back(-1e16);
  double s = kern::sum(v.data(), v.size());
  CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("simd variants agree with the scalar reference") {
  auto detected = kern::active_backend();
  if (detected == kern::Backend::scalar) {
    MESSAGE("no simd backend on this host, equivalence suite skipped");
    return;
  }
  std::mt19937 rng(20240601);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 1 + (rng() % 2048);
    double scale = std::pow(10.0, int(rng() % 12) - 6);
    auto a = random_vec(rng, n, scale);
    auto b = random_vec(rng, n, 1.0);
    auto c = random_vec(rng, n, 1.0);

    kern::force_backend(kern::Backend::scalar);
    double d0 = kern::dot(a.data(), b.data(), n);
    double t0 = kern::dot3(a.data(), b.data(), c.data(), n);
    double s0 = kern::sum(a.data(), n);

    kern::force_backend(detected);
    double d1 = kern::dot(a.data(), b.data(), n);
    double t1 = kern::dot3(a.data(), b.data(), c.data(), n);
    double s1 = kern::sum(a.data(), n);

    double mag = 0;
    for (std::size_t i = 0; i < n; ++i) mag += std::abs(a[i] * b[i]);
    CHECK(std::abs(d1 - d0) <= 1e-12 * (1.0 + mag));
    CHECK(std::abs(t1 - t0) <= 1e-12 * (1.0 + mag));
    CHECK(std::abs(s1 - s0) <= 1e-12 * (1.0 + mag));
  }
  kern::force_backend(detected);
}

TEST_CASE("deterministic for fixed backend") {
  std::mt19937 rng(7);
  auto a = random_vec(rng, 777, 1.0);
  auto b = random_vec(rng, 777, 1.0);
  double first = kern::dot(a.data(), b.data(), a.size());
  for (int i = 0; i < 10; ++i)
    CHECK(kern::dot(a.data(), b.data(), a.size()) == first);
}
