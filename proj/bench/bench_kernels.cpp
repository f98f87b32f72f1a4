#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "d2d/kernels.hpp"

namespace {

struct Fixture {
  std::vector<d2d::Point> devices;
  std::vector<d2d::Point> centroids;
  std::vector<d2d::PointCharge> device_charges;
  std::vector<d2d::PointCharge> centroid_charges;
  std::vector<std::vector<int>> attractors;

  Fixture(std::size_t n, std::size_t k) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> pos(0.0, 100.0);
    std::uniform_real_distribution<double> rel(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      devices.push_back({pos(rng), pos(rng)});
      device_charges.push_back({devices.back(), -rel(rng)});
    }
    for (std::size_t j = 0; j < k; ++j) {
      centroids.push_back({pos(rng), pos(rng)});
      centroid_charges.push_back({centroids.back(), 0.8 / 11.0});
    }
    std::vector<int> nearest(n);
    d2d::kernels::nearest_centroid_serial(devices, centroids, nearest);
    attractors.assign(k, {});
    for (std::size_t i = 0; i < n; ++i) attractors[static_cast<std::size_t>(nearest[i])].push_back(static_cast<int>(i));
  }

  d2d::kernels::ForceInputs inputs(bool all) const {
    return {centroid_charges, device_charges, &attractors, all, 1.0};
  }
};

const Fixture& fixture(std::size_t n) {
  static const Fixture small(1000, 100);
  static const Fixture large(4000, 400);
  return n <= 1000 ? small : large;
}

void BM_NearestSerial(benchmark::State& st) {
  const auto& f = fixture(static_cast<std::size_t>(st.range(0)));
  std::vector<int> out(f.devices.size());
  for (auto _ : st) {
    d2d::kernels::nearest_centroid_serial(f.devices, f.centroids, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_NearestParallel(benchmark::State& st) {
  const auto& f = fixture(static_cast<std::size_t>(st.range(0)));
  std::vector<int> out(f.devices.size());
  for (auto _ : st) {
    d2d::kernels::nearest_centroid_parallel(f.devices, f.centroids, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_ForcesSerial(benchmark::State& st) {
  const auto& f = fixture(static_cast<std::size_t>(st.range(0)));
  std::vector<d2d::ForceVector> out(f.centroids.size());
  const auto in = f.inputs(st.range(1) != 0);
  for (auto _ : st) {
    d2d::kernels::centroid_forces_serial(in, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_ForcesParallel(benchmark::State& st) {
  const auto& f = fixture(static_cast<std::size_t>(st.range(0)));
  std::vector<d2d::ForceVector> out(f.centroids.size());
  const auto in = f.inputs(st.range(1) != 0);
  for (auto _ : st) {
    d2d::kernels::centroid_forces_parallel(in, out);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_NearestSerial)->Arg(1000)->Arg(4000);
BENCHMARK(BM_NearestParallel)->Arg(1000)->Arg(4000);
BENCHMARK(BM_ForcesSerial)->Args({1000, 0})->Args({4000, 0})->Args({4000, 1});
BENCHMARK(BM_ForcesParallel)->Args({1000, 0})->Args({4000, 0})->Args({4000, 1});

BENCHMARK_MAIN();
