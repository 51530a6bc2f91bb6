// Serial vs OpenMP pair scanning on random hulls.
//
//     bench_pair_kernels --benchmark_filter=Edge

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "molp/dd.hpp"
#include "molp/pair_kernels.hpp"

namespace {

using namespace molp;

std::vector<double> sphere_point(std::mt19937_64& rng, std::size_t p) {
  std::normal_distribution<double> gauss;
  std::vector<double> y(p);
  double norm = 0.0;
  for (auto& v : y) {
    v = gauss(rng);
    norm += v * v;
  }
  for (auto& v : y) v /= std::sqrt(norm);
  return y;
}

// Hull of `count` points on the unit sphere, built point by point.
DoubleDescription sphere_hull(std::size_t p, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<HomPoint> start;
  for (std::size_t i = 0; i <= p; ++i) start.push_back(HomPoint::finite(sphere_point(rng, p)));
  std::vector<Halfspace> facets;
  for (std::size_t skip = 0; skip <= p; ++skip) {
    std::vector<HomPoint> face;
    for (std::size_t i = 0; i <= p; ++i) {
      if (i != skip) face.push_back(start[i]);
    }
    Halfspace h = hyperplane_through(face);
    if (evaluate(start[skip], h) < 0) h = h.flipped();
    facets.push_back(h);
  }
  EngineConfig cfg;
  cfg.threads = 8;
  auto dd = DoubleDescription::from_lists(p, start, facets, {}, cfg);
  for (std::size_t i = p + 1; i < count; ++i) {
    const HomPoint pt = HomPoint::finite(sphere_point(rng, p));
    if (dd.partition_facets(pt).negative.empty()) continue;
    dd.add_vertex(pt);
  }
  dd.compact();
  return dd;
}

EngineConfig config(PairKernel kernel, int threads) {
  EngineConfig cfg;
  cfg.kernel = kernel;
  cfg.threads = threads;
  return cfg;
}

void run_edges(benchmark::State& state, PairKernel kernel) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const auto dd = sphere_hull(p, static_cast<std::size_t>(state.range(1)), 7);
  const Halfspace cut = Halfspace::make(std::vector<double>(p, 1.0), 0.0);
  const Partition part = dd.partition_vertices(cut);
  const EngineConfig cfg = config(kernel, static_cast<int>(state.range(2)));
  for (auto _ : state) benchmark::DoNotOptimize(scan_edges(dd, part.positive, part.negative, cut, cfg));
  state.counters["pairs"] = static_cast<double>(part.positive.size() * part.negative.size());
}

void run_ridges(benchmark::State& state, PairKernel kernel) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const auto dd = sphere_hull(p, static_cast<std::size_t>(state.range(1)), 11);
  const HomPoint apex = HomPoint::finite(std::vector<double>(p, 0.8));
  const Partition part = dd.partition_facets(apex);
  const EngineConfig cfg = config(kernel, static_cast<int>(state.range(2)));
  for (auto _ : state) benchmark::DoNotOptimize(scan_ridges(dd, part.positive, part.negative, apex, cfg));
  state.counters["pairs"] = static_cast<double>(part.positive.size() * part.negative.size());
}

void BM_EdgeSerial(benchmark::State& s) { run_edges(s, PairKernel::Serial); }
void BM_EdgeParallel(benchmark::State& s) { run_edges(s, PairKernel::Parallel); }
void BM_RidgeSerial(benchmark::State& s) { run_ridges(s, PairKernel::Serial); }
void BM_RidgeParallel(benchmark::State& s) { run_ridges(s, PairKernel::Parallel); }

void sizes(benchmark::internal::Benchmark* b, bool threaded) {
  for (long p : {3, 4, 5}) {
    for (long n : {60, 150}) {
      if (threaded) {
        for (long t : {1, 2, 4, 8}) b->Args({p, n, t});
      } else {
        b->Args({p, n, 1});
      }
    }
  }
  b->ArgNames({"p", "points", "threads"})->Unit(benchmark::kMicrosecond)->UseRealTime();
}

}  // namespace

BENCHMARK(BM_EdgeSerial)->Apply([](auto* b) { sizes(b, false); });
BENCHMARK(BM_EdgeParallel)->Apply([](auto* b) { sizes(b, true); });
BENCHMARK(BM_RidgeSerial)->Apply([](auto* b) { sizes(b, false); });
BENCHMARK(BM_RidgeParallel)->Apply([](auto* b) { sizes(b, true); });

BENCHMARK_MAIN();
