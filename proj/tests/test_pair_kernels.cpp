#include <gtest/gtest.h>

#include <random>

#include "instances.hpp"
#include "molp/pair_kernels.hpp"

using namespace molp;

namespace {

DoubleDescription random_simplex_hull(std::mt19937_64& rng, std::size_t p, std::size_t count) {
  const auto pts = molp::testing::random_points(rng, count, p, true);
  std::vector<HomPoint> start;
  for (std::size_t i = 0; i <= p; ++i) start.push_back(HomPoint::finite(pts[i]));
  std::vector<Halfspace> fs;
  for (std::size_t skip = 0; skip <= p; ++skip) {
    std::vector<HomPoint> face;
    for (std::size_t i = 0; i <= p; ++i) {
      if (i != skip) face.push_back(start[i]);
    }
    Halfspace h = hyperplane_through(face);
    if (evaluate(start[skip], h) < 0) h = h.flipped();
    fs.push_back(h);
  }
  EngineConfig cfg;
  cfg.kernel = PairKernel::Serial;
  auto dd = DoubleDescription::from_lists(p, start, fs, {}, cfg);
  for (std::size_t i = p + 1; i < pts.size(); ++i) {
    const HomPoint pt = HomPoint::finite(pts[i]);
    if (dd.partition_facets(pt).negative.empty()) continue;
    dd.add_vertex(pt);
  }
  return dd;
}

Halfspace random_cut(std::mt19937_64& rng, std::size_t p) {
  Vector n(p);
  for (auto& x : n) x = molp::testing::uniform(rng, -1, 1);
  return Halfspace::make(n, molp::testing::uniform(rng, -0.3, 0.3));
}

}  // namespace

TEST(PairKernels, EdgeScanIdenticalAcrossThreadCounts) {
  std::mt19937_64 rng(41);
  int done = 0;
  while (done < 15) {
    const auto dd = random_simplex_hull(rng, 4, 40);
    const Halfspace cut = random_cut(rng, 4);
    const auto part = dd.partition_vertices(cut);
    if (part.negative.empty() || part.positive.empty()) continue;
    EngineConfig serial;
    serial.kernel = PairKernel::Serial;
    const auto want = scan_edges(dd, part.positive, part.negative, cut, serial);
    ASSERT_FALSE(want.empty());
    for (int threads : {1, 2, 8}) {
      EngineConfig par;
      par.kernel = PairKernel::Parallel;
      par.threads = threads;
      const auto got = scan_edges(dd, part.positive, part.negative, cut, par);
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t k = 0; k < got.size(); ++k) {
        EXPECT_EQ(got[k].plus, want[k].plus);
        EXPECT_EQ(got[k].minus, want[k].minus);
        EXPECT_EQ(got[k].point, want[k].point);
        EXPECT_EQ(got[k].facets, want[k].facets);
      }
    }
    ++done;
  }
}

TEST(PairKernels, RidgeScanIdenticalAcrossThreadCounts) {
  std::mt19937_64 rng(43);
  int done = 0;
  while (done < 15) {
    const auto dd = random_simplex_hull(rng, 4, 40);
    Vector y(4);
    for (auto& x : y) x = molp::testing::uniform(rng, -1.5, 1.5);
    const HomPoint apex = HomPoint::finite(y);
    const auto part = dd.partition_facets(apex);
    if (part.negative.empty() || part.positive.empty()) continue;
    EngineConfig serial;
    serial.kernel = PairKernel::Serial;
    const auto want = scan_ridges(dd, part.positive, part.negative, apex, serial);
    ASSERT_FALSE(want.empty());
    for (int threads : {1, 2, 8}) {
      EngineConfig par;
      par.kernel = PairKernel::Parallel;
      par.threads = threads;
      const auto got = scan_ridges(dd, part.positive, part.negative, apex, par);
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t k = 0; k < got.size(); ++k) {
        EXPECT_EQ(got[k].plus, want[k].plus);
        EXPECT_EQ(got[k].minus, want[k].minus);
        EXPECT_EQ(got[k].facet, want[k].facet);
        EXPECT_EQ(got[k].vertices, want[k].vertices);
      }
    }
    ++done;
  }
}

TEST(PairKernels, ResultsSortedByPair) {
  std::mt19937_64 rng(47);
  const auto dd = random_simplex_hull(rng, 3, 30);
  const Halfspace cut = Halfspace::make({1, 0, 0}, 0.0);
  const auto part = dd.partition_vertices(cut);
  ASSERT_FALSE(part.negative.empty());
  ASSERT_FALSE(part.positive.empty());
  EngineConfig par;
  par.threads = 8;
  const auto hits = scan_edges(dd, part.positive, part.negative, cut, par);
  for (std::size_t k = 1; k < hits.size(); ++k) {
    EXPECT_TRUE(std::make_pair(hits[k - 1].plus, hits[k - 1].minus) < std::make_pair(hits[k].plus, hits[k].minus));
  }
  for (const auto& h : hits) EXPECT_EQ(side_of(h.point, cut), Side::On);
}
