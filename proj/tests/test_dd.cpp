#include <gtest/gtest.h>

#include <algorithm>
#include <Eigen/Dense>
#include <functional>
#include <random>

#include "instances.hpp"
#include "molp/dd.hpp"
#include "molp/errors.hpp"
#include "reference.hpp"

using namespace molp;

namespace {

DoubleDescription square() {
  return DoubleDescription::from_lists(
      2, {HomPoint::finite({0, 0}), HomPoint::finite({1, 0}), HomPoint::finite({0, 1}), HomPoint::finite({1, 1})},
      {Halfspace::make({1, 0}, 0), Halfspace::make({0, 1}, 0), Halfspace::make({-1, 0}, -1),
       Halfspace::make({0, -1}, -1)});
}

DoubleDescription cube(EngineConfig cfg = {}) {
  std::vector<HomPoint> v;
  for (int i = 0; i < 8; ++i) v.push_back(HomPoint::finite({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)}));
  std::vector<Halfspace> f;
  for (int k = 0; k < 3; ++k) {
    Vector e(3, 0.0);
    e[static_cast<std::size_t>(k)] = 1.0;
    f.push_back(Halfspace::make(e, 0));
    e[static_cast<std::size_t>(k)] = -1.0;
    f.push_back(Halfspace::make(e, -1));
  }
  return DoubleDescription::from_lists(3, v, f, {}, cfg);
}

std::vector<Vector> live_points(const DoubleDescription& dd) {
  std::vector<Vector> out;
  for (std::size_t v : dd.live_vertices()) out.emplace_back(dd.vertex(v).coords().begin(), dd.vertex(v).coords().end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Vector> live_facet_rows(const DoubleDescription& dd) {
  std::vector<Vector> out;
  for (std::size_t f : dd.live_facets()) {
    if (dd.facet(f).is_ideal()) continue;
    out.push_back(molp::testing::facet_row(dd.facet(f)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Partition, SquareExamples) {
  const auto dd = square();
  auto p = dd.partition_vertices(Halfspace::make({1, 1}, 0.5));
  EXPECT_EQ(p.negative, (std::vector<std::size_t>{0}));
  EXPECT_EQ(p.positive, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_TRUE(p.on.empty());

  p = dd.partition_vertices(Halfspace::make({1, 0}, 1));
  EXPECT_EQ(p.on, (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(p.negative, (std::vector<std::size_t>{0, 2}));
  EXPECT_TRUE(p.positive.empty());

  p = dd.partition_vertices(Halfspace::make({1, 1}, -1));
  EXPECT_EQ(p.positive.size(), 4u);
}

TEST(EdgeRidge, CubeExamples) {
  const auto dd = cube();
  EXPECT_TRUE(dd.is_edge(0, 1));   // (0,0,0)-(1,0,0)
  EXPECT_FALSE(dd.is_edge(0, 3));  // face diagonal to (1,1,0)
  EXPECT_FALSE(dd.is_edge(0, 7));  // space diagonal
  EXPECT_TRUE(dd.is_ridge(0, 2));  // x=0 and y=0
  EXPECT_FALSE(dd.is_ridge(0, 1)); // x=0 and x=1
}

TEST(Cut, SquareCorner) {
  auto dd = square();
  const CutReport r = dd.cut_with_halfspace(Halfspace::make({1, 1}, 0.5));
  EXPECT_EQ(r.removed_vertices, 1u);
  EXPECT_EQ(r.new_vertices.size(), 2u);
  EXPECT_EQ(dd.live_facet_count(), 5u);
  const auto pts = live_points(dd);
  EXPECT_EQ(pts, (std::vector<Vector>{{0, 0.5}, {0, 1}, {0.5, 0}, {1, 0}, {1, 1}}));
  EXPECT_TRUE(dd.check_consistency().empty());
}

TEST(Cut, CubeCorner) {
  auto dd = cube();
  const CutReport r = dd.cut_with_halfspace(Halfspace::make({1, 1, 1}, 0.5));
  EXPECT_EQ(r.removed_vertices, 1u);
  EXPECT_EQ(r.new_vertices.size(), 3u);
  EXPECT_TRUE(dd.check_consistency().empty());
}

TEST(Cut, InvalidCuts) {
  auto dd = square();
  EXPECT_THROW(dd.cut_with_halfspace(Halfspace::make({1, 1}, -1)), InvalidCut);
  EXPECT_THROW(dd.cut_with_halfspace(Halfspace::make({1, 1}, 10)), InvalidCut);
}

TEST(Cut, FinalVertexCannotBeRemoved) {
  auto dd = square();
  dd.mark_vertex_final(0);
  EXPECT_THROW(dd.cut_with_halfspace(Halfspace::make({1, 1}, 0.5)), NumericalError);
}

TEST(Cut, FinalFlagsSurvive) {
  auto dd = square();
  dd.mark_vertex_final(3);
  dd.mark_facet_final(0);
  dd.cut_with_halfspace(Halfspace::make({1, 1}, 0.5));
  EXPECT_TRUE(dd.vertex_final(3));
  EXPECT_TRUE(dd.facet_final(0));
}

TEST(AddVertex, TriangleToSquare) {
  auto dd = DoubleDescription::from_lists(
      2, {HomPoint::finite({0, 0}), HomPoint::finite({1, 0}), HomPoint::finite({0, 1})},
      {Halfspace::make({1, 0}, 0), Halfspace::make({0, 1}, 0), Halfspace::make({-1, -1}, -1)});
  const AddReport r = dd.add_vertex(HomPoint::finite({1, 1}));
  EXPECT_EQ(r.removed_facets, 1u);
  EXPECT_EQ(r.new_facets.size(), 2u);
  EXPECT_EQ(dd.live_facet_count(), 4u);
  EXPECT_EQ(molp::testing::match_lists(live_facet_rows(dd), {{-1, 0, -1}, {0, -1, -1}, {0, 1, 0}, {1, 0, 0}}, 1e-12, "facet"),
            "");
  EXPECT_TRUE(dd.check_consistency().empty());
}

TEST(AddVertex, InteriorPointRejected) {
  auto dd = square();
  EXPECT_THROW(dd.add_vertex(HomPoint::finite({0.5, 0.5})), InvalidAdd);
}

TEST(NewFacet, Examples) {
  const Halfspace h = new_facet_through(HomPoint::finite({1, 1}), std::vector<HomPoint>{HomPoint::finite({1, 0})},
                                        HomPoint::finite({0, 0}));
  EXPECT_NEAR(h.normal()[0], -1.0, 1e-12);
  EXPECT_NEAR(h.normal()[1], 0.0, 1e-12);
  EXPECT_NEAR(h.intercept(), -1.0, 1e-12);

  const Halfspace s = new_facet_through(HomPoint::finite({0, 0, 1}),
                                        std::vector<HomPoint>{HomPoint::finite({1, 0, 0}), HomPoint::finite({0, 1, 0})},
                                        HomPoint::finite({0, 0, 0}));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(s.normal()[i], -1.0, 1e-12);
  EXPECT_NEAR(s.intercept(), -1.0, 1e-12);

  EXPECT_THROW(new_facet_through(HomPoint::finite({0, 0, 0}),
                                 std::vector<HomPoint>{HomPoint::finite({1, 1, 1}), HomPoint::finite({2, 2, 2})},
                                 HomPoint::finite({1, 0, 0})),
               DegenerateSpan);
}

TEST(Orthant, InitialSimplex) {
  const auto dd = DoubleDescription::orthant_simplex(std::vector<double>{1.0, 2.0, 3.0});
  EXPECT_EQ(dd.live_vertex_count(), 4u);
  EXPECT_EQ(dd.live_facet_count(), 4u);
  EXPECT_TRUE(dd.facet(0).is_ideal());
  EXPECT_TRUE(dd.check_consistency().empty());
  // Apex to each ideal vertex is an edge (a ray); ideal vertices are pairwise adjacent.
  for (std::size_t v = 1; v < 4; ++v) EXPECT_TRUE(dd.is_edge(0, v));
  EXPECT_TRUE(dd.is_edge(1, 2));
}

TEST(Compact, RemovesRetiredSlotsOnly) {
  EngineConfig cfg;
  cfg.compact_min_spare = 1000;  // never automatically
  auto dd = cube(cfg);
  dd.cut_with_halfspace(Halfspace::make({1, 1, 1}, 0.5));
  dd.cut_with_halfspace(Halfspace::make({-1, -1, -1}, -2.5));
  EXPECT_EQ(dd.spare_vertex_count(), 0u);  // retired slots were reused
  dd.cut_with_halfspace(Halfspace::make({1, 0, 0}, 0.75));
  ASSERT_GT(dd.spare_vertex_count(), 0u);
  const auto before_pts = live_points(dd);
  const auto before_facets = live_facet_rows(dd);
  const std::size_t live = dd.live_vertex_count();
  dd.compact();
  EXPECT_EQ(dd.vertex_slots(), live);
  EXPECT_EQ(dd.spare_vertex_count(), 0u);
  EXPECT_EQ(live_points(dd), before_pts);
  EXPECT_EQ(live_facet_rows(dd), before_facets);
  EXPECT_TRUE(dd.check_consistency().empty());
  const std::size_t slots = dd.vertex_slots();
  dd.compact();
  EXPECT_EQ(dd.vertex_slots(), slots);
}

TEST(Compact, ForcedEveryStepMatchesNever) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    EngineConfig always, never;
    always.compact_min_spare = 0;
    always.compact_spare_fraction = 0.0;
    never.compact_min_spare = 1u << 30;
    auto a = cube(always);
    auto b = cube(never);
    for (int step = 0; step < 12; ++step) {
      Vector n(3);
      for (auto& x : n) x = molp::testing::uniform(rng, -1, 1);
      const Halfspace h = Halfspace::make(n, 0.0);
      // Move the plane through a random interior point.
      Vector c(3);
      for (auto& x : c) x = molp::testing::uniform(rng, 0.2, 0.8);
      const Halfspace cut = Halfspace::make(Vector(h.normal().begin(), h.normal().end()), dot(h.normal(), c));
      const auto part = a.partition_vertices(cut);
      if (part.negative.empty() || part.positive.empty()) continue;
      a.cut_with_halfspace(cut);
      b.cut_with_halfspace(cut);
    }
    EXPECT_EQ(live_points(a), live_points(b));
    EXPECT_EQ(live_facet_rows(a), live_facet_rows(b));
    EXPECT_TRUE(a.check_consistency().empty());
    EXPECT_TRUE(b.check_consistency().empty());
  }
}

// Random cuts of a random hull; the result must agree with brute force.
TEST(Cut, RandomCutsMatchBruteForce) {
  std::mt19937_64 rng(17);
  int done = 0;
  while (done < 40) {
    const std::size_t p = static_cast<std::size_t>(molp::testing::uniform_int(rng, 2, 4));
    auto pts = molp::testing::random_points(rng, 12, p, true);
    reference::BruteHull hull;
    try {
      hull = reference::brute_hull(pts);
    } catch (const DegenerateInput&) {
      continue;
    }
    std::vector<HomPoint> verts;
    for (const auto& y : hull.vertices) verts.push_back(HomPoint::finite(y));
    auto dd = DoubleDescription::from_lists(p, verts, hull.facets);
    std::vector<Halfspace> facets = hull.facets;
    for (int k = 0; k < 3; ++k) {
      Vector n(p);
      for (auto& x : n) x = molp::testing::uniform(rng, -1, 1);
      const Halfspace cut = Halfspace::make(n, molp::testing::uniform(rng, -0.5, 0.3));
      const auto part = dd.partition_vertices(cut);
      if (part.negative.empty() || part.positive.empty()) continue;
      dd.cut_with_halfspace(cut);
      facets.push_back(cut);
      ASSERT_TRUE(dd.check_consistency().empty());
    }
    // Brute force: every vertex of the facet system.
    std::vector<Vector> want;
    // Vertices of the intersection are the rank-p points of every p-subset of facets.
    std::vector<std::size_t> idx(p);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
      if (depth == p) {
        Eigen::MatrixXd A(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
        Eigen::VectorXd b(static_cast<Eigen::Index>(p));
        for (std::size_t r = 0; r < p; ++r) {
          for (std::size_t c = 0; c < p; ++c) A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = facets[idx[r]].normal()[c];
          b(static_cast<Eigen::Index>(r)) = facets[idx[r]].intercept();
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
        if (!lu.isInvertible()) return;
        const Eigen::VectorXd y = lu.solve(b);
        const HomPoint pt = HomPoint::finite(Vector(y.data(), y.data() + y.size()));
        std::vector<Eigen::VectorXd> active;
        for (const auto& f : facets) {
          const Side s = side_of(pt, f);
          if (s == Side::Negative) return;
          if (s == Side::On) active.push_back(Eigen::Map<const Eigen::VectorXd>(f.normal().data(), static_cast<Eigen::Index>(p)));
        }
        // Nearly parallel systems yield spurious points on lower faces.
        Eigen::MatrixXd N(static_cast<Eigen::Index>(active.size()), static_cast<Eigen::Index>(p));
        for (std::size_t r = 0; r < active.size(); ++r) N.row(static_cast<Eigen::Index>(r)) = active[r].transpose();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(N);
        if (svd.singularValues()(static_cast<Eigen::Index>(p) - 1) <= 1e-9 * svd.singularValues()(0)) return;
        Vector v(y.data(), y.data() + y.size());
        for (const auto& w : want) {
          if (molp::testing::close_vec(w, v, 1e-7)) return;
        }
        want.push_back(v);
        return;
      }
      for (std::size_t i = start; i < facets.size(); ++i) {
        idx[depth] = i;
        rec(i + 1, depth + 1);
      }
    };
    rec(0, 0);
    std::vector<Vector> got = live_points(dd);
    EXPECT_EQ(molp::testing::match_lists(got, want, 1e-7, "vertex"), "");
    ++done;
  }
}

// Point-by-point hull construction from a simplex; facets must equal brute force.
TEST(AddVertex, IncrementalHullMatchesBruteForce) {
  std::mt19937_64 rng(23);
  int done = 0;
  while (done < 30) {
    const std::size_t p = static_cast<std::size_t>(molp::testing::uniform_int(rng, 2, 4));
    auto pts = molp::testing::random_points(rng, 14, p, done % 2 == 0);
    reference::BruteHull hull;
    try {
      hull = reference::brute_hull(pts);
    } catch (const DegenerateInput&) {
      continue;
    }
    // Start from the first p+1 points if they form a simplex.
    std::vector<HomPoint> start;
    for (std::size_t i = 0; i <= p; ++i) start.push_back(HomPoint::finite(pts[i]));
    if (homogeneous_rank(start) != p + 1) continue;
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
    auto dd = DoubleDescription::from_lists(p, start, fs);
    for (std::size_t i = p + 1; i < pts.size(); ++i) {
      const HomPoint pt = HomPoint::finite(pts[i]);
      if (dd.partition_facets(pt).negative.empty()) continue;
      dd.add_vertex(pt);
      ASSERT_TRUE(dd.check_consistency().empty());
    }
    std::vector<Vector> want;
    for (const auto& f : hull.facets) want.push_back(molp::testing::facet_row(f));
    EXPECT_EQ(molp::testing::match_lists(live_facet_rows(dd), want, 1e-7, "facet"), "");
    ++done;
  }
}

TEST(PairOrder, ParallelAndSerialKernelsAgree) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    EngineConfig par, ser;
    par.threads = 4;
    par.kernel = PairKernel::Parallel;
    ser.kernel = PairKernel::Serial;
    const std::size_t p = 4;
    auto pts = molp::testing::random_points(rng, 20, p, true);
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
    auto a = DoubleDescription::from_lists(p, start, fs, {}, par);
    auto b = DoubleDescription::from_lists(p, start, fs, {}, ser);
    for (std::size_t i = p + 1; i < pts.size(); ++i) {
      const HomPoint pt = HomPoint::finite(pts[i]);
      if (a.partition_facets(pt).negative.empty()) continue;
      const AddReport ra = a.add_vertex(pt);
      const AddReport rb = b.add_vertex(pt);
      ASSERT_EQ(ra.new_facets, rb.new_facets);
    }
    ASSERT_EQ(a.facet_slots(), b.facet_slots());
    for (std::size_t f = 0; f < a.facet_slots(); ++f) {
      ASSERT_EQ(a.facet_live(f), b.facet_live(f));
      if (a.facet_live(f)) {
        EXPECT_EQ(a.facet(f), b.facet(f));
        EXPECT_EQ(a.vertices_of(f), b.vertices_of(f));
      }
    }
  }
}
