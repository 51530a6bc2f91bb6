#include "molp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

#include "molp/errors.hpp"
#include "molp/simplex.hpp"

namespace molp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void note_sizes(const DoubleDescription& dd, RunStats& stats) {
  stats.max_intermediate_vertices = std::max(stats.max_intermediate_vertices, dd.live_vertex_count());
  stats.max_intermediate_facets = std::max(stats.max_intermediate_facets, dd.live_facet_count());
}

// Element-specific parts of the two loops.
struct OuterSide {
  using Answer = Halfspace;
  const PointOracle& oracle;

  std::vector<std::size_t> nonfinal(const DoubleDescription& dd) const {
    std::vector<std::size_t> out;
    for (std::size_t v : dd.live_vertices()) {
      if (!dd.vertex_final(v)) out.push_back(v);
    }
    std::sort(out.begin(), out.end(), [&](auto a, auto b) { return dd.vertex_serial(a) < dd.vertex_serial(b); });
    return out;
  }
  std::uint64_t serial(const DoubleDescription& dd, std::size_t s) const { return dd.vertex_serial(s); }
  std::size_t find(const DoubleDescription& dd, std::uint64_t serial) const { return dd.find_vertex_by_serial(serial); }
  void mark_final(DoubleDescription& dd, std::size_t s) const { dd.mark_vertex_final(s); }
  std::optional<Answer> query(const DoubleDescription& dd, std::size_t s) const {
    auto ans = oracle(dd.vertex(s));
    // Only a strict separation counts; anything else is an inside answer.
    if (ans && side_of(dd.vertex(s), *ans, dd.tolerance()) != Side::Negative) ans.reset();
    return ans;
  }
  std::size_t score(const DoubleDescription& dd, const Answer& a) const {
    return dd.partition_vertices(a).negative.size();
  }
  void apply(DoubleDescription& dd, const Answer& a) const { dd.cut_with_halfspace(a); }
};

struct InnerSide {
  using Answer = HomPoint;
  const PlaneOracle& oracle;

  std::vector<std::size_t> nonfinal(const DoubleDescription& dd) const {
    std::vector<std::size_t> out;
    for (std::size_t f : dd.live_facets()) {
      if (!dd.facet_final(f)) out.push_back(f);
    }
    std::sort(out.begin(), out.end(), [&](auto a, auto b) { return dd.facet_serial(a) < dd.facet_serial(b); });
    return out;
  }
  std::uint64_t serial(const DoubleDescription& dd, std::size_t s) const { return dd.facet_serial(s); }
  std::size_t find(const DoubleDescription& dd, std::uint64_t serial) const { return dd.find_facet_by_serial(serial); }
  void mark_final(DoubleDescription& dd, std::size_t s) const { dd.mark_facet_final(s); }
  std::optional<Answer> query(const DoubleDescription& dd, std::size_t s) const {
    auto ans = oracle(dd.facet(s));
    if (ans && side_of(*ans, dd.facet(s), dd.tolerance()) != Side::Negative) ans.reset();
    return ans;
  }
  std::size_t score(const DoubleDescription& dd, const Answer& a) const {
    return dd.partition_facets(a).negative.size();
  }
  void apply(DoubleDescription& dd, const Answer& a) const { dd.add_vertex(a); }
};

template <class Side_>
RunStats run_skeleton(DoubleDescription& dd, const Side_& side, const Strategy& strategy) {
  strategy.validate();
  const auto t0 = Clock::now();
  RunStats stats;
  std::mt19937_64 rng(strategy.seed);

  if (strategy.kind != StrategyKind::Pool) {
    for (;;) {
      note_sizes(dd, stats);
      const auto nf = side.nonfinal(dd);
      if (nf.empty()) break;
      const std::size_t s = next_query(dd, nf, strategy, rng);
      ++stats.oracle_calls;
      const auto ans = side.query(dd, s);
      if (!ans) {
        side.mark_final(dd, s);
        ++stats.inside_answers;
      } else {
        side.apply(dd, *ans);
        ++stats.iterations;
      }
    }
    stats.wall_time = seconds_since(t0);
    return stats;
  }

  struct Member {
    std::uint64_t serial;
    typename Side_::Answer answer;
  };
  std::vector<Member> pool;
  for (;;) {
    note_sizes(dd, stats);
    std::erase_if(pool, [&](const Member& m) {
      if (side.find(dd, m.serial) != DoubleDescription::npos) return false;
      ++stats.stale_answers;
      return true;
    });
    for (std::size_t s : side.nonfinal(dd)) {
      if (pool.size() >= strategy.pool_size) break;
      const std::uint64_t ser = side.serial(dd, s);
      if (std::any_of(pool.begin(), pool.end(), [&](const Member& m) { return m.serial == ser; })) continue;
      ++stats.oracle_calls;
      auto ans = side.query(dd, s);
      if (!ans) {
        side.mark_final(dd, s);
        ++stats.inside_answers;
      } else {
        pool.push_back({ser, std::move(*ans)});
      }
    }
    if (pool.empty()) break;  // every element was answered inside
    std::vector<QueryCandidate> cand;
    cand.reserve(pool.size());
    for (const auto& m : pool) cand.push_back({m.serial, side.score(dd, m.answer)});
    const std::size_t k = pool_pick(cand);
    const Member chosen = std::move(pool[k]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
    side.apply(dd, chosen.answer);
    ++stats.iterations;
  }
  stats.wall_time = seconds_since(t0);
  return stats;
}

// Homogeneous rank of the vertices on facet f.
std::size_t facet_rank(const DoubleDescription& dd, std::size_t f) {
  std::vector<HomPoint> pts;
  dd.vertices_of(f).for_each_set([&](std::size_t v) { pts.push_back(dd.vertex(v)); });
  return homogeneous_rank(pts, dd.tolerance());
}

// x >= 0 with A x = c and P x <= y, or empty when none is found.
std::vector<double> find_preimage(const MolpProblem& problem, const std::vector<double>& y) {
  const std::size_t m = problem.m(), n = problem.n(), p = problem.p();
  std::vector<Triplet> trip = problem.A.triplets();
  for (std::size_t k = 0; k < p; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      if (problem.objective(k, j) != 0.0) trip.push_back({m + k, j, problem.objective(k, j)});
    }
    trip.push_back({m + k, n + k, 1.0});
  }
  LpProblem lp;
  lp.matrix = SparseMatrix::from_triplets(m + p, n + p, trip);
  lp.rhs = problem.c;
  lp.rhs.insert(lp.rhs.end(), y.begin(), y.end());
  lp.lower.assign(n + p, 0.0);
  lp.upper.assign(n + p, kInf);
  std::vector<double> goal(n + p, 0.0);
  for (std::size_t k = 0; k < p; ++k) goal[n + k] = 1.0;
  lp.goals.push_back(std::move(goal));
  const LpOutcome out = solve(lp);
  if (out.status != LpStatus::Optimal) return {};
  std::vector<double> x(out.point.begin(), out.point.begin() + static_cast<std::ptrdiff_t>(n));
  for (auto& v : x) v = std::max(v, 0.0);
  return x;
}

// True when point k is a convex combination of the other points plus a
// nonnegative combination of the directions.
bool is_combination_of_others(const std::vector<std::vector<double>>& pts, std::size_t k,
                              const std::vector<std::vector<double>>& dirs) {
  const std::size_t p = pts[k].size();
  const std::size_t cols = pts.size() - 1 + dirs.size();
  if (cols == 0) return false;
  std::vector<Triplet> trip;
  std::size_t c = 0;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (j == k) continue;
    for (std::size_t i = 0; i < p; ++i) trip.push_back({i, c, pts[j][i]});
    trip.push_back({p, c, 1.0});
    ++c;
  }
  for (const auto& d : dirs) {
    for (std::size_t i = 0; i < p; ++i) trip.push_back({i, c, d[i]});
    ++c;
  }
  LpProblem lp;
  lp.matrix = SparseMatrix::from_triplets(p + 1, cols, trip);
  lp.rhs = pts[k];
  lp.rhs.push_back(1.0);
  lp.lower.assign(cols, 0.0);
  lp.upper.assign(cols, kInf);
  lp.goals.push_back(std::vector<double>(cols, 0.0));
  return solve(lp).status == LpStatus::Optimal;
}

std::vector<double> clamp_normal(std::span<const double> h, const Tolerance& tol) {
  std::vector<double> out(h.begin(), h.end());
  for (auto& x : out) {
    if (x < 0.0 && x > -tol.eps_side) x = 0.0;
  }
  return out;
}

struct VectorLess {
  bool operator()(const std::vector<double>& a, const std::vector<double>& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

}  // namespace

void Strategy::validate() const {
  if (kind == StrategyKind::Pool && (pool_size < 10 || pool_size > 100)) {
    throw std::invalid_argument("pool size must be between 10 and 100");
  }
}

std::size_t pool_pick(std::span<const QueryCandidate> candidates) {
  if (candidates.empty()) throw std::invalid_argument("empty candidate pool");
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].score > candidates[best].score) best = i;
  }
  return best;
}

std::size_t next_query(const DoubleDescription&, std::span<const std::size_t> nonfinal, const Strategy& strategy,
                       std::mt19937_64& rng) {
  if (nonfinal.empty()) throw std::invalid_argument("no element left to query");
  if (strategy.kind == StrategyKind::Random) {
    std::uniform_int_distribution<std::size_t> pick(0, nonfinal.size() - 1);
    return nonfinal[pick(rng)];
  }
  return nonfinal.front();
}

RunStats run_outer_skeleton(DoubleDescription& dd, const PointOracle& oracle, const Strategy& strategy) {
  return run_skeleton(dd, OuterSide{oracle}, strategy);
}

RunStats run_inner_skeleton(DoubleDescription& dd, const PlaneOracle& oracle, const Strategy& strategy) {
  return run_skeleton(dd, InnerSide{oracle}, strategy);
}

std::pair<Solution, RunStats> solve_outer(const MolpProblem& problem, const SolverOptions& options) {
  problem.validate();
  options.oracle.validate(problem.p());
  const auto t0 = Clock::now();
  const std::size_t p = problem.p();

  std::vector<double> apex(p);
  for (std::size_t k = 0; k < p; ++k) {
    const auto x = minimize_objective(problem, k);
    apex[k] = image_of(problem, x)[k];
  }
  DoubleDescription dd = DoubleDescription::orthant_simplex(apex, options.oracle.tol, options.engine);
  for (std::size_t v : dd.live_vertices()) {
    if (dd.vertex(v).is_ideal()) dd.mark_vertex_final(v);
  }

  std::mt19937_64 rng(options.oracle.rng_seed);
  const PointOracle oracle = [&](const HomPoint& pt) -> std::optional<Halfspace> {
    const auto ans = point_separate(problem, options.oracle, Vector(pt.coords().begin(), pt.coords().end()), &rng);
    if (ans.inside) return std::nullopt;
    return ans.separator;
  };
  RunStats stats = run_outer_skeleton(dd, oracle, options.strategy);

  Solution sol;
  sol.dim = p;
  sol.exact_side = ExactSide::VerticesExact;
  for (std::size_t v : dd.live_vertices()) {
    const HomPoint& pt = dd.vertex(v);
    Vector y(pt.coords().begin(), pt.coords().end());
    if (pt.is_ideal()) {
      sol.ideal_vertices.push_back(std::move(y));
    } else {
      SolvedVertex sv{y, find_preimage(problem, y)};
      sol.vertices.push_back(std::move(sv));
    }
  }
  for (std::size_t f : dd.live_facets()) {
    if (dd.facet(f).is_ideal()) continue;
    if (facet_rank(dd, f) != p) continue;  // redundant inequality
    sol.facets.push_back(dd.facet(f));
  }
  stats.wall_time = seconds_since(t0);
  return {std::move(sol), stats};
}

std::pair<Solution, RunStats> solve_inner(const MolpProblem& problem, const SolverOptions& options) {
  problem.validate();
  options.oracle.validate(problem.p());
  const auto t0 = Clock::now();
  const std::size_t p = problem.p();
  const Tolerance& tol = options.oracle.tol;

  std::map<std::vector<double>, std::vector<double>, VectorLess> preimages;
  const auto first = plane_separate(problem, options.oracle, std::vector<double>(p, 1.0), std::nullopt);
  Vector apex(first.witness.coords().begin(), first.witness.coords().end());
  preimages[apex] = first.preimage;

  DoubleDescription dd = DoubleDescription::orthant_simplex(apex, tol, options.engine);
  for (std::size_t f : dd.live_facets()) {
    if (dd.facet(f).is_ideal()) dd.mark_facet_final(f);
  }
  for (std::size_t v : dd.live_vertices()) {
    if (dd.vertex(v).is_ideal()) dd.mark_vertex_final(v);
  }

  const PlaneOracle oracle = [&](const Halfspace& hs) -> std::optional<HomPoint> {
    const auto ans = plane_separate(problem, options.oracle, clamp_normal(hs.normal(), tol), hs.intercept());
    if (ans.inside) return std::nullopt;
    preimages[Vector(ans.witness.coords().begin(), ans.witness.coords().end())] = ans.preimage;
    return ans.witness;
  };
  RunStats stats = run_inner_skeleton(dd, oracle, options.strategy);
  // The call that produced the initial point.
  ++stats.oracle_calls;
  ++stats.iterations;

  Solution sol;
  sol.dim = p;
  sol.exact_side = ExactSide::FacetsExact;
  std::vector<std::vector<double>> finite;
  for (std::size_t v : dd.live_vertices()) {
    const HomPoint& pt = dd.vertex(v);
    Vector y(pt.coords().begin(), pt.coords().end());
    if (pt.is_ideal()) {
      sol.ideal_vertices.push_back(std::move(y));
    } else {
      finite.push_back(std::move(y));
    }
  }
  std::vector<bool> keep(finite.size(), true);
  if (options.oracle.mode != OracleMode::Strong) {
    // Weak answers may leave points that are not extreme.
    for (std::size_t k = 0; k < finite.size(); ++k) {
      std::vector<std::vector<double>> pts{finite[k]};
      for (std::size_t j = 0; j < finite.size(); ++j) {
        if (j != k && keep[j]) pts.push_back(finite[j]);
      }
      if (is_combination_of_others(pts, 0, sol.ideal_vertices)) keep[k] = false;
    }
  }
  for (std::size_t k = 0; k < finite.size(); ++k) {
    if (!keep[k]) continue;
    auto it = preimages.find(finite[k]);
    sol.vertices.push_back({finite[k], it == preimages.end() ? std::vector<double>{} : it->second});
  }
  for (std::size_t f : dd.live_facets()) {
    if (!dd.facet(f).is_ideal()) sol.facets.push_back(dd.facet(f));
  }
  stats.wall_time = seconds_since(t0);
  return {std::move(sol), stats};
}

std::pair<Solution, RunStats> convex_hull(const std::vector<std::vector<double>>& points,
                                          const SolverOptions& options) {
  if (points.empty()) throw DegenerateInput("no points");
  const std::size_t p = points.front().size();
  if (p == 0) throw DegenerateInput("zero-dimensional points");
  for (const auto& pt : points) {
    if (pt.size() != p) throw DimensionError("points have different dimensions");
  }
  const Tolerance& tol = options.oracle.tol;
  {
    std::vector<HomPoint> hp;
    for (const auto& pt : points) hp.push_back(HomPoint::finite(pt));
    if (homogeneous_rank(hp, tol) != p + 1) throw DegenerateInput("points do not span the space");
  }
  const auto t0 = Clock::now();

  std::vector<double> mean(p, 0.0);
  for (const auto& pt : points) {
    for (std::size_t i = 0; i < p; ++i) mean[i] += pt[i];
  }
  for (auto& x : mean) x /= static_cast<double>(points.size());
  double eps = kInf;
  for (const auto& pt : points) {
    for (std::size_t i = 0; i < p; ++i) {
      const double d = std::abs(pt[i] - mean[i]);
      if (d > tol.eps_side * std::max(1.0, std::abs(mean[i]))) eps = std::min(eps, d);
    }
  }
  eps *= 0.5;

  // Lexicographically smallest point among those farthest below hs.
  const PlaneOracle oracle = [&](const Halfspace& hs) -> std::optional<HomPoint> {
    std::size_t best = 0;
    double best_val = kInf;
    std::vector<double> vals(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
      vals[k] = dot(hs.normal(), points[k]) - hs.intercept();
      best_val = std::min(best_val, vals[k]);
    }
    bool found = false;
    for (std::size_t k = 0; k < points.size(); ++k) {
      const double scale = std::max({1.0, max_norm(points[k]), std::abs(hs.intercept())});
      if (vals[k] > best_val + tol.eps_side * scale) continue;
      if (!found || std::lexicographical_compare(points[k].begin(), points[k].end(), points[best].begin(),
                                                 points[best].end())) {
        best = k;
        found = true;
      }
    }
    const HomPoint pt = HomPoint::finite(points[best]);
    if (side_of(pt, hs, tol) != Side::Negative) return std::nullopt;
    return pt;
  };

  for (int attempt = 0; attempt < 60; ++attempt, eps *= 0.5) {
    std::vector<HomPoint> verts{HomPoint::finite(mean)};
    for (std::size_t i = 0; i < p; ++i) {
      Vector y = mean;
      y[i] += eps;
      verts.push_back(HomPoint::finite(std::move(y)));
    }
    std::vector<Halfspace> facets;
    double sum = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      Vector e(p, 0.0);
      e[i] = 1.0;
      facets.push_back(Halfspace::make(std::move(e), mean[i]));
      sum += mean[i];
    }
    facets.push_back(Halfspace::make(Vector(p, -1.0), -(sum + eps)));
    DoubleDescription dd = DoubleDescription::from_lists(p, verts, facets, tol, options.engine);
    RunStats stats = run_inner_skeleton(dd, oracle, options.strategy);

    bool initial_left = false;
    for (std::size_t v : dd.live_vertices()) {
      if (dd.vertex_serial(v) <= p) initial_left = true;
    }
    if (initial_left) continue;  // the start simplex was not inside the hull

    Solution sol;
    sol.dim = p;
    sol.exact_side = ExactSide::FacetsExact;
    for (std::size_t v : dd.live_vertices()) {
      const HomPoint& pt = dd.vertex(v);
      sol.vertices.push_back({Vector(pt.coords().begin(), pt.coords().end()), {}});
    }
    for (std::size_t f : dd.live_facets()) sol.facets.push_back(dd.facet(f));
    stats.wall_time = seconds_since(t0);
    return {std::move(sol), stats};
  }
  throw NumericalError("could not place the starting simplex inside the hull");
}

}  // namespace molp
