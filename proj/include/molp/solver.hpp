#pragma once

// Approximation loops and the MOLP drivers built on them.
//
// The outer loop shrinks an approximation S by cutting off non-final vertices
// with halfspaces returned by a point separating oracle; the inner loop grows
// it by adding points returned by a plane separating oracle for non-final
// facets. Both stop when every vertex (resp. facet) is final.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "molp/dd.hpp"
#include "molp/oracles.hpp"
#include "molp/problem.hpp"

namespace molp {

enum class StrategyKind { Sequential, Random, Pool };

struct Strategy {
  StrategyKind kind = StrategyKind::Sequential;
  std::size_t pool_size = 10;  // 10..100, Pool only
  std::uint64_t seed = 1;

  void validate() const;
};

struct RunStats {
  std::size_t oracle_calls = 0;
  std::size_t inside_answers = 0;
  std::size_t iterations = 0;
  /// Pool answers thrown away because their element disappeared before use.
  /// oracle_calls == inside_answers + iterations + stale_answers.
  std::size_t stale_answers = 0;
  std::size_t max_intermediate_vertices = 0;
  std::size_t max_intermediate_facets = 0;
  double wall_time = 0.0;  // seconds
};

enum class ExactSide { VerticesExact, FacetsExact };

struct SolvedVertex {
  std::vector<double> point;
  std::vector<double> preimage;  // empty when not available
};

struct Solution {
  std::size_t dim = 0;
  std::vector<SolvedVertex> vertices;
  std::vector<std::vector<double>> ideal_vertices;  // directions, max-norm 1
  std::vector<Halfspace> facets;                    // finite facets only
  ExactSide exact_side = ExactSide::VerticesExact;
};

struct SolverOptions {
  OracleConfig oracle{};
  Strategy strategy{};
  EngineConfig engine{};
};

/// Answer of a point separating oracle: nullopt means inside.
using PointOracle = std::function<std::optional<Halfspace>(const HomPoint&)>;
/// Answer of a plane separating oracle for {y : h.y >= M}: nullopt means inside.
using PlaneOracle = std::function<std::optional<HomPoint>(const Halfspace&)>;

/// Candidate for the pool strategy: score is the number of elements the
/// stored answer would discard.
struct QueryCandidate {
  std::uint64_t serial;
  std::size_t score;
};

/// Position of the best candidate: largest score, earliest position on ties.
std::size_t pool_pick(std::span<const QueryCandidate> candidates);

/// Next element (slot) to query among the given non-final slots ordered by
/// creation. Sequential takes the first, Random a uniform one.
std::size_t next_query(const DoubleDescription& dd, std::span<const std::size_t> nonfinal, const Strategy& strategy,
                       std::mt19937_64& rng);

RunStats run_outer_skeleton(DoubleDescription& dd, const PointOracle& oracle, const Strategy& strategy);
RunStats run_inner_skeleton(DoubleDescription& dd, const PlaneOracle& oracle, const Strategy& strategy);

std::pair<Solution, RunStats> solve_inner(const MolpProblem& problem, const SolverOptions& options = {});
std::pair<Solution, RunStats> solve_outer(const MolpProblem& problem, const SolverOptions& options = {});

/// Vertices and facets of conv(points). Throws DegenerateInput when the points
/// do not span R^p.
std::pair<Solution, RunStats> convex_hull(const std::vector<std::vector<double>>& points,
                                          const SolverOptions& options = {});

}  // namespace molp
