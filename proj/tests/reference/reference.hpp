#pragma once

// Slow brute-force counterparts of the solver, used only by the tests.

#include <cstddef>
#include <vector>

#include "molp/errors.hpp"
#include "molp/geometry.hpp"
#include "molp/problem.hpp"
#include "molp/simplex.hpp"

namespace molp::reference {

class TooLarge : public Error {
 public:
  using Error::Error;
};

struct BruteHull {
  std::size_t dim = 0;
  std::vector<std::vector<double>> vertices;        // finite
  std::vector<std::vector<double>> ideal_vertices;  // directions
  std::vector<Halfspace> facets;                    // finite facets
  /// incidence[v][f]: finite vertex v lies on facet f.
  std::vector<std::vector<bool>> incidence;
};

/// Upper image P{x : Ax = c, x >= 0} + R^p_+ by enumerating basic feasible
/// solutions. Caps: n <= 12, m <= 6, p <= 4. Throws InfeasibleError,
/// UnboundedObjectiveError or TooLarge.
BruteHull brute_q_plus(const MolpProblem& problem);

/// Convex hull of at most 30 points in dimension <= 4.
BruteHull brute_hull(const std::vector<std::vector<double>>& points);

/// Number of edges of a bounded hull (pairs of vertices whose common facets
/// cut out a one-dimensional face).
std::size_t brute_edge_count(const BruteHull& hull);

/// Face tests by rank: vertices a and b span an edge iff the normals of the
/// facets containing both have rank dim-1; facets f and g meet in a ridge iff
/// the common vertices have affine rank dim-1. Inputs are homogeneous.
bool brute_is_edge(const std::vector<HomPoint>& vertices, const std::vector<Halfspace>& facets, std::size_t a,
                   std::size_t b, const Tolerance& tol = {});
bool brute_is_ridge(const std::vector<HomPoint>& vertices, const std::vector<Halfspace>& facets, std::size_t f,
                    std::size_t g, const Tolerance& tol = {});

/// Dense-tableau lexicographic solve: minimizes each goal in turn, adding
/// goal . x <= optimum (plus a tiny slack) before moving to the next goal.
LpOutcome sequential_lex_lp(const LpProblem& problem);

}  // namespace molp::reference
