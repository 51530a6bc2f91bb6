#pragma once

// Separating oracles for the upper image Q+ = P{x : Ax = c, x >= 0} + R^p_+.
// Each call sets up one (multi-goal) LP over the original constraints.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "molp/geometry.hpp"
#include "molp/problem.hpp"

namespace molp {

enum class OracleMode { WeakFixed, WeakRandom, Strong };

struct OracleConfig {
  std::vector<double> e_star;  // empty means all-ones
  std::uint64_t rng_seed = 1;
  OracleMode mode = OracleMode::Strong;
  Tolerance tol{};

  /// Throws std::invalid_argument if some coordinate of e_star is not positive.
  void validate(std::size_t p) const;
};

struct PointSepAnswer {
  bool inside = true;
  Halfspace separator;          // {y : s.y >= s.v_hat}
  std::vector<double> touch_point;  // v_hat = v - lambda_hat e*
  double lambda_hat = 0.0;
  std::vector<double> s;        // dual multipliers of the objectives
  std::vector<double> t;        // dual multipliers of the equations
};

struct PlaneSepAnswer {
  bool inside = true;
  HomPoint witness;             // P x_hat
  std::vector<double> preimage; // x_hat
  double value = 0.0;           // h . witness
};

/// Point separation via the dual LP D(v, e*). `rng` is consulted only in
/// WeakRandom mode, once per call.
PointSepAnswer point_separate(const MolpProblem& problem, const OracleConfig& config,
                              const std::vector<double>& v, std::mt19937_64* rng = nullptr);

/// Plane separation: minimizes h.(P x) over the feasible set. Without an
/// intercept the answer is never Inside.
PlaneSepAnswer plane_separate(const MolpProblem& problem, const OracleConfig& config,
                              const std::vector<double>& h, std::optional<double> intercept);

/// min P_k x over the feasible set; throws InfeasibleError or
/// UnboundedObjectiveError(k). Returns the optimal x.
std::vector<double> minimize_objective(const MolpProblem& problem, std::size_t k);

}  // namespace molp
