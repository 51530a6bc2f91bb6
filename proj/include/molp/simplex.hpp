#pragma once

// Bounded-variable primal simplex over
//
//     A x = c,   lower <= x <= upper,
//
// extended to several goals minimized in sequence. After goal j reaches its
// optimum, every nonbasic column with a nonzero reduced cost is pinned at the
// bound it sits on; the remaining feasible set is exactly the optimal face of
// goal j, and the basis carries over unchanged to goal j+1.

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "molp/sparse.hpp"

namespace molp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct LpProblem {
  SparseMatrix matrix;  // nrows x ncols
  std::vector<double> rhs;
  std::vector<double> lower;  // -kInf allowed
  std::vector<double> upper;  // +kInf allowed
  std::vector<std::vector<double>> goals;

  std::size_t nrows() const { return matrix.rows(); }
  std::size_t ncols() const { return matrix.cols(); }
  /// Throws std::invalid_argument on inconsistent dimensions or bounds.
  void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

enum class VarState : unsigned char { Basic, AtLower, AtUpper, Free };

/// Columns 0..ncols-1 are structural; column ncols + r is the artificial
/// variable of row r. An artificial that stays basic marks a redundant row.
struct Basis {
  std::vector<std::size_t> basic;  // one column per row
  std::vector<VarState> state;     // per column (structural + artificial)
  std::vector<double> artificial_sign;  // coefficient of each row's artificial
};

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::size_t failed_goal = 0;  // 0-based goal index when Unbounded
  std::vector<double> point;
  std::vector<double> objective_values;
  std::vector<double> final_lower;
  std::vector<double> final_upper;
  std::size_t phase1_pivots = 0;
  std::vector<std::size_t> goal_pivots;  // pivots spent on each goal
};

struct SimplexOptions {
  double feas_tol = 1e-9;
  double dual_tol = 1e-9;
  double pivot_tol = 1e-9;
  std::size_t refactor_interval = 100;
  double residual_tol = 1e-7;
  std::size_t max_pivots = 1'000'000;
  bool record_trace = false;
};

struct PivotRecord {
  std::size_t entering;
  std::size_t leaving;  // == entering for a bound flip
};

class SimplexSolver {
 public:
  explicit SimplexSolver(LpProblem problem, SimplexOptions options = {});

  /// Phase 1 then every goal of the problem in order.
  LpOutcome solve();
  /// Resets the bounds to the original ones and minimizes `goals` starting from
  /// the current basis (which stays primal feasible). Runs phase 1 first if no
  /// solve has happened yet.
  LpOutcome resolve(std::vector<std::vector<double>> goals);

  const LpProblem& problem() const { return problem_; }
  Basis basis() const;
  std::span<const double> values() const { return {x_.data(), n_}; }

  /// g' = g - phi^T (B^-1 A) for the current basis, structural columns only.
  std::vector<double> reduced_costs(std::span<const double> goal) const;

  std::size_t total_pivots() const { return pivots_; }
  const std::vector<PivotRecord>& trace() const { return trace_; }

 private:
  enum class Step { Optimal, Unbounded, Pivoted };

  void start_phase1();
  bool run_phase1();
  void drive_out_artificials();
  LpOutcome run_goals(const std::vector<std::vector<double>>& goals);
  Step iterate(const std::vector<double>& cost);
  void compute_duals(const std::vector<double>& cost, std::vector<double>& y) const;
  double column_dot(std::size_t j, const std::vector<double>& y) const;
  void column_ftran(std::size_t j, std::vector<double>& alpha) const;
  void pivot(std::size_t row, std::size_t entering, const std::vector<double>& alpha);
  void refactor();
  void recompute_basics();
  double residual() const;
  void shrink(const std::vector<double>& cost);

  LpProblem problem_;
  SimplexOptions opt_;
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::vector<double> art_sign_;
  std::vector<double> lo_, up_, x_;
  std::vector<VarState> state_;
  std::vector<std::size_t> basic_;
  std::vector<double> binv_;  // m x m, row-major
  std::size_t pivots_ = 0;
  std::size_t since_refactor_ = 0;
  std::size_t degenerate_run_ = 0;
  bool bland_ = false;
  bool initialized_ = false;
  bool feasible_ = false;
  std::vector<PivotRecord> trace_;
};

/// One-shot multi-goal solve.
LpOutcome solve(const LpProblem& problem, const SimplexOptions& options = {});

/// Reduced costs of `goal` for an explicit basis (refactorizes from scratch).
std::vector<double> reduced_costs(const LpProblem& problem, const Basis& basis, std::span<const double> goal);

/// Bounds after pinning every nonbasic column with a nonzero reduced cost:
/// positive reduced cost pins to the lower bound, negative to the upper one.
/// `basis` must be optimal for `goal`.
std::pair<std::vector<double>, std::vector<double>> shrink_bounds(const LpProblem& problem, const Basis& basis,
                                                                  std::span<const double> goal,
                                                                  double dual_tol = 1e-9);

}  // namespace molp
