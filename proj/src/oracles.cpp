#include "molp/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "molp/errors.hpp"
#include "molp/simplex.hpp"

namespace molp {

namespace {

LpProblem feasible_set_lp(const MolpProblem& problem) {
  LpProblem lp;
  lp.matrix = problem.A;
  lp.rhs = problem.c;
  lp.lower.assign(problem.n(), 0.0);
  lp.upper.assign(problem.n(), kInf);
  return lp;
}

std::vector<double> objective_row(const MolpProblem& problem, std::size_t k) {
  return {problem.P.begin() + static_cast<std::ptrdiff_t>(k * problem.n()),
          problem.P.begin() + static_cast<std::ptrdiff_t>((k + 1) * problem.n())};
}

// Called once an LP has shown that some objective is unbounded.
[[noreturn]] void throw_unbounded(const MolpProblem& problem) {
  for (std::size_t k = 0; k < problem.p(); ++k) minimize_objective(problem, k);
  throw NumericalError("an oracle LP is unbounded but every objective is bounded");
}

}  // namespace

void OracleConfig::validate(std::size_t p) const {
  if (e_star.empty()) return;
  if (e_star.size() != p) throw std::invalid_argument("e* has the wrong dimension");
  for (double e : e_star) {
    if (!(e > 0.0)) throw std::invalid_argument("every coordinate of e* must be positive");
  }
}

std::vector<double> minimize_objective(const MolpProblem& problem, std::size_t k) {
  LpProblem lp = feasible_set_lp(problem);
  lp.goals.push_back(objective_row(problem, k));
  const LpOutcome out = solve(lp);
  if (out.status == LpStatus::Infeasible) throw InfeasibleError();
  if (out.status == LpStatus::Unbounded) throw UnboundedObjectiveError(k);
  return out.point;
}

PointSepAnswer point_separate(const MolpProblem& problem, const OracleConfig& config, const std::vector<double>& v,
                              std::mt19937_64* rng) {
  const std::size_t p = problem.p();
  const std::size_t m = problem.m();
  const std::size_t n = problem.n();
  if (v.size() != p) throw std::invalid_argument("query point has the wrong dimension");

  std::vector<double> e = config.e_star.empty() ? std::vector<double>(p, 1.0) : config.e_star;
  if (config.mode == OracleMode::WeakRandom) {
    if (rng == nullptr) throw std::invalid_argument("random oracle needs a generator");
    std::uniform_real_distribution<double> unit(1.0, 2.0);
    for (auto& x : e) x = unit(*rng);
  }

  // Columns: s (p, >= 0), t (m, free), w (n, >= 0).
  // Rows: s^T P + t^T A - w^T = 0 (n rows), s . e* = 1.
  std::vector<Triplet> trip;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < p; ++i) trip.push_back({j, i, problem.objective(i, j)});
    trip.push_back({j, p + m + j, -1.0});
  }
  for (const auto& a : problem.A.triplets()) trip.push_back({a.col, p + a.row, a.value});
  for (std::size_t i = 0; i < p; ++i) trip.push_back({n, i, e[i]});

  const std::size_t cols = p + m + n;
  LpProblem lp;
  lp.matrix = SparseMatrix::from_triplets(n + 1, cols, trip);
  lp.rhs.assign(n + 1, 0.0);
  lp.rhs[n] = 1.0;
  lp.lower.assign(cols, 0.0);
  lp.upper.assign(cols, kInf);
  for (std::size_t r = 0; r < m; ++r) lp.lower[p + r] = -kInf;

  std::vector<double> goal(cols, 0.0);
  std::copy(v.begin(), v.end(), goal.begin());
  std::copy(problem.c.begin(), problem.c.end(), goal.begin() + static_cast<std::ptrdiff_t>(p));
  lp.goals.push_back(std::move(goal));
  if (config.mode == OracleMode::Strong) {
    for (std::size_t i = 0; i < p; ++i) {
      std::vector<double> g(cols, 0.0);
      g[i] = 1.0;
      lp.goals.push_back(std::move(g));
    }
  }

  const LpOutcome out = solve(lp);
  // D is infeasible exactly when some objective is unbounded, and unbounded
  // exactly when the feasible set is empty.
  if (out.status == LpStatus::Infeasible) throw_unbounded(problem);
  if (out.status == LpStatus::Unbounded) {
    if (out.failed_goal == 0) throw InfeasibleError();
    throw NumericalError("lexicographic refinement of the point oracle is unbounded");
  }

  PointSepAnswer ans;
  ans.lambda_hat = out.objective_values.front();
  ans.s.assign(out.point.begin(), out.point.begin() + static_cast<std::ptrdiff_t>(p));
  ans.t.assign(out.point.begin() + static_cast<std::ptrdiff_t>(p),
               out.point.begin() + static_cast<std::ptrdiff_t>(p + m));
  for (auto& s : ans.s) s = std::max(s, 0.0);
  ans.touch_point.resize(p);
  for (std::size_t i = 0; i < p; ++i) ans.touch_point[i] = v[i] - ans.lambda_hat * e[i];

  if (ans.lambda_hat >= -config.tol.eps_side * std::max(1.0, max_norm(v))) return ans;
  if (max_norm(ans.s) <= config.tol.eps_zero) throw NumericalError("point oracle returned a null normal");
  Halfspace hs = Halfspace::make(ans.s, dot(ans.s, ans.touch_point));
  if (side_of(HomPoint::finite(v), hs, config.tol) != Side::Negative) return ans;
  ans.inside = false;
  ans.separator = std::move(hs);
  return ans;
}

PlaneSepAnswer plane_separate(const MolpProblem& problem, const OracleConfig& config, const std::vector<double>& h,
                              std::optional<double> intercept) {
  const std::size_t p = problem.p();
  const std::size_t n = problem.n();
  if (h.size() != p) throw std::invalid_argument("normal has the wrong dimension");

  LpProblem lp = feasible_set_lp(problem);
  std::vector<double> goal(n, 0.0);
  for (std::size_t k = 0; k < p; ++k) {
    if (h[k] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) goal[j] += h[k] * problem.objective(k, j);
  }
  lp.goals.push_back(std::move(goal));
  if (config.mode == OracleMode::Strong) {
    for (std::size_t k = 0; k < p; ++k) lp.goals.push_back(objective_row(problem, k));
  }

  const LpOutcome out = solve(lp);
  if (out.status == LpStatus::Infeasible) throw InfeasibleError();
  if (out.status == LpStatus::Unbounded) {
    if (out.failed_goal > 0) throw UnboundedObjectiveError(out.failed_goal - 1);
    throw_unbounded(problem);
  }

  PlaneSepAnswer ans;
  ans.preimage = out.point;
  for (auto& x : ans.preimage) {
    if (x < 0.0) x = 0.0;
  }
  std::vector<double> y = image_of(problem, ans.preimage);
  ans.value = dot(h, y);
  ans.witness = HomPoint::finite(std::move(y));
  if (!intercept) {
    ans.inside = false;
    return ans;
  }
  const Halfspace hs = Halfspace::make(h, *intercept);
  ans.inside = side_of(ans.witness, hs, config.tol) != Side::Negative;
  return ans;
}

}  // namespace molp
