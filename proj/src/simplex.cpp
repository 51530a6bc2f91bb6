#include "molp/simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "molp/errors.hpp"

namespace molp {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

double vec_max_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Eigen::MatrixXd basis_matrix(const SparseMatrix& a, std::span<const std::size_t> basic,
                             std::span<const double> art_sign) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t j = basic[r];
    const auto c = static_cast<Eigen::Index>(r);
    if (j < n) {
      const auto rows = a.col_rows(j);
      const auto vals = a.col_values(j);
      for (std::size_t k = 0; k < rows.size(); ++k) b(static_cast<Eigen::Index>(rows[k]), c) = vals[k];
    } else {
      b(static_cast<Eigen::Index>(j - n), c) = art_sign[j - n];
    }
  }
  return b;
}

Eigen::MatrixXd invert_basis(const Eigen::MatrixXd& b) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(b);
  if (!lu.isInvertible()) throw NumericalError("simplex basis became singular");
  return lu.inverse();
}

}  // namespace

void LpProblem::validate() const {
  const std::size_t m = nrows();
  const std::size_t n = ncols();
  if (rhs.size() != m) throw std::invalid_argument("rhs size does not match the row count");
  if (lower.size() != n || upper.size() != n) throw std::invalid_argument("bound vectors must have one entry per column");
  for (std::size_t j = 0; j < n; ++j) {
    if (!(lower[j] <= upper[j])) throw std::invalid_argument("lower bound exceeds upper bound");
    if (lower[j] == kInf || upper[j] == -kInf) throw std::invalid_argument("infinite bound on the wrong side");
  }
  if (goals.empty()) throw std::invalid_argument("at least one goal is required");
  for (const auto& g : goals) {
    if (g.size() != n) throw std::invalid_argument("goal size does not match the column count");
  }
}

SimplexSolver::SimplexSolver(LpProblem problem, SimplexOptions options)
    : problem_(std::move(problem)), opt_(options) {
  problem_.validate();
  m_ = problem_.nrows();
  n_ = problem_.ncols();
}

Basis SimplexSolver::basis() const { return Basis{basic_, state_, art_sign_}; }

void SimplexSolver::start_phase1() {
  const std::size_t total = n_ + m_;
  lo_.assign(total, 0.0);
  up_.assign(total, kInf);
  x_.assign(total, 0.0);
  state_.assign(total, VarState::AtLower);
  for (std::size_t j = 0; j < n_; ++j) {
    lo_[j] = problem_.lower[j];
    up_[j] = problem_.upper[j];
    if (std::isfinite(lo_[j])) {
      x_[j] = lo_[j];
      state_[j] = VarState::AtLower;
    } else if (std::isfinite(up_[j])) {
      x_[j] = up_[j];
      state_[j] = VarState::AtUpper;
    } else {
      x_[j] = 0.0;
      state_[j] = VarState::Free;
    }
  }
  std::vector<double> r = problem_.rhs;
  const std::vector<double> ax = problem_.matrix.multiply(std::span<const double>(x_.data(), n_));
  art_sign_.assign(m_, 1.0);
  basic_.assign(m_, 0);
  binv_.assign(m_ * m_, 0.0);
  for (std::size_t i = 0; i < m_; ++i) {
    r[i] -= ax[i];
    art_sign_[i] = r[i] >= 0.0 ? 1.0 : -1.0;
    x_[n_ + i] = std::abs(r[i]);
    state_[n_ + i] = VarState::Basic;
    basic_[i] = n_ + i;
    binv_[i * m_ + i] = art_sign_[i];
  }
  initialized_ = true;
}

double SimplexSolver::column_dot(std::size_t j, const std::vector<double>& y) const {
  if (j < n_) return problem_.matrix.col_dot(j, y);
  return art_sign_[j - n_] * y[j - n_];
}

void SimplexSolver::compute_duals(const std::vector<double>& cost, std::vector<double>& y) const {
  y.assign(m_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) {
    const double cb = cost[basic_[r]];
    if (cb == 0.0) continue;
    const double* row = &binv_[r * m_];
    for (std::size_t k = 0; k < m_; ++k) y[k] += cb * row[k];
  }
}

void SimplexSolver::column_ftran(std::size_t j, std::vector<double>& alpha) const {
  alpha.assign(m_, 0.0);
  if (j < n_) {
    const auto rows = problem_.matrix.col_rows(j);
    const auto vals = problem_.matrix.col_values(j);
    for (std::size_t r = 0; r < m_; ++r) {
      const double* row = &binv_[r * m_];
      double s = 0.0;
      for (std::size_t k = 0; k < rows.size(); ++k) s += row[rows[k]] * vals[k];
      alpha[r] = s;
    }
  } else {
    const std::size_t c = j - n_;
    for (std::size_t r = 0; r < m_; ++r) alpha[r] = binv_[r * m_ + c] * art_sign_[c];
  }
}

void SimplexSolver::pivot(std::size_t row, std::size_t entering, const std::vector<double>& alpha) {
  const double piv = alpha[row];
  double* prow = &binv_[row * m_];
  for (std::size_t k = 0; k < m_; ++k) prow[k] /= piv;
  for (std::size_t r = 0; r < m_; ++r) {
    if (r == row || alpha[r] == 0.0) continue;
    const double f = alpha[r];
    double* dst = &binv_[r * m_];
    for (std::size_t k = 0; k < m_; ++k) dst[k] -= f * prow[k];
  }
  basic_[row] = entering;
  state_[entering] = VarState::Basic;
  if (++since_refactor_ >= opt_.refactor_interval) {
    refactor();
    recompute_basics();
    if (residual() > opt_.residual_tol * std::max(1.0, vec_max_norm(problem_.rhs))) {
      throw NumericalError("simplex residual drifted after refactorization");
    }
  }
}

void SimplexSolver::refactor() {
  const Eigen::MatrixXd inv = invert_basis(basis_matrix(problem_.matrix, basic_, art_sign_));
  for (std::size_t r = 0; r < m_; ++r) {
    for (std::size_t k = 0; k < m_; ++k) binv_[r * m_ + k] = inv(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k));
  }
  since_refactor_ = 0;
}

void SimplexSolver::recompute_basics() {
  std::vector<double> r = problem_.rhs;
  for (std::size_t j = 0; j < n_ + m_; ++j) {
    if (state_[j] == VarState::Basic || x_[j] == 0.0) continue;
    if (j < n_) {
      const auto rows = problem_.matrix.col_rows(j);
      const auto vals = problem_.matrix.col_values(j);
      for (std::size_t k = 0; k < rows.size(); ++k) r[rows[k]] -= vals[k] * x_[j];
    } else {
      r[j - n_] -= art_sign_[j - n_] * x_[j];
    }
  }
  for (std::size_t row = 0; row < m_; ++row) {
    const double* b = &binv_[row * m_];
    double s = 0.0;
    for (std::size_t k = 0; k < m_; ++k) s += b[k] * r[k];
    x_[basic_[row]] = s;
  }
}

double SimplexSolver::residual() const {
  std::vector<double> ax = problem_.matrix.multiply(std::span<const double>(x_.data(), n_));
  double worst = 0.0;
  for (std::size_t i = 0; i < m_; ++i) {
    worst = std::max(worst, std::abs(ax[i] + art_sign_[i] * x_[n_ + i] - problem_.rhs[i]));
  }
  return worst;
}

SimplexSolver::Step SimplexSolver::iterate(const std::vector<double>& cost) {
  std::vector<double> y;
  compute_duals(cost, y);
  const double dtol = opt_.dual_tol * std::max(1.0, vec_max_norm(cost));

  std::size_t q = kNone;
  double dq = 0.0;
  for (std::size_t j = 0; j < n_ + m_; ++j) {
    if (state_[j] == VarState::Basic || lo_[j] == up_[j]) continue;
    const double d = cost[j] - column_dot(j, y);
    const bool eligible = (state_[j] == VarState::AtLower && d < -dtol) ||
                          (state_[j] == VarState::AtUpper && d > dtol) ||
                          (state_[j] == VarState::Free && std::abs(d) > dtol);
    if (!eligible) continue;
    if (bland_) {
      q = j;
      dq = d;
      break;
    }
    if (q == kNone || std::abs(d) > std::abs(dq)) {
      q = j;
      dq = d;
    }
  }
  if (q == kNone) return Step::Optimal;

  const double dir = dq < 0.0 ? 1.0 : -1.0;
  std::vector<double> alpha;
  column_ftran(q, alpha);

  // Row ratio test; ties go to the largest pivot (Bland: smallest index).
  double theta = kInf;
  std::size_t leave = kNone;
  double leave_piv = 0.0;
  bool leave_to_lower = true;
  const double amax = vec_max_norm(alpha);
  const double ptol = opt_.pivot_tol * std::max(1.0, amax);
  for (std::size_t r = 0; r < m_; ++r) {
    const double a = alpha[r];
    if (std::abs(a) <= ptol) continue;
    const double rate = -dir * a;  // d x_B[r] / d theta
    const std::size_t b = basic_[r];
    double lim;
    bool to_lower;
    if (rate < 0.0) {
      if (!std::isfinite(lo_[b])) continue;
      lim = (x_[b] - lo_[b]) / -rate;
      to_lower = true;
    } else {
      if (!std::isfinite(up_[b])) continue;
      lim = (up_[b] - x_[b]) / rate;
      to_lower = false;
    }
    lim = std::max(lim, 0.0);
    const double tie = 1e-12 * std::max(1.0, std::abs(theta));
    bool take = false;
    if (leave == kNone || lim < theta - tie) {
      take = true;
    } else if (lim <= theta + tie) {
      take = bland_ ? b < basic_[leave] : std::abs(a) > leave_piv;
    }
    if (take) {
      theta = lim;
      leave = r;
      leave_piv = std::abs(a);
      leave_to_lower = to_lower;
    }
  }

  const double span = up_[q] - lo_[q];
  const bool flip = std::isfinite(span) && span <= theta;
  if (flip) theta = span;
  if (!std::isfinite(theta)) return Step::Unbounded;

  if (theta != 0.0) {
    x_[q] += dir * theta;
    for (std::size_t r = 0; r < m_; ++r) x_[basic_[r]] -= dir * theta * alpha[r];
  }

  if (theta <= 1e-12) {
    if (++degenerate_run_ > 2 * (m_ + n_)) bland_ = true;
  } else {
    degenerate_run_ = 0;
    bland_ = false;
  }
  ++pivots_;
  if (pivots_ > opt_.max_pivots) throw NumericalError("simplex pivot limit exceeded");

  if (flip) {
    x_[q] = dir > 0.0 ? up_[q] : lo_[q];
    state_[q] = dir > 0.0 ? VarState::AtUpper : VarState::AtLower;
    if (opt_.record_trace) trace_.push_back({q, q});
    return Step::Pivoted;
  }

  const std::size_t b = basic_[leave];
  if (opt_.record_trace) trace_.push_back({q, b});
  x_[b] = leave_to_lower ? lo_[b] : up_[b];
  state_[b] = (leave_to_lower || lo_[b] == up_[b]) ? VarState::AtLower : VarState::AtUpper;
  pivot(leave, q, alpha);
  return Step::Pivoted;
}

bool SimplexSolver::run_phase1() {
  start_phase1();
  std::vector<double> cost(n_ + m_, 0.0);
  for (std::size_t i = 0; i < m_; ++i) cost[n_ + i] = 1.0;
  while (iterate(cost) == Step::Pivoted) {
  }
  double infeas = 0.0;
  for (std::size_t i = 0; i < m_; ++i) infeas += x_[n_ + i];
  if (infeas > opt_.residual_tol * std::max(1.0, vec_max_norm(problem_.rhs))) return false;
  for (std::size_t i = 0; i < m_; ++i) {
    up_[n_ + i] = 0.0;
    if (state_[n_ + i] != VarState::Basic) {
      x_[n_ + i] = 0.0;
      state_[n_ + i] = VarState::AtLower;
    }
  }
  drive_out_artificials();
  return true;
}

void SimplexSolver::drive_out_artificials() {
  std::vector<double> alpha;
  for (std::size_t r = 0; r < m_; ++r) {
    if (basic_[r] < n_) continue;
    const double* row = &binv_[r * m_];
    std::size_t best = kNone;
    double best_abs = 1e-7;
    for (std::size_t j = 0; j < n_; ++j) {
      if (state_[j] == VarState::Basic) continue;
      const auto rows = problem_.matrix.col_rows(j);
      const auto vals = problem_.matrix.col_values(j);
      double s = 0.0;
      for (std::size_t k = 0; k < rows.size(); ++k) s += row[rows[k]] * vals[k];
      if (std::abs(s) > best_abs) {
        best_abs = std::abs(s);
        best = j;
      }
    }
    if (best == kNone) continue;  // redundant row: the artificial stays basic at zero
    const std::size_t art = basic_[r];
    column_ftran(best, alpha);
    x_[art] = 0.0;
    state_[art] = VarState::AtLower;
    pivot(r, best, alpha);
  }
  refactor();
  recompute_basics();
}

void SimplexSolver::shrink(const std::vector<double>& cost) {
  std::vector<double> y;
  compute_duals(cost, y);
  const double dtol = opt_.dual_tol * std::max(1.0, vec_max_norm(cost));
  for (std::size_t j = 0; j < n_; ++j) {
    if (state_[j] == VarState::Basic || lo_[j] == up_[j]) continue;
    const double d = cost[j] - column_dot(j, y);
    if (std::abs(d) <= dtol) continue;
    if (state_[j] == VarState::AtLower) {
      up_[j] = lo_[j];
    } else if (state_[j] == VarState::AtUpper) {
      lo_[j] = up_[j];
    }
  }
}

LpOutcome SimplexSolver::run_goals(const std::vector<std::vector<double>>& goals) {
  LpOutcome out;
  std::vector<double> cost(n_ + m_, 0.0);
  for (std::size_t g = 0; g < goals.size(); ++g) {
    if (goals[g].size() != n_) throw std::invalid_argument("goal size does not match the column count");
    std::copy(goals[g].begin(), goals[g].end(), cost.begin());
    const std::size_t before = pivots_;
    Step step;
    while ((step = iterate(cost)) == Step::Pivoted) {
    }
    out.goal_pivots.push_back(pivots_ - before);
    if (step == Step::Unbounded) {
      out.status = LpStatus::Unbounded;
      out.failed_goal = g;
      break;
    }
    double value = 0.0;
    for (std::size_t j = 0; j < n_; ++j) value += goals[g][j] * x_[j];
    out.objective_values.push_back(value);
    shrink(cost);
    out.status = LpStatus::Optimal;
  }
  if (residual() > opt_.residual_tol * std::max(1.0, vec_max_norm(problem_.rhs))) {
    refactor();
    recompute_basics();
  }
  out.point.assign(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n_));
  out.final_lower.assign(lo_.begin(), lo_.begin() + static_cast<std::ptrdiff_t>(n_));
  out.final_upper.assign(up_.begin(), up_.begin() + static_cast<std::ptrdiff_t>(n_));
  return out;
}

LpOutcome SimplexSolver::solve() { return resolve(problem_.goals); }

LpOutcome SimplexSolver::resolve(std::vector<std::vector<double>> goals) {
  if (goals.empty()) throw std::invalid_argument("at least one goal is required");
  std::size_t phase1 = 0;
  if (!initialized_) {
    feasible_ = run_phase1();
    phase1 = pivots_;
  } else {
    for (std::size_t j = 0; j < n_; ++j) {
      lo_[j] = problem_.lower[j];
      up_[j] = problem_.upper[j];
    }
  }
  if (!feasible_) {
    LpOutcome out;
    out.status = LpStatus::Infeasible;
    out.phase1_pivots = phase1;
    return out;
  }
  LpOutcome out = run_goals(goals);
  out.phase1_pivots = phase1;
  return out;
}

std::vector<double> SimplexSolver::reduced_costs(std::span<const double> goal) const {
  std::vector<double> cost(n_ + m_, 0.0);
  std::copy(goal.begin(), goal.end(), cost.begin());
  std::vector<double> y;
  compute_duals(cost, y);
  std::vector<double> d(n_);
  for (std::size_t j = 0; j < n_; ++j) d[j] = cost[j] - column_dot(j, y);
  return d;
}

LpOutcome solve(const LpProblem& problem, const SimplexOptions& options) {
  SimplexSolver solver(problem, options);
  return solver.solve();
}

std::vector<double> reduced_costs(const LpProblem& problem, const Basis& basis, std::span<const double> goal) {
  const std::size_t m = problem.nrows();
  const std::size_t n = problem.ncols();
  if (basis.basic.size() != m || goal.size() != n) throw std::invalid_argument("basis or goal has the wrong size");
  const Eigen::MatrixXd inv = invert_basis(basis_matrix(problem.matrix, basis.basic, basis.artificial_sign));
  Eigen::VectorXd gb(static_cast<Eigen::Index>(m));
  for (std::size_t r = 0; r < m; ++r) gb(static_cast<Eigen::Index>(r)) = basis.basic[r] < n ? goal[basis.basic[r]] : 0.0;
  const Eigen::VectorXd y = inv.transpose() * gb;
  std::vector<double> yv(y.data(), y.data() + y.size());
  std::vector<double> d(n);
  for (std::size_t j = 0; j < n; ++j) d[j] = goal[j] - problem.matrix.col_dot(j, yv);
  return d;
}

std::pair<std::vector<double>, std::vector<double>> shrink_bounds(const LpProblem& problem, const Basis& basis,
                                                                  std::span<const double> goal, double dual_tol) {
  const std::vector<double> d = reduced_costs(problem, basis, goal);
  std::vector<double> lo = problem.lower;
  std::vector<double> up = problem.upper;
  const double dtol = dual_tol * std::max(1.0, vec_max_norm(goal));
  for (std::size_t j = 0; j < problem.ncols(); ++j) {
    if (basis.state[j] == VarState::Basic || std::abs(d[j]) <= dtol || lo[j] == up[j]) continue;
    if (d[j] > 0.0) {
      if (basis.state[j] != VarState::AtLower) throw std::invalid_argument("basis is not optimal for the goal");
      up[j] = lo[j];
    } else {
      if (basis.state[j] != VarState::AtUpper) throw std::invalid_argument("basis is not optimal for the goal");
      lo[j] = up[j];
    }
  }
  return {lo, up};
}

}  // namespace molp
