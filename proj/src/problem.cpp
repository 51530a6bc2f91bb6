#include "molp/problem.hpp"

#include "molp/errors.hpp"

namespace molp {

void MolpProblem::validate() const {
  if (m() == 0 || n() == 0 || p() == 0) throw DimensionError("m, n and p must all be at least 1");
  if (c.size() != m()) throw DimensionError("right-hand side has the wrong length");
  if (P.size() != p() * n()) throw DimensionError("objective matrix has the wrong size");
  if (!names.empty() && names.size() != n()) throw DimensionError("one name per column expected");
}

std::vector<double> image_of(const MolpProblem& problem, const std::vector<double>& x) {
  std::vector<double> y(problem.p(), 0.0);
  for (std::size_t k = 0; k < problem.p(); ++k) {
    for (std::size_t j = 0; j < problem.n(); ++j) y[k] += problem.objective(k, j) * x[j];
  }
  return y;
}

}  // namespace molp
