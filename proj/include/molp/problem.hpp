#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "molp/sparse.hpp"

namespace molp {

/// minimize P x subject to A x = c, x >= 0 (coordinate-wise ordering).
struct MolpProblem {
  SparseMatrix A;               // m x n
  std::vector<double> c;        // m
  std::vector<double> P;        // p x n, row-major
  std::size_t num_objectives = 0;
  std::vector<std::string> names;  // optional column labels

  std::size_t m() const { return A.rows(); }
  std::size_t n() const { return A.cols(); }
  std::size_t p() const { return num_objectives; }
  double objective(std::size_t k, std::size_t j) const { return P[k * n() + j]; }

  /// Throws DimensionError when sizes disagree or a dimension is zero.
  void validate() const;
};

/// Image P x.
std::vector<double> image_of(const MolpProblem& problem, const std::vector<double>& x);

}  // namespace molp
