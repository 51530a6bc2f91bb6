#include "molp/sparse.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace molp {

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::span<const Triplet> entries) {
  std::map<std::pair<std::size_t, std::size_t>, double> cells;  // (col, row)
  for (const auto& t : entries) {
    if (t.row >= rows || t.col >= cols) throw std::out_of_range("sparse entry outside the matrix");
    cells[{t.col, t.row}] = t.value;
  }
  SparseMatrix m(rows, cols);
  for (const auto& [key, value] : cells) {
    if (value == 0.0) continue;
    m.row_idx_.push_back(key.second);
    m.values_.push_back(value);
    ++m.start_[key.first + 1];
  }
  for (std::size_t j = 0; j < cols; ++j) m.start_[j + 1] += m.start_[j];
  return m;
}

SparseMatrix SparseMatrix::from_dense(std::size_t rows, std::size_t cols, std::span<const double> row_major) {
  if (row_major.size() != rows * cols) throw std::invalid_argument("dense data has the wrong size");
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (row_major[i * cols + j] != 0.0) t.push_back({i, j, row_major[i * cols + j]});
    }
  }
  return from_triplets(rows, cols, t);
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  const auto r = col_rows(j);
  auto it = std::lower_bound(r.begin(), r.end(), i);
  if (it == r.end() || *it != i) return 0.0;
  return col_values(j)[static_cast<std::size_t>(it - r.begin())];
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(rows_, 0.0);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (x[j] == 0.0) continue;
    for (std::size_t k = start_[j]; k < start_[j + 1]; ++k) y[row_idx_[k]] += values_[k] * x[j];
  }
  return y;
}

double SparseMatrix::col_dot(std::size_t j, std::span<const double> y) const {
  double s = 0.0;
  for (std::size_t k = start_[j]; k < start_[j + 1]; ++k) s += values_[k] * y[row_idx_[k]];
  return s;
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(values_.size());
  for (std::size_t j = 0; j < cols_; ++j) {
    for (std::size_t k = start_[j]; k < start_[j + 1]; ++k) out.push_back({row_idx_[k], j, values_[k]});
  }
  return out;
}

}  // namespace molp
