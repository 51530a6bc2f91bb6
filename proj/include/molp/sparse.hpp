#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace molp {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed sparse column matrix. Zero entries are dropped on construction.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), start_(cols + 1, 0) {}

  /// Later duplicates of the same (row, col) overwrite earlier ones.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::span<const Triplet> entries);
  static SparseMatrix from_dense(std::size_t rows, std::size_t cols, std::span<const double> row_major);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const { return values_.size(); }

  std::span<const std::size_t> col_rows(std::size_t j) const {
    return {row_idx_.data() + start_[j], start_[j + 1] - start_[j]};
  }
  std::span<const double> col_values(std::size_t j) const {
    return {values_.data() + start_[j], start_[j + 1] - start_[j]};
  }

  double at(std::size_t i, std::size_t j) const;
  /// y = A x
  std::vector<double> multiply(std::span<const double> x) const;
  /// dot(y, column j)
  double col_dot(std::size_t j, std::span<const double> y) const;
  std::vector<Triplet> triplets() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> start_{0};
  std::vector<std::size_t> row_idx_;
  std::vector<double> values_;
};

}  // namespace molp
