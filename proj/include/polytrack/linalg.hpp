#pragma once

#include <optional>
#include <span>
#include <vector>

#include "polytrack/types.hpp"

namespace polytrack {

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), entries_(std::size_t(rows) * std::size_t(cols)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Complex& operator()(int r, int c) { return entries_[std::size_t(r) * cols_ + c]; }
  const Complex& operator()(int r, int c) const { return entries_[std::size_t(r) * cols_ + c]; }

  void resize(int rows, int cols) {
    rows_ = rows;
    cols_ = cols;
    entries_.resize(std::size_t(rows) * std::size_t(cols));
  }

  const ComplexVector& entries() const { return entries_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  ComplexVector entries_;  // row-major
};

/// Max modulus of the entries; 0 for an empty vector.
double inf_norm(std::span<const Complex> v);

/// Max absolute row sum.
double inf_norm(const ComplexMatrix& a);

/// LU factorization with partial (row) pivoting by largest modulus. A pivot
/// whose modulus falls below kPivotTolerance times the largest initial
/// modulus in its column marks the matrix singular.
///
/// An instance owns its scratch buffers, so one LuDecomposition per thread;
/// repeated factor/solve cycles reuse the storage.
class LuDecomposition {
 public:
  static constexpr double kPivotTolerance = 1e-14;

  bool factor(const ComplexMatrix& a);            // false when singular
  bool solve_in_place(ComplexVector& rhs) const;  // false when singular or not factored
  bool singular() const { return singular_; }
  int size() const { return n_; }

  // Reconstruction accessors: row i of PA is row permutation()[i] of A.
  ComplexMatrix unit_lower() const;
  ComplexMatrix upper() const;
  const std::vector<int>& permutation() const { return perm_; }

 private:
  int n_ = 0;
  bool singular_ = true;
  ComplexMatrix lu_;
  std::vector<int> perm_;
  mutable ComplexVector scratch_;
};

/// One-shot solve of Ax = b; empty when A is (numerically) singular.
std::optional<ComplexVector> lu_solve(const ComplexMatrix& a, std::span<const Complex> b);

}  // namespace polytrack
