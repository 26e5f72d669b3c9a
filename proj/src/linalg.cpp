#include "polytrack/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace polytrack {

double inf_norm(std::span<const Complex> v) {
  double best = 0.0;
  for (const Complex& z : v) best = std::max(best, std::abs(z));
  return best;
}

double inf_norm(const ComplexMatrix& a) {
  double best = 0.0;
  for (int r = 0; r < a.rows(); ++r) {
    double row = 0.0;
    for (int c = 0; c < a.cols(); ++c) row += std::abs(a(r, c));
    best = std::max(best, row);
  }
  return best;
}

bool LuDecomposition::factor(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("LU factorization requires a square matrix");
  n_ = a.rows();
  lu_ = a;
  perm_.resize(n_);
  std::iota(perm_.begin(), perm_.end(), 0);
  singular_ = false;

  // Squared moduli throughout; the pivot test |p| <= tol * colmax becomes
  // norm(p) <= tol^2 * norm(colmax).
  constexpr double tol2 = kPivotTolerance * kPivotTolerance;

  for (int k = 0; k < n_; ++k) {
    double col_initial = 0.0;  // largest initial modulus in column k
    for (int r = 0; r < n_; ++r) col_initial = std::max(col_initial, std::norm(a(r, k)));

    int pivot_row = k;
    double pivot = std::norm(lu_(k, k));
    for (int r = k + 1; r < n_; ++r) {
      const double cand = std::norm(lu_(r, k));
      if (cand > pivot) {
        pivot = cand;
        pivot_row = r;
      }
    }
    if (pivot <= tol2 * col_initial || pivot == 0.0) {
      singular_ = true;
      return false;
    }
    if (pivot_row != k) {
      for (int c = 0; c < n_; ++c) std::swap(lu_(k, c), lu_(pivot_row, c));
      std::swap(perm_[k], perm_[pivot_row]);
    }
    const Complex diag = lu_(k, k);
    for (int r = k + 1; r < n_; ++r) {
      const Complex m = lu_(r, k) / diag;
      lu_(r, k) = m;
      for (int c = k + 1; c < n_; ++c) lu_(r, c) -= m * lu_(k, c);
    }
  }
  return true;
}

bool LuDecomposition::solve_in_place(ComplexVector& rhs) const {
  if (singular_ || int(rhs.size()) != n_) return false;
  scratch_.resize(n_);
  for (int i = 0; i < n_; ++i) scratch_[i] = rhs[perm_[i]];
  // Ly = Pb (unit lower triangle), then Ux = y.
  for (int i = 1; i < n_; ++i) {
    Complex acc = scratch_[i];
    for (int j = 0; j < i; ++j) acc -= lu_(i, j) * scratch_[j];
    scratch_[i] = acc;
  }
  for (int i = n_ - 1; i >= 0; --i) {
    Complex acc = scratch_[i];
    for (int j = i + 1; j < n_; ++j) acc -= lu_(i, j) * scratch_[j];
    scratch_[i] = acc / lu_(i, i);
  }
  rhs = scratch_;
  return true;
}

ComplexMatrix LuDecomposition::unit_lower() const {
  ComplexMatrix l(n_, n_);
  for (int i = 0; i < n_; ++i) {
    l(i, i) = 1.0;
    for (int j = 0; j < i; ++j) l(i, j) = lu_(i, j);
  }
  return l;
}

ComplexMatrix LuDecomposition::upper() const {
  ComplexMatrix u(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) u(i, j) = lu_(i, j);
  return u;
}

std::optional<ComplexVector> lu_solve(const ComplexMatrix& a, std::span<const Complex> b) {
  if (int(b.size()) != a.rows()) throw std::invalid_argument("right-hand side size mismatch");
  LuDecomposition lu;
  if (!lu.factor(a)) return std::nullopt;
  ComplexVector x(b.begin(), b.end());
  if (!lu.solve_in_place(x)) return std::nullopt;
  return x;
}

}  // namespace polytrack
