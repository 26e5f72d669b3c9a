#pragma once

#include <cstdint>

#include "polytrack/linalg.hpp"
#include "polytrack/polynomial.hpp"

namespace polytrack {

/// n dense polynomials carrying every monomial of total degree <= d
/// (C(n+d, d) terms each) with independent complex Gaussian coefficients.
PolynomialSystem random_dense(int n, int d, std::uint64_t seed);

/// Classical Katsura-n system: n-1 quadratic convolution equations plus one
/// linear normalization in u0..u_{n-1}; total degree 2^(n-1).
PolynomialSystem katsura(int n);

struct GevpInstance {
  PolynomialSystem target;
  PolynomialSystem start;
  std::vector<ComplexVector> start_solutions;  // (v, lambda) = (e_k / c_k, k+1)
  ComplexMatrix a;
  ComplexMatrix b;
  ComplexVector normalization;  // c, all entries nonzero
};

/// Av = lambda Bv with the normalization row c.v = 1, posed as a square
/// polynomial system in (v1..vn, lambda). The start pencil diag(1..n) / I
/// supplies exactly n regular, well-separated start solutions.
GevpInstance gevp_from_matrices(const ComplexMatrix& a, const ComplexMatrix& b,
                                ComplexVector normalization);
GevpInstance gevp(int n, std::uint64_t seed);

}  // namespace polytrack
