#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace polytrack {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline bool is_finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace polytrack
