#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polytrack/linalg.hpp"
#include "polytrack/polynomial.hpp"
#include "polytrack/slp.hpp"

namespace polytrack {

struct StartSystem {
  PolynomialSystem system;               // x_i^{deg f_i} - 1
  std::vector<ComplexVector> solutions;  // all tuples of roots of unity
};

/// Total-degree start system for a square target: equation i is
/// x_i^{d_i} - 1 with d_i = deg f_i, and the product of the d_i tuples of
/// roots of unity as start solutions.
StartSystem total_degree_start(const PolynomialSystem& target);

/// Uniformly distributed point on the unit circle, deterministic per seed.
Complex random_gamma(std::uint64_t seed);

struct HomotopyWorkspace {
  SlpWorkspace start_ws;
  SlpWorkspace target_ws;
  ComplexVector h;   // H(x, t)
  ComplexVector ht;  // dH/dt = gamma*f(x) - g(x), exact for the linear homotopy
  ComplexMatrix hx;  // Jacobian of H with respect to x
};

/// H(x, t) = (1-t) g(x) + gamma t f(x). Holds compiled programs (with
/// Jacobians) for both systems; immutable and shareable across threads, each
/// evaluation using a caller-owned workspace.
class Homotopy {
 public:
  Homotopy(PolynomialSystem start, PolynomialSystem target, Complex gamma);

  int dimension() const { return target_.var_count(); }
  Complex gamma() const { return gamma_; }
  const PolynomialSystem& start_system() const { return start_; }
  const PolynomialSystem& target_system() const { return target_; }
  const SlpProgram& start_program() const { return start_program_; }
  const SlpProgram& target_program() const { return target_program_; }

  /// Fills ws.h, ws.hx, ws.ht from one sweep per compiled system. Returns
  /// false on overflow.
  bool evaluate(std::span<const Complex> x, double t, HomotopyWorkspace& ws) const;

 private:
  PolynomialSystem start_;
  PolynomialSystem target_;
  Complex gamma_;
  SlpProgram start_program_;
  SlpProgram target_program_;
};

inline Homotopy make_homotopy(PolynomialSystem start, PolynomialSystem target, Complex gamma) {
  return Homotopy(std::move(start), std::move(target), gamma);
}

}  // namespace polytrack
