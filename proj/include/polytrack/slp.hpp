#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "polytrack/linalg.hpp"
#include "polytrack/polynomial.hpp"

namespace polytrack {

enum class SlpOp : std::uint8_t { LoadConst, LoadInput, Add, Sub, Mul };

/// Instruction k writes slot k. For LoadConst `a` indexes the constant pool,
/// for LoadInput it indexes the input vector; for the arithmetic ops `a` and
/// `b` reference strictly earlier slots.
struct SlpInstruction {
  SlpOp op;
  std::int32_t a = -1;
  std::int32_t b = -1;
};

class SlpProgram;

/// Caller-owned evaluation scratch; concurrent evaluations need distinct
/// workspaces. Sized on first use, reused afterwards.
class SlpWorkspace {
 public:
  ComplexVector values;
  ComplexMatrix jacobian;  // row i, column j: d p_i / d x_j (when attached)

 private:
  friend class SlpProgram;
  ComplexVector slots_;
};

/// Branch-free evaluation program for a polynomial system, compiled via the
/// extended Horner scheme (p = q*x_k + r, recursively). with_jacobian()
/// extends the program with forward-mode derivative instructions so a single
/// sweep yields values and all partial derivatives.
class SlpProgram {
 public:
  SlpProgram() = default;

  static SlpProgram compile(const PolynomialSystem& sys);
  static SlpProgram compile(const PolynomialSystem& sys, const std::vector<int>& variable_order);

  SlpProgram with_jacobian() const;

  int input_arity() const { return input_arity_; }
  int output_count() const { return int(value_outputs_.size()); }
  bool has_jacobian() const { return !jacobian_outputs_.empty(); }
  std::size_t instruction_count() const { return code_.size(); }
  std::size_t opcode_count(SlpOp op) const;
  const std::vector<SlpInstruction>& instructions() const { return code_; }

  /// One linear sweep. Returns false when any output is non-finite
  /// (overflow); the workspace contents are then unspecified.
  bool evaluate(std::span<const Complex> x, SlpWorkspace& ws) const;

  /// One `slot := op(args)` line per instruction, then `# values:` /
  /// `# jacobian:` output maps.
  std::string dump() const;

 private:
  void check_topology() const;  // throws std::logic_error on a malformed tape

  std::vector<SlpInstruction> code_;
  ComplexVector constants_;
  int input_arity_ = 0;
  std::vector<std::int32_t> value_outputs_;
  std::vector<std::int32_t> jacobian_outputs_;  // row-major output_count x input_arity
};

/// Variables ordered by how many terms they appear in, most shared first;
/// the default factoring order for compile().
std::vector<int> default_variable_order(const PolynomialSystem& sys);

}  // namespace polytrack
