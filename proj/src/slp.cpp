#include "polytrack/slp.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "polytrack/parser.hpp"

namespace polytrack {

namespace {

constexpr std::int32_t kNone = -1;  // structurally zero derivative
constexpr std::int32_t kOne = -2;   // derivative exactly one (input w.r.t. itself)
constexpr std::int32_t kMaxSlots = 1 << 28;

/// Instruction tape under construction. Hash-conses every instruction
/// (commutative ops with canonical operand order) and folds constant
/// arithmetic, so identical subexpressions share one slot.
struct Builder {
  std::vector<SlpInstruction> code;
  ComplexVector constants;
  std::vector<std::int32_t> const_of;  // slot -> constant index, -1 otherwise
  std::unordered_map<std::uint64_t, std::int32_t> cse;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::int32_t> const_pool;

  static std::uint64_t key(SlpOp op, std::int32_t a, std::int32_t b) {
    return std::uint64_t(op) | (std::uint64_t(a + 1) << 4) | (std::uint64_t(b + 1) << 33);
  }

  std::int32_t push(SlpOp op, std::int32_t a, std::int32_t b) {
    if (int(code.size()) >= kMaxSlots) throw std::length_error("straight-line program too large");
    code.push_back({op, a, b});
    const_of.push_back(-1);
    return std::int32_t(code.size() - 1);
  }

  std::int32_t const_slot(Complex value) {
    const auto bits = std::make_pair(std::bit_cast<std::uint64_t>(value.real()),
                                     std::bit_cast<std::uint64_t>(value.imag()));
    auto [it, inserted] = const_pool.try_emplace(bits, 0);
    if (!inserted) return it->second;
    const auto ci = std::int32_t(constants.size());
    constants.push_back(value);
    const std::int32_t slot = push(SlpOp::LoadConst, ci, -1);
    const_of[slot] = ci;
    it->second = slot;
    return slot;
  }

  std::int32_t input_slot(int index) {
    const std::uint64_t k = key(SlpOp::LoadInput, index, -1);
    auto [it, inserted] = cse.try_emplace(k, 0);
    if (!inserted) return it->second;
    it->second = push(SlpOp::LoadInput, index, -1);
    return it->second;
  }

  std::int32_t emit(SlpOp op, std::int32_t a, std::int32_t b) {
    if ((op == SlpOp::Add || op == SlpOp::Mul) && a > b) std::swap(a, b);
    if (const_of[a] >= 0 && const_of[b] >= 0) {
      const Complex ca = constants[const_of[a]];
      const Complex cb = constants[const_of[b]];
      switch (op) {
        case SlpOp::Add: return const_slot(ca + cb);
        case SlpOp::Sub: return const_slot(ca - cb);
        case SlpOp::Mul: return const_slot(ca * cb);
        default: break;
      }
    }
    const std::uint64_t k = key(op, a, b);
    auto [it, inserted] = cse.try_emplace(k, 0);
    if (!inserted) return it->second;
    it->second = push(op, a, b);
    return it->second;
  }
};

struct Term {
  Monomial exponents;
  Complex coefficient;
};

/// Extended Horner: factor p = q * x_k + r on the first variable of `order`
/// present in the terms, recursively. A dense univariate polynomial of
/// degree d compiles to exactly d multiplications and d additions.
std::int32_t compile_terms(Builder& b, std::vector<Term> terms, const std::vector<int>& order) {
  if (terms.empty()) return b.const_slot(0.0);
  if (terms.size() == 1 && monomial_degree(terms[0].exponents) == 0)
    return b.const_slot(terms[0].coefficient);

  int factor_var = -1;
  for (int v : order) {
    for (const Term& t : terms) {
      if (t.exponents[v] > 0) {
        factor_var = v;
        break;
      }
    }
    if (factor_var >= 0) break;
  }
  if (factor_var < 0) throw std::logic_error("no factorable variable in nonconstant terms");

  std::vector<Term> quotient;
  std::vector<Term> remainder;
  for (Term& t : terms) {
    if (t.exponents[factor_var] > 0) {
      t.exponents[factor_var] -= 1;
      quotient.push_back(std::move(t));
    } else {
      remainder.push_back(std::move(t));
    }
  }
  const std::int32_t q = compile_terms(b, std::move(quotient), order);
  const std::int32_t qx = b.emit(SlpOp::Mul, q, b.input_slot(factor_var));
  if (remainder.empty()) return qx;
  const std::int32_t r = compile_terms(b, std::move(remainder), order);
  return b.emit(SlpOp::Add, qx, r);
}

}  // namespace

std::vector<int> default_variable_order(const PolynomialSystem& sys) {
  const int n = sys.var_count();
  std::vector<long> frequency(n, 0);
  for (const Polynomial& p : sys.polys)
    for (const auto& [m, c] : p.terms())
      for (int v = 0; v < n; ++v)
        if (m[v] > 0) ++frequency[v];
  std::vector<int> order(n);
  for (int v = 0; v < n; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return frequency[a] > frequency[b]; });
  return order;
}

SlpProgram SlpProgram::compile(const PolynomialSystem& sys) {
  return compile(sys, default_variable_order(sys));
}

SlpProgram SlpProgram::compile(const PolynomialSystem& sys, const std::vector<int>& variable_order) {
  if (!sys.is_square()) throw std::invalid_argument("compilation requires a square system");
  const int n = sys.var_count();
  {
    std::vector<bool> seen(n, false);
    if (int(variable_order.size()) != n) throw std::invalid_argument("variable order size mismatch");
    for (int v : variable_order) {
      if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("variable order is not a permutation");
      seen[v] = true;
    }
  }

  Builder b;
  SlpProgram out;
  out.input_arity_ = n;
  for (const Polynomial& p : sys.polys) {
    if (p.var_count() != n) throw std::invalid_argument("polynomial variable count mismatch");
    std::vector<Term> terms;
    terms.reserve(p.term_count());
    for (const auto& [m, c] : p.terms()) terms.push_back({m, c});
    out.value_outputs_.push_back(compile_terms(b, std::move(terms), variable_order));
  }
  out.code_ = std::move(b.code);
  out.constants_ = std::move(b.constants);
  out.check_topology();
  return out;
}

SlpProgram SlpProgram::with_jacobian() const {
  Builder b;
  const int n_in = input_arity_;
  std::vector<std::int32_t> remap(code_.size());
  // deriv[k][j]: slot of d(slot k)/d(input j), or the kNone/kOne sentinels.
  std::vector<std::vector<std::int32_t>> deriv(code_.size(),
                                               std::vector<std::int32_t>(n_in, kNone));

  auto materialize = [&](std::int32_t d) -> std::int32_t {
    if (d == kNone) return b.const_slot(0.0);
    if (d == kOne) return b.const_slot(1.0);
    return d;
  };

  for (std::size_t k = 0; k < code_.size(); ++k) {
    const SlpInstruction& ins = code_[k];
    switch (ins.op) {
      case SlpOp::LoadConst:
        remap[k] = b.const_slot(constants_[ins.a]);
        break;
      case SlpOp::LoadInput:
        remap[k] = b.input_slot(ins.a);
        deriv[k][ins.a] = kOne;
        break;
      case SlpOp::Add:
      case SlpOp::Sub:
      case SlpOp::Mul: {
        const std::int32_t na = remap[ins.a];
        const std::int32_t nb = remap[ins.b];
        remap[k] = b.emit(ins.op, na, nb);
        const auto& da = deriv[ins.a];
        const auto& db = deriv[ins.b];
        auto& dk = deriv[k];
        for (int j = 0; j < n_in; ++j) {
          if (ins.op == SlpOp::Add) {
            if (da[j] == kNone)
              dk[j] = db[j];
            else if (db[j] == kNone)
              dk[j] = da[j];
            else
              dk[j] = b.emit(SlpOp::Add, materialize(da[j]), materialize(db[j]));
          } else if (ins.op == SlpOp::Sub) {
            if (db[j] == kNone)
              dk[j] = da[j];
            else
              dk[j] = b.emit(SlpOp::Sub, materialize(da[j]), materialize(db[j]));
          } else {
            // product rule on the already-computed value slots
            std::int32_t t1 = kNone;
            if (da[j] == kOne)
              t1 = nb;
            else if (da[j] != kNone)
              t1 = b.emit(SlpOp::Mul, da[j], nb);
            std::int32_t t2 = kNone;
            if (db[j] == kOne)
              t2 = na;
            else if (db[j] != kNone)
              t2 = b.emit(SlpOp::Mul, na, db[j]);
            if (t1 == kNone)
              dk[j] = t2;
            else if (t2 == kNone)
              dk[j] = t1;
            else
              dk[j] = b.emit(SlpOp::Add, t1, t2);
          }
        }
        break;
      }
    }
  }

  SlpProgram out;
  out.input_arity_ = n_in;
  out.value_outputs_.reserve(value_outputs_.size());
  for (const std::int32_t slot : value_outputs_) out.value_outputs_.push_back(remap[slot]);
  out.jacobian_outputs_.reserve(value_outputs_.size() * n_in);
  for (const std::int32_t slot : value_outputs_)
    for (int j = 0; j < n_in; ++j) {
      const std::int32_t d = deriv[slot][j];
      if (d == kNone)
        out.jacobian_outputs_.push_back(b.const_slot(0.0));
      else if (d == kOne)
        out.jacobian_outputs_.push_back(b.const_slot(1.0));
      else
        out.jacobian_outputs_.push_back(d);
    }
  out.code_ = std::move(b.code);
  out.constants_ = std::move(b.constants);
  out.check_topology();
  return out;
}

std::size_t SlpProgram::opcode_count(SlpOp op) const {
  return std::size_t(std::count_if(code_.begin(), code_.end(),
                                   [op](const SlpInstruction& i) { return i.op == op; }));
}

bool SlpProgram::evaluate(std::span<const Complex> x, SlpWorkspace& ws) const {
  if (int(x.size()) != input_arity_) throw std::invalid_argument("input arity mismatch");
  ws.slots_.resize(code_.size());
  Complex* s = ws.slots_.data();
  for (std::size_t k = 0; k < code_.size(); ++k) {
    const SlpInstruction& ins = code_[k];
    switch (ins.op) {
      case SlpOp::LoadConst: s[k] = constants_[ins.a]; break;
      case SlpOp::LoadInput: s[k] = x[ins.a]; break;
      case SlpOp::Add: s[k] = s[ins.a] + s[ins.b]; break;
      case SlpOp::Sub: s[k] = s[ins.a] - s[ins.b]; break;
      case SlpOp::Mul: s[k] = s[ins.a] * s[ins.b]; break;
    }
  }
  const int n = output_count();
  ws.values.resize(n);
  bool finite = true;
  for (int i = 0; i < n; ++i) {
    ws.values[i] = s[value_outputs_[i]];
    finite = finite && is_finite(ws.values[i]);
  }
  if (has_jacobian()) {
    ws.jacobian.resize(n, input_arity_);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < input_arity_; ++j) {
        const Complex e = s[jacobian_outputs_[std::size_t(i) * input_arity_ + j]];
        ws.jacobian(i, j) = e;
        finite = finite && is_finite(e);
      }
  }
  return finite;
}

std::string SlpProgram::dump() const {
  std::string out;
  for (std::size_t k = 0; k < code_.size(); ++k) {
    const SlpInstruction& ins = code_[k];
    out += "s" + std::to_string(k) + " := ";
    switch (ins.op) {
      case SlpOp::LoadConst: out += "const(" + format_complex(constants_[ins.a]) + ")"; break;
      case SlpOp::LoadInput: out += "input(" + std::to_string(ins.a) + ")"; break;
      case SlpOp::Add:
        out += "add(s" + std::to_string(ins.a) + ", s" + std::to_string(ins.b) + ")";
        break;
      case SlpOp::Sub:
        out += "sub(s" + std::to_string(ins.a) + ", s" + std::to_string(ins.b) + ")";
        break;
      case SlpOp::Mul:
        out += "mul(s" + std::to_string(ins.a) + ", s" + std::to_string(ins.b) + ")";
        break;
    }
    out += '\n';
  }
  out += "# values:";
  for (const std::int32_t slot : value_outputs_) out += " s" + std::to_string(slot);
  out += '\n';
  if (has_jacobian()) {
    out += "# jacobian:";
    for (const std::int32_t slot : jacobian_outputs_) out += " s" + std::to_string(slot);
    out += '\n';
  }
  return out;
}

void SlpProgram::check_topology() const {
  const auto slots = std::int32_t(code_.size());
  for (std::int32_t k = 0; k < slots; ++k) {
    const SlpInstruction& ins = code_[k];
    switch (ins.op) {
      case SlpOp::LoadConst:
        if (ins.a < 0 || ins.a >= std::int32_t(constants_.size()))
          throw std::logic_error("constant index out of range");
        break;
      case SlpOp::LoadInput:
        if (ins.a < 0 || ins.a >= input_arity_) throw std::logic_error("input index out of range");
        break;
      default:
        if (ins.a < 0 || ins.a >= k || ins.b < 0 || ins.b >= k)
          throw std::logic_error("instruction reads a slot that is not written yet");
    }
  }
  for (const std::int32_t slot : value_outputs_)
    if (slot < 0 || slot >= slots) throw std::logic_error("value output out of range");
  for (const std::int32_t slot : jacobian_outputs_)
    if (slot < 0 || slot >= slots) throw std::logic_error("jacobian output out of range");
}

}  // namespace polytrack
