#include "polytrack/tracker.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <utility>

namespace polytrack {

namespace {

constexpr int kPolishMaxIterations = 30;

struct PathScratch {
  HomotopyWorkspace hw;
  LuDecomposition lu;
  ComplexVector x;      // current accepted point
  ComplexVector xp;     // predicted / corrected candidate
  ComplexVector delta;  // Newton update
  ComplexVector k1, k2, k3, k4, stage;
  SlpWorkspace endpoint_ws;
};

enum class StepEval { Ok, Singular, Overflow };

StepEval davidenko_into(const Homotopy& h, const ComplexVector& x, double t, PathScratch& s,
                        ComplexVector& out) {
  if (!h.evaluate(x, t, s.hw)) return StepEval::Overflow;
  if (!s.lu.factor(s.hw.hx)) return StepEval::Singular;
  out.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = -s.hw.ht[i];
  s.lu.solve_in_place(out);
  return StepEval::Ok;
}

StepEval predict_into(const Homotopy& h, const ComplexVector& x, double t, double dt,
                      PredictorKind predictor, PathScratch& s, ComplexVector& out) {
  const std::size_t n = x.size();
  if (predictor == PredictorKind::Tangent) {
    const StepEval st = davidenko_into(h, x, t, s, s.k1);
    if (st != StepEval::Ok) return st;
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + dt * s.k1[i];
    return StepEval::Ok;
  }

  // classical fourth-order Runge-Kutta on dx/dt
  StepEval st = davidenko_into(h, x, t, s, s.k1);
  if (st != StepEval::Ok) return st;
  s.stage.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.stage[i] = x[i] + (dt / 2.0) * s.k1[i];
  st = davidenko_into(h, s.stage, t + dt / 2.0, s, s.k2);
  if (st != StepEval::Ok) return st;
  for (std::size_t i = 0; i < n; ++i) s.stage[i] = x[i] + (dt / 2.0) * s.k2[i];
  st = davidenko_into(h, s.stage, t + dt / 2.0, s, s.k3);
  if (st != StepEval::Ok) return st;
  for (std::size_t i = 0; i < n; ++i) s.stage[i] = x[i] + dt * s.k3[i];
  st = davidenko_into(h, s.stage, t + dt, s, s.k4);
  if (st != StepEval::Ok) return st;
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = x[i] + (dt / 6.0) * (s.k1[i] + 2.0 * s.k2[i] + 2.0 * s.k3[i] + s.k4[i]);
  return StepEval::Ok;
}

struct CorrectOutcome {
  bool converged = false;
  bool overflow = false;
  int iterations = 0;
};

CorrectOutcome correct_in_place(const Homotopy& h, ComplexVector& x, double t,
                                const TrackerSettings& settings, PathScratch& s) {
  CorrectOutcome out;
  for (int it = 0; it < settings.max_corrector_iterations; ++it) {
    if (!h.evaluate(x, t, s.hw)) {
      out.overflow = true;
      return out;
    }
    if (!s.lu.factor(s.hw.hx)) return out;  // singular Jacobian: not converged
    s.delta = s.hw.h;
    s.lu.solve_in_place(s.delta);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= s.delta[i];
    ++out.iterations;
    if (inf_norm(s.delta) <= settings.corrector_tolerance * std::max(1.0, inf_norm(x))) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

struct PolishOutcome {
  bool converged = false;
  int iterations = 0;
};

/// Newton against a compiled square system (values + Jacobian program).
PolishOutcome newton_program_in_place(const SlpProgram& prog, ComplexVector& x, double tolerance,
                                      int max_iterations, SlpWorkspace& ws, LuDecomposition& lu,
                                      ComplexVector& delta) {
  PolishOutcome out;
  for (int it = 0; it < max_iterations; ++it) {
    if (!prog.evaluate(x, ws)) return out;
    if (!lu.factor(ws.jacobian)) return out;
    delta = ws.values;
    lu.solve_in_place(delta);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= delta[i];
    ++out.iterations;
    if (inf_norm(delta) <= tolerance * std::max(1.0, inf_norm(x))) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

double residual_of(const SlpProgram& target, const ComplexVector& x, SlpWorkspace& ws) {
  if (!target.evaluate(x, ws)) return std::numeric_limits<double>::infinity();
  return inf_norm(ws.values);
}

TrackedPath track_path_impl(const Homotopy& h, std::span<const Complex> start,
                            const TrackerSettings& settings, PathScratch& s,
                            const StepObserver& observer) {
  TrackedPath out;
  out.start_point.assign(start.begin(), start.end());

  auto finish = [&](PathStatusKind kind, double t_fail, const ComplexVector& end) {
    out.status.kind = kind;
    out.status.t_fail = t_fail;
    out.end_point = end;
    out.residual = residual_of(h.target_program(), end, s.endpoint_ws);
    return out;
  };

  if (int(start.size()) != h.dimension())
    return finish(PathStatusKind::NumericalFailure, 0.0, out.start_point);
  s.x.assign(start.begin(), start.end());
  if (!h.evaluate(s.x, 0.0, s.hw) || inf_norm(s.hw.h) > settings.corrector_tolerance)
    return finish(PathStatusKind::NumericalFailure, 0.0, s.x);

  double t = 0.0;
  double dt = settings.initial_step;
  int consecutive_successes = 0;

  while (t < 1.0) {
    if (inf_norm(s.x) > settings.divergence_threshold)
      return finish(PathStatusKind::Infinity, t, s.x);

    const bool final_step = dt >= 1.0 - t;
    const double dt_attempt = final_step ? 1.0 - t : dt;  // clamp, never overshoot t = 1
    const double t_next = final_step ? 1.0 : t + dt;
    if (observer) observer(t, dt);

    bool accepted = false;
    const StepEval pred = predict_into(h, s.x, t, dt_attempt, settings.predictor, s, s.xp);
    if (pred == StepEval::Ok) {
      const CorrectOutcome co = correct_in_place(h, s.xp, t_next, settings, s);
      out.newton_iterations_total += co.iterations;
      accepted = co.converged;
    }

    if (accepted) {
      s.x.swap(s.xp);
      t = t_next;
      ++out.steps_taken;
      if (++consecutive_successes >= settings.successes_before_increase) {
        dt = std::min(dt * settings.step_increase_factor, settings.max_step);
        consecutive_successes = 0;
      }
    } else {
      // retract: the attempt (wild prediction, singular or non-convergent
      // corrector, overflow) is discarded and the step halved
      consecutive_successes = 0;
      dt *= settings.step_decrease_factor;
      if (dt < settings.min_step) return finish(PathStatusKind::MinStepFailure, t, s.x);
    }
  }

  // Final polish against the target system f itself (not gamma*f): reported
  // residuals refer to the user's system.
  ComplexVector polished = s.x;
  const PolishOutcome po =
      newton_program_in_place(h.target_program(), polished, settings.endpoint_tolerance,
                              kPolishMaxIterations, s.endpoint_ws, s.lu, s.delta);
  out.newton_iterations_total += po.iterations;
  const ComplexVector& end = po.converged ? polished : s.x;
  const double residual = residual_of(h.target_program(), end, s.endpoint_ws);
  out.end_point = end;
  out.residual = residual;
  out.status.kind = (po.converged && residual <= settings.endpoint_tolerance)
                        ? PathStatusKind::Regular
                        : PathStatusKind::SingularEndpoint;
  out.status.t_fail = 0.0;
  return out;
}

}  // namespace

void TrackerSettings::validate() const {
  const bool steps_ok = 0.0 < min_step && min_step <= initial_step && initial_step <= max_step &&
                        max_step <= 1.0;
  const bool factors_ok = 0.0 < step_decrease_factor && step_decrease_factor < 1.0 &&
                          step_increase_factor > 1.0;
  const bool tolerances_ok = corrector_tolerance > 0.0 && endpoint_tolerance > 0.0 &&
                             divergence_threshold > 0.0;
  const bool counts_ok = max_corrector_iterations >= 1 && successes_before_increase >= 1;
  if (!(steps_ok && factors_ok && tolerances_ok && counts_ok))
    throw std::invalid_argument("invalid tracker settings");
}

const char* to_string(PathStatusKind kind) {
  switch (kind) {
    case PathStatusKind::Regular: return "regular";
    case PathStatusKind::MinStepFailure: return "min_step_failure";
    case PathStatusKind::Infinity: return "infinity";
    case PathStatusKind::SingularEndpoint: return "singular_endpoint";
    case PathStatusKind::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

std::optional<ComplexVector> davidenko_rhs(const Homotopy& h, std::span<const Complex> x, double t) {
  PathScratch s;
  const ComplexVector point(x.begin(), x.end());
  ComplexVector out;
  if (davidenko_into(h, point, t, s, out) != StepEval::Ok) return std::nullopt;
  return out;
}

std::optional<ComplexVector> predict(const Homotopy& h, std::span<const Complex> x, double t,
                                     double dt, PredictorKind predictor) {
  PathScratch s;
  const ComplexVector point(x.begin(), x.end());
  ComplexVector out;
  if (predict_into(h, point, t, dt, predictor, s, out) != StepEval::Ok) return std::nullopt;
  return out;
}

CorrectionResult correct(const Homotopy& h, std::span<const Complex> x, double t,
                         const TrackerSettings& settings) {
  settings.validate();
  PathScratch s;
  CorrectionResult result;
  result.point.assign(x.begin(), x.end());
  const CorrectOutcome out = correct_in_place(h, result.point, t, settings, s);
  result.converged = out.converged;
  result.iterations = out.iterations;
  return result;
}

TrackedPath track_path(const Homotopy& h, std::span<const Complex> start,
                       const TrackerSettings& settings, const StepObserver& observer) {
  settings.validate();
  PathScratch s;
  return track_path_impl(h, start, settings, s, observer);
}

std::vector<TrackedPath> track(const Homotopy& h, const std::vector<ComplexVector>& start_solutions,
                               const TrackerSettings& settings, int threads) {
  settings.validate();
  std::vector<TrackedPath> out(start_solutions.size());
  const std::size_t n_paths = start_solutions.size();
  const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), std::max<std::size_t>(n_paths, 1));
  if (workers <= 1) {
    PathScratch s;
    for (std::size_t i = 0; i < n_paths; ++i)
      out[i] = track_path_impl(h, start_solutions[i], settings, s, {});
    return out;
  }
  // Paths are independent and each result is a pure function of its start
  // solution, so any work distribution yields bitwise identical output.
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    PathScratch s;
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_paths) break;
      out[i] = track_path_impl(h, start_solutions[i], settings, s, {});
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return out;
}

std::vector<TrackedPath> track(const PolynomialSystem& start, const PolynomialSystem& target,
                               const std::vector<ComplexVector>& start_solutions, Complex gamma,
                               const TrackerSettings& settings, int threads) {
  const Homotopy h(start, target, gamma);
  return track(h, start_solutions, settings, threads);
}

RefineResult refine(const PolynomialSystem& system, std::span<const Complex> approx,
                    double tolerance) {
  if (tolerance <= 0.0) throw std::invalid_argument("refine tolerance must be positive");
  if (int(approx.size()) != system.var_count())
    throw std::invalid_argument("point dimension mismatch");
  const SlpProgram prog = SlpProgram::compile(system).with_jacobian();
  SlpWorkspace ws;
  LuDecomposition lu;
  ComplexVector delta;
  RefineResult result;
  result.point.assign(approx.begin(), approx.end());
  const PolishOutcome out =
      newton_program_in_place(prog, result.point, tolerance, kPolishMaxIterations, ws, lu, delta);
  result.converged = out.converged;
  result.iterations = out.iterations;
  return result;
}

SolveResult solve_with_start(const PolynomialSystem& start, const PolynomialSystem& target,
                             const std::vector<ComplexVector>& start_solutions, Complex gamma,
                             const TrackerSettings& settings, int threads) {
  SolveResult result;
  result.gamma = gamma;
  result.total_paths = int(start_solutions.size());
  {
    const Homotopy h(start, target, gamma);
    result.paths = track(h, start_solutions, settings, threads);
  }
  for (int i = 0; i < int(result.paths.size()); ++i) {
    const TrackedPath& path = result.paths[i];
    if (!path.status.is_regular()) {
      ++result.failed_paths;
      continue;
    }
    bool merged = false;
    for (Solution& sol : result.solutions) {
      ComplexVector diff(path.end_point.size());
      for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = path.end_point[k] - sol.point[k];
      if (inf_norm(diff) <= kDeduplicationTolerance * std::max(1.0, inf_norm(path.end_point))) {
        ++result.duplicate_paths;
        if (path.residual < sol.residual) {  // keep the better representative
          sol.point = path.end_point;
          sol.residual = path.residual;
          sol.steps = path.steps_taken;
          sol.newton_iterations = path.newton_iterations_total;
        }
        merged = true;
        break;
      }
    }
    if (!merged) {
      Solution sol;
      sol.point = path.end_point;
      sol.status = path.status;
      sol.residual = path.residual;
      sol.steps = path.steps_taken;
      sol.newton_iterations = path.newton_iterations_total;
      sol.path_index = i;
      result.solutions.push_back(std::move(sol));
    }
  }
  return result;
}

SolveResult solve_system(const PolynomialSystem& target, std::uint64_t seed,
                         const TrackerSettings& settings, int threads) {
  StartSystem start = total_degree_start(target);
  return solve_with_start(start.system, target, start.solutions, random_gamma(seed), settings,
                          threads);
}

}  // namespace polytrack
