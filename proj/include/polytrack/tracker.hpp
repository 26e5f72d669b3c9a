#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "polytrack/homotopy.hpp"

namespace polytrack {

enum class PredictorKind { Tangent, RungeKutta4 };

struct TrackerSettings {
  PredictorKind predictor = PredictorKind::RungeKutta4;
  double initial_step = 0.05;
  double min_step = 1e-6;
  double max_step = 0.1;
  double corrector_tolerance = 1e-6;
  int max_corrector_iterations = 3;
  double step_increase_factor = 2.0;
  double step_decrease_factor = 0.5;
  int successes_before_increase = 3;
  double divergence_threshold = 1e6;
  double endpoint_tolerance = 1e-8;

  void validate() const;  // throws std::invalid_argument
};

enum class PathStatusKind {
  Regular,
  MinStepFailure,    // step control hit the floor, typically near a singularity
  Infinity,          // iterate escaped past divergence_threshold
  SingularEndpoint,  // reached t = 1 but the target-system polish failed
  NumericalFailure,  // precondition violation (bad start solution)
};

struct PathStatus {
  PathStatusKind kind = PathStatusKind::Regular;
  double t_fail = 0.0;  // in [0,1): where the path was abandoned (failure kinds only)

  bool is_regular() const { return kind == PathStatusKind::Regular; }
};

const char* to_string(PathStatusKind kind);

struct TrackedPath {
  ComplexVector start_point;
  ComplexVector end_point;
  PathStatus status;
  double residual = 0.0;  // inf-norm of the target system at end_point
  int steps_taken = 0;
  int newton_iterations_total = 0;
};

/// Diagnostic hook, called with (t, dt) before every attempted step.
using StepObserver = std::function<void(double t, double dt)>;

/// Davidenko right-hand side dx/dt = -Hx^{-1} Ht; empty when Hx is singular
/// (or the evaluation overflowed).
std::optional<ComplexVector> davidenko_rhs(const Homotopy& h, std::span<const Complex> x, double t);

/// One Euler (Tangent) or classical RK4 step of size dt along the path.
std::optional<ComplexVector> predict(const Homotopy& h, std::span<const Complex> x, double t,
                                     double dt, PredictorKind predictor);

struct CorrectionResult {
  ComplexVector point;
  bool converged = false;
  int iterations = 0;
};

/// Newton iterations on H(., t) at fixed t; converged when the update drops
/// below corrector_tolerance * max(1, |x|).
CorrectionResult correct(const Homotopy& h, std::span<const Complex> x, double t,
                         const TrackerSettings& settings);

/// Follows one continuation path from t = 0 to t = 1 with adaptive step
/// control, then polishes the endpoint against the target system itself.
/// Failures are encoded in the status, never thrown.
TrackedPath track_path(const Homotopy& h, std::span<const Complex> start,
                       const TrackerSettings& settings, const StepObserver& observer = {});

/// One path per start solution, order preserved. Paths are independent; with
/// threads > 1 they are distributed over workers and the result is bitwise
/// identical to the sequential run.
std::vector<TrackedPath> track(const Homotopy& h, const std::vector<ComplexVector>& start_solutions,
                               const TrackerSettings& settings = {}, int threads = 1);
std::vector<TrackedPath> track(const PolynomialSystem& start, const PolynomialSystem& target,
                               const std::vector<ComplexVector>& start_solutions, Complex gamma,
                               const TrackerSettings& settings = {}, int threads = 1);

struct RefineResult {
  ComplexVector point;
  bool converged = false;
  int iterations = 0;
};

/// Newton polish against the system itself, up to 30 iterations or until the
/// update drops below tolerance * max(1, |x|). Non-convergence is reported,
/// not thrown.
RefineResult refine(const PolynomialSystem& system, std::span<const Complex> approx,
                    double tolerance);

struct Solution {
  ComplexVector point;
  PathStatus status;
  double residual = 0.0;
  int steps = 0;
  int newton_iterations = 0;
  int path_index = 0;  // first path that reached this solution
};

struct SolveResult {
  Complex gamma;
  std::vector<Solution> solutions;  // deduplicated regular endpoints, first-seen order
  std::vector<TrackedPath> paths;   // per-path detail, start-solution order
  int total_paths = 0;
  int failed_paths = 0;
  int duplicate_paths = 0;  // regular endpoints collapsed into an earlier solution
};

/// Endpoints a and b are the same solution when |a - b|_inf does not exceed
/// kDeduplicationTolerance * max(1, |a|_inf). Duplicates signal path jumping
/// and are collapsed to the representative with the smallest residual.
inline constexpr double kDeduplicationTolerance = 1e-4;

SolveResult solve_with_start(const PolynomialSystem& start, const PolynomialSystem& target,
                             const std::vector<ComplexVector>& start_solutions, Complex gamma,
                             const TrackerSettings& settings = {}, int threads = 1);

/// Black-box solver: total-degree start system, random unit-circle gamma
/// drawn from the seed, all Bezout paths tracked and deduplicated.
SolveResult solve_system(const PolynomialSystem& target, std::uint64_t seed,
                         const TrackerSettings& settings = {}, int threads = 1);

}  // namespace polytrack
