// Command-line front end: solve / track / refine / bench.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polytrack/bench.hpp"
#include "polytrack/parser.hpp"
#include "polytrack/slp.hpp"
#include "polytrack/tracker.hpp"

namespace {

using namespace polytrack;

constexpr std::uint64_t kGammaSeedSalt = 0x9e3779b97f4a7c15ull;

struct Options {
  std::uint64_t seed = 0;
  int threads = 1;
  bool json = false;
  bool dump_slp = false;
  std::string predictor = "rk4";
  std::string gamma = "1";
  double tolerance = 1e-10;
  TrackerSettings settings;
};

void add_common_flags(CLI::App* cmd, Options& opts) {
  cmd->add_option("--seed", opts.seed, "random seed");
  cmd->add_option("--threads", opts.threads, "worker threads for path tracking")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--json", opts.json, "emit a JSON report on stdout");
  cmd->add_flag("--dump-slp", opts.dump_slp, "dump the compiled target program to stderr");
  cmd->add_option("--predictor", opts.predictor, "predictor: tangent or rk4")
      ->check(CLI::IsMember({"tangent", "rk4"}));
  cmd->add_option("--initial-step", opts.settings.initial_step, "initial continuation step");
  cmd->add_option("--min-step", opts.settings.min_step, "smallest allowed step");
  cmd->add_option("--max-step", opts.settings.max_step, "largest allowed step");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

PolynomialSystem load_square_system(const std::string& path) {
  PolynomialSystem sys = parse_system(slurp(path));
  if (!sys.is_square())
    throw std::runtime_error("'" + path + "': system is not square (" +
                             std::to_string(sys.var_count()) + " variables, " +
                             std::to_string(sys.size()) + " equations)");
  return sys;
}

TrackerSettings settings_from(const Options& opts) {
  TrackerSettings s = opts.settings;
  s.predictor = opts.predictor == "tangent" ? PredictorKind::Tangent : PredictorKind::RungeKutta4;
  s.validate();
  return s;
}

void dump_target_program(const PolynomialSystem& sys) {
  const SlpProgram value = SlpProgram::compile(sys);
  const SlpProgram full = value.with_jacobian();
  auto counts = [](const SlpProgram& p) {
    return "instructions=" + std::to_string(p.instruction_count()) +
           " const=" + std::to_string(p.opcode_count(SlpOp::LoadConst)) +
           " input=" + std::to_string(p.opcode_count(SlpOp::LoadInput)) +
           " add=" + std::to_string(p.opcode_count(SlpOp::Add)) +
           " sub=" + std::to_string(p.opcode_count(SlpOp::Sub)) +
           " mul=" + std::to_string(p.opcode_count(SlpOp::Mul));
  };
  std::cerr << "# target value program: " << counts(value) << "\n"
            << value.dump() << "# value+jacobian program: " << counts(full) << "\n"
            << full.dump();
}

struct ReportEntry {
  ComplexVector point;
  std::string status;
  double residual = 0.0;
  int steps = 0;
};

// Hand-rolled emitter: 17 significant digits, fixed field order, and a zero
// wall_time_s so reports with equal seeds compare byte-for-byte.
std::string report_json(Complex gamma, const std::vector<ReportEntry>& entries, int failures,
                        int duplicates) {
  std::string out = "{\n";
  out += "  \"gamma\": [" + format_real(gamma.real()) + ", " + format_real(gamma.imag()) + "],\n";
  out += "  \"solutions\": [";
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const ReportEntry& e = entries[k];
    out += k == 0 ? "\n" : ",\n";
    out += "    {\"point\": [";
    for (std::size_t c = 0; c < e.point.size(); ++c) {
      if (c > 0) out += ", ";
      out += "[" + format_real(e.point[c].real()) + ", " + format_real(e.point[c].imag()) + "]";
    }
    out += "], \"status\": \"" + e.status + "\", \"residual\": " + format_real(e.residual) +
           ", \"steps\": " + std::to_string(e.steps) + "}";
  }
  if (!entries.empty()) out += "\n  ";
  out += "],\n";
  out += "  \"failures\": " + std::to_string(failures) + ",\n";
  out += "  \"duplicates\": " + std::to_string(duplicates) + ",\n";
  out += "  \"wall_time_s\": 0\n";
  out += "}\n";
  return out;
}

std::string render_failure(const PathStatus& status) {
  char buf[64];
  switch (status.kind) {
    case PathStatusKind::MinStepFailure:
      std::snprintf(buf, sizeof buf, "[M,t=%.6g]", status.t_fail);
      break;
    case PathStatusKind::Infinity:
      std::snprintf(buf, sizeof buf, "[I,t=%.6g]", status.t_fail);
      break;
    case PathStatusKind::NumericalFailure:
      std::snprintf(buf, sizeof buf, "[N,t=%.6g]", status.t_fail);
      break;
    case PathStatusKind::SingularEndpoint:
      std::snprintf(buf, sizeof buf, "[S]");
      break;
    case PathStatusKind::Regular:
      buf[0] = '\0';
      break;
  }
  return buf;
}

std::vector<ReportEntry> entries_from_solve(const SolveResult& res) {
  std::vector<ReportEntry> entries;
  entries.reserve(res.solutions.size());
  for (const Solution& s : res.solutions)
    entries.push_back({s.point, to_string(s.status.kind), s.residual, s.steps});
  return entries;
}

void print_solve_human(const SolveResult& res, double wall_seconds) {
  std::cout << "gamma: " << format_complex(res.gamma) << "\n";
  std::cout << "paths: " << res.total_paths << "  regular: "
            << res.total_paths - res.failed_paths << "  failed: " << res.failed_paths
            << "  duplicates: " << res.duplicate_paths << "\n";
  std::cout << "solutions: " << res.solutions.size() << "\n";
  for (std::size_t k = 0; k < res.solutions.size(); ++k) {
    const Solution& s = res.solutions[k];
    std::printf("  %3zu  %s  residual=%.3g  steps=%d\n", k + 1, format_point(s.point).c_str(),
                s.residual, s.steps);
  }
  std::printf("wall time: %.3f s\n", wall_seconds);
}

int run_solve(const std::string& file, const Options& opts) {
  const PolynomialSystem sys = load_square_system(file);
  if (opts.dump_slp) dump_target_program(sys);
  const auto t0 = std::chrono::steady_clock::now();
  const SolveResult res = solve_system(sys, opts.seed, settings_from(opts), opts.threads);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (opts.json)
    std::cout << report_json(res.gamma, entries_from_solve(res), res.failed_paths,
                             res.duplicate_paths);
  else
    print_solve_human(res, wall);
  return res.failed_paths > 0 ? 1 : 0;
}

int run_track(const std::string& start_file, const std::string& target_file,
              const std::string& solutions_file, const Options& opts) {
  const PolynomialSystem start = load_square_system(start_file);
  const PolynomialSystem target = load_square_system(target_file);
  const auto points = parse_points(slurp(solutions_file), start.var_count());
  const Complex gamma =
      opts.gamma == "random" ? random_gamma(opts.seed) : parse_complex(opts.gamma);
  if (opts.dump_slp) dump_target_program(target);

  const auto t0 = std::chrono::steady_clock::now();
  const auto paths = track(start, target, points, gamma, settings_from(opts), opts.threads);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  int failures = 0;
  for (const TrackedPath& p : paths)
    if (!p.status.is_regular()) ++failures;

  if (opts.json) {
    std::vector<ReportEntry> entries;
    entries.reserve(paths.size());
    for (const TrackedPath& p : paths)
      entries.push_back({p.end_point, to_string(p.status.kind), p.residual, p.steps_taken});
    std::cout << report_json(gamma, entries, failures, 0);
  } else {
    std::cout << "gamma: " << format_complex(gamma) << "\n";
    for (std::size_t k = 0; k < paths.size(); ++k) {
      const TrackedPath& p = paths[k];
      if (p.status.is_regular())
        std::printf("  path %zu: %s  residual=%.3g  steps=%d\n", k + 1,
                    format_point(p.end_point).c_str(), p.residual, p.steps_taken);
      else
        std::printf("  path %zu: %s\n", k + 1, render_failure(p.status).c_str());
    }
    std::printf("wall time: %.3f s\n", wall);
  }
  return failures > 0 ? 1 : 0;
}

int run_refine(const std::string& file, const std::string& solutions_file, const Options& opts) {
  const PolynomialSystem sys = load_square_system(file);
  const auto points = parse_points(slurp(solutions_file), sys.var_count());
  int failures = 0;
  std::vector<ReportEntry> entries;
  for (const ComplexVector& p : points) {
    const RefineResult r = refine(sys, p, opts.tolerance);
    const double residual = inf_norm(evaluate_system(sys, r.point));
    if (!r.converged) ++failures;
    entries.push_back({r.point, r.converged ? "converged" : "not_converged", residual,
                       r.iterations});
  }
  if (opts.json) {
    std::cout << report_json(Complex(1.0, 0.0), entries, failures, 0);
  } else {
    for (std::size_t k = 0; k < entries.size(); ++k)
      std::printf("  point %zu: %s  %s  residual=%.3g  iterations=%d\n", k + 1,
                  format_point(entries[k].point).c_str(), entries[k].status.c_str(),
                  entries[k].residual, entries[k].steps);
  }
  return failures > 0 ? 1 : 0;
}

int run_bench(const std::string& family, const std::vector<int>& params,
              const std::string& dump_system_path, const Options& opts) {
  PolynomialSystem target;
  SolveResult res;
  std::string label;
  const TrackerSettings settings = settings_from(opts);

  const auto t0 = std::chrono::steady_clock::now();
  if (family == "katsura") {
    if (params.size() != 1) throw std::runtime_error("usage: bench katsura <n>");
    target = katsura(params[0]);
    label = "katsura n=" + std::to_string(params[0]);
    if (!dump_system_path.empty()) std::ofstream(dump_system_path) << print_system(target);
    res = solve_system(target, opts.seed, settings, opts.threads);
  } else if (family == "random") {
    if (params.size() != 2) throw std::runtime_error("usage: bench random <n> <d>");
    target = random_dense(params[0], params[1], opts.seed);
    label = "random n=" + std::to_string(params[0]) + " d=" + std::to_string(params[1]);
    if (!dump_system_path.empty()) std::ofstream(dump_system_path) << print_system(target);
    res = solve_system(target, opts.seed, settings, opts.threads);
  } else if (family == "gevp") {
    if (params.size() != 1) throw std::runtime_error("usage: bench gevp <n>");
    const GevpInstance inst = gevp(params[0], opts.seed);
    target = inst.target;
    label = "gevp n=" + std::to_string(params[0]);
    if (!dump_system_path.empty()) std::ofstream(dump_system_path) << print_system(target);
    res = solve_with_start(inst.start, inst.target, inst.start_solutions,
                           random_gamma(opts.seed ^ kGammaSeedSalt), settings, opts.threads);
  } else {
    throw std::runtime_error("unknown benchmark family '" + family + "'");
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (opts.dump_slp) dump_target_program(target);

  if (opts.json) {
    std::cout << report_json(res.gamma, entries_from_solve(res), res.failed_paths,
                             res.duplicate_paths);
  } else {
    std::cout << "family: " << label << "\n";
    std::cout << "paths: " << res.total_paths << "  solutions: " << res.solutions.size()
              << "  failed: " << res.failed_paths << "  duplicates: " << res.duplicate_paths
              << "\n";
    std::printf("wall time: %.3f s\n", wall);
  }
  return res.failed_paths > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polytrack: finds all isolated complex solutions of square polynomial systems "
               "by homotopy continuation"};
  app.require_subcommand(1);

  Options solve_opts, track_opts, refine_opts, bench_opts;
  std::string solve_file;
  std::string track_start, track_target, track_solutions;
  std::string refine_file, refine_solutions;
  std::string bench_family, bench_dump_system;
  std::vector<int> bench_params;

  CLI::App* solve = app.add_subcommand("solve", "solve a system from a total-degree start");
  solve->add_option("file", solve_file, "system file")->required();
  add_common_flags(solve, solve_opts);

  CLI::App* track_cmd = app.add_subcommand("track", "track user-supplied start solutions");
  track_cmd->add_option("start", track_start, "start system file")->required();
  track_cmd->add_option("target", track_target, "target system file")->required();
  track_cmd->add_option("solutions", track_solutions, "start solutions file")->required();
  track_cmd->add_option("--gamma", track_opts.gamma, "homotopy gamma: a+bi or 'random' (default 1)");
  add_common_flags(track_cmd, track_opts);

  CLI::App* refine_cmd = app.add_subcommand("refine", "Newton-polish approximate solutions");
  refine_cmd->add_option("file", refine_file, "system file")->required();
  refine_cmd->add_option("solutions", refine_solutions, "points file")->required();
  refine_cmd->add_option("--tol", refine_opts.tolerance, "refinement tolerance")
      ->check(CLI::PositiveNumber);
  add_common_flags(refine_cmd, refine_opts);

  CLI::App* bench = app.add_subcommand("bench", "generate and solve a benchmark family");
  bench->add_option("family", bench_family, "katsura | random | gevp")->required();
  bench->add_option("params", bench_params, "family parameters");
  bench->add_option("--dump-system", bench_dump_system, "write the generated system to a file");
  add_common_flags(bench, bench_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return run_solve(solve_file, solve_opts);
    if (track_cmd->parsed()) return run_track(track_start, track_target, track_solutions, track_opts);
    if (refine_cmd->parsed()) return run_refine(refine_file, refine_solutions, refine_opts);
    if (bench->parsed()) return run_bench(bench_family, bench_params, bench_dump_system, bench_opts);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
