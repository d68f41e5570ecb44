#pragma once

// Parameter-grid experiments: one solver run per grid point, results and
// plot-ready series written below an output directory.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sfctn/dmrg.hpp"
#include "sfctn/observables.hpp"
#include "sfctn/run_result.hpp"

namespace sfctn {

enum class ExperimentKind {
  energy_vs_m,
  delta_e_vs_n,
  delta_e_vs_lambda,
  magnetization_vs_lambda,
  distance_dist,
  local_z_diff,
  map_dump,
  ed_reference,
};

std::string_view to_string(ExperimentKind k);
ExperimentKind parse_experiment_kind(std::string_view text);

struct SolverSettings {
  int num_sweeps = 30;
  double energy_tol = 1e-9;
  double lanczos_tol = 1e-10;
  std::size_t initial_bond = 8;
};

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::energy_vs_m;
  std::vector<int> n;
  std::vector<double> lambda;
  std::vector<std::size_t> m;
  std::vector<CurveKind> mappings;
  std::vector<EngineKind> engines;
  std::vector<Boundary> boundaries;
  std::filesystem::path out_dir = "results";
  std::uint64_t seed = 1;
  int workers = 1;
  SolverSettings solver;
};

/// Grids matching the figure each experiment targets, sized for a desktop.
ExperimentSpec default_spec(ExperimentKind kind);

/// Throws std::invalid_argument for empty grids, n < 2, Hilbert with a
/// non-power-of-two n, workers < 1 or m < 1 on a tensor-network engine.
void validate(const ExperimentSpec& spec);

/// Overrides fields of `base` with the keys present in a JSON object:
/// kind, n, lambda, m, mapping, engine, boundary, out, seed, workers,
/// sweeps, energy_tol, lanczos_tol, initial_bond.
ExperimentSpec spec_from_json(std::string_view text, ExperimentSpec base);
std::string spec_to_json(const ExperimentSpec& spec);

struct GridPoint {
  int n = 0;
  double lambda = 0.0;
  std::size_t m = 0;
  CurveKind mapping = CurveKind::hilbert;
  EngineKind engine = EngineKind::mps;
  Boundary boundary = Boundary::open;
};

/// Solver grid in canonical order (n, boundary, engine, lambda, m, mapping).
/// ED points ignore m. Empty for the file-only kinds.
std::vector<GridPoint> expand_grid(const ExperimentSpec& spec);

std::string point_id(const GridPoint& p);
std::string config_hash(const GridPoint& p, const ExperimentSpec& spec);

struct PointOptions {
  bool want_z_map = false;
  bool want_checkpoint = false;
  std::string resume;  // checkpoint JSON of the same engine and size to start from
};

struct PointOutput {
  RunResult result;
  ConvergenceTrace trace;
  std::optional<MagnetizationMap> z_map;
  std::string checkpoint;
};

/// Runs one grid point; solver failures are captured in result.ok/error.
PointOutput run_point(const GridPoint& p, const ExperimentSpec& spec, const PointOptions& options = {});

/// Runs the grid on `workers` threads. Output order is grid order, so the
/// result does not depend on the worker count.
std::vector<PointOutput> run_grid(const ExperimentSpec& spec, int workers);
std::vector<RunResult> parallel_schedule(const ExperimentSpec& spec, int workers);

struct ExperimentReport {
  std::vector<RunResult> results;
  std::vector<std::filesystem::path> files;
  std::size_t failures = 0;
};

/// run_grid plus files: results.json, runs/<id>.json, runs/<id>.trace.json
/// and the per-figure CSV series. Throws std::runtime_error if the output
/// directory cannot be written.
ExperimentReport run_experiment(const ExperimentSpec& spec);

std::string results_to_json(ExperimentKind kind, const std::vector<RunResult>& results);
std::vector<RunResult> results_from_json(std::string_view text);

}  // namespace sfctn
