#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "sfctn/model.hpp"
#include "sfctn/spacefill.hpp"

namespace sfctn {

enum class EngineKind { ed, mps, ttn };

std::string_view to_string(EngineKind e);
EngineKind parse_engine_kind(std::string_view text);

/// Outcome of one solver run on one grid point.
struct RunResult {
  std::string id;  // stable per grid point, used for per-run file names
  int n = 0;
  double lambda = 0.0;
  Boundary boundary = Boundary::open;
  CurveKind mapping = CurveKind::hilbert;
  EngineKind engine = EngineKind::mps;
  std::size_t m = 0;  // 0 for ED
  std::uint64_t seed = 0;

  bool ok = true;
  std::string error;

  double energy = 0.0;
  double energy_density = 0.0;  // energy / n^2
  double residual = 0.0;        // ED Lanczos residual; 0 for the tensor networks
  bool converged = false;
  std::size_t sweeps = 0;
  double staggered_magnetization = 0.0;  // sqrt(M_s^2)
  double signed_magnetization = 0.0;     // (1/n^2) sum zeta <X>

  double wall_seconds = 0.0;  // written to the trace file only
  std::string config_hash;
  std::string trace_ref;
};

}  // namespace sfctn
