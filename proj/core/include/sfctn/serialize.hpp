#pragma once

// JSON readers and writers for run results, traces and state checkpoints.
// Every writer has a matching reader; floats round-trip exactly.

#include <cstdint>
#include <string>
#include <string_view>

#include "sfctn/dmrg.hpp"
#include "sfctn/mps.hpp"
#include "sfctn/run_result.hpp"
#include "sfctn/ttn.hpp"

namespace sfctn {

/// FNV-1a 64-bit, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Canonical form: fixed key order, wall time omitted.
std::string run_result_to_json(const RunResult& r);
RunResult run_result_from_json(std::string_view text);

std::string trace_to_json(const ConvergenceTrace& trace, double wall_seconds);
ConvergenceTrace trace_from_json(std::string_view text);

std::string checkpoint_to_json(const MpsState& state, std::string_view config_hash);
std::string checkpoint_to_json(const TtnState& state, std::string_view config_hash);
/// Throws std::invalid_argument if the checkpoint is for the other engine or
/// its config hash differs from `expected_hash` (unless that is empty).
MpsState mps_from_checkpoint(std::string_view text, std::string_view expected_hash = {});
TtnState ttn_from_checkpoint(std::string_view text, std::string_view expected_hash = {});

}  // namespace sfctn
