#include "sfctn/serialize.hpp"

#include <fmt/format.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace sfctn {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

std::string run_result_to_json(const RunResult& r) {
  ordered_json j;
  j["id"] = r.id;
  j["n"] = r.n;
  j["lambda"] = r.lambda;
  j["boundary"] = to_string(r.boundary);
  j["mapping"] = to_string(r.mapping);
  j["engine"] = to_string(r.engine);
  j["m"] = r.m;
  j["seed"] = r.seed;
  j["ok"] = r.ok;
  j["error"] = r.error;
  j["energy"] = r.energy;
  j["energy_density"] = r.energy_density;
  j["residual"] = r.residual;
  j["converged"] = r.converged;
  j["sweeps"] = r.sweeps;
  j["staggered_magnetization"] = r.staggered_magnetization;
  j["signed_magnetization"] = r.signed_magnetization;
  j["config_hash"] = r.config_hash;
  j["trace_ref"] = r.trace_ref;
  return j.dump();
}

RunResult run_result_from_json(std::string_view text) {
  const auto j = json::parse(text);
  RunResult r;
  r.id = j.at("id").get<std::string>();
  r.n = j.at("n").get<int>();
  r.lambda = j.at("lambda").get<double>();
  r.boundary = parse_boundary(j.at("boundary").get<std::string>());
  r.mapping = parse_curve_kind(j.at("mapping").get<std::string>());
  r.engine = parse_engine_kind(j.at("engine").get<std::string>());
  r.m = j.at("m").get<std::size_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.ok = j.at("ok").get<bool>();
  r.error = j.at("error").get<std::string>();
  r.energy = j.at("energy").get<double>();
  r.energy_density = j.at("energy_density").get<double>();
  r.residual = j.at("residual").get<double>();
  r.converged = j.at("converged").get<bool>();
  r.sweeps = j.at("sweeps").get<std::size_t>();
  r.staggered_magnetization = j.at("staggered_magnetization").get<double>();
  r.signed_magnetization = j.at("signed_magnetization").get<double>();
  r.config_hash = j.at("config_hash").get<std::string>();
  r.trace_ref = j.at("trace_ref").get<std::string>();
  return r;
}

std::string trace_to_json(const ConvergenceTrace& trace, double wall_seconds) {
  ordered_json j;
  j["energies"] = trace.energies;
  j["max_truncated_weight"] = trace.max_truncated_weight;
  j["sweep_seconds"] = trace.wall_seconds;
  j["converged"] = trace.converged;
  j["wall_seconds"] = wall_seconds;
  return j.dump(1);
}

ConvergenceTrace trace_from_json(std::string_view text) {
  const auto j = json::parse(text);
  ConvergenceTrace t;
  t.energies = j.at("energies").get<std::vector<double>>();
  t.max_truncated_weight = j.at("max_truncated_weight").get<std::vector<double>>();
  t.wall_seconds = j.at("sweep_seconds").get<std::vector<double>>();
  t.converged = j.at("converged").get<bool>();
  return t;
}

namespace {

ordered_json tensor_json(const DenseTensor& t) {
  ordered_json j;
  j["shape"] = std::vector<std::size_t>(t.shape().begin(), t.shape().end());
  j["data"] = std::vector<double>(t.data().begin(), t.data().end());
  return j;
}

DenseTensor tensor_from(const json& j) {
  return DenseTensor(j.at("shape").get<std::vector<std::size_t>>(), j.at("data").get<std::vector<double>>());
}

json open_checkpoint(std::string_view text, std::string_view engine, std::string_view expected_hash) {
  auto j = json::parse(text);
  if (j.at("engine").get<std::string>() != engine) {
    throw std::invalid_argument("checkpoint is not a " + std::string(engine) + " state");
  }
  if (!expected_hash.empty() && j.at("config_hash").get<std::string>() != expected_hash) {
    throw std::invalid_argument("checkpoint config hash mismatch");
  }
  return j;
}

}  // namespace

std::string checkpoint_to_json(const MpsState& state, std::string_view config_hash) {
  ordered_json j;
  j["engine"] = "mps";
  j["config_hash"] = config_hash;
  j["center"] = state.center();
  auto tensors = ordered_json::array();
  for (std::size_t k = 0; k < state.num_sites(); ++k) tensors.push_back(tensor_json(state.site_tensor(k)));
  j["tensors"] = std::move(tensors);
  return j.dump();
}

std::string checkpoint_to_json(const TtnState& state, std::string_view config_hash) {
  ordered_json j;
  j["engine"] = "ttn";
  j["config_hash"] = config_hash;
  j["num_leaves"] = state.num_leaves();
  j["center"] = state.center();
  auto tensors = ordered_json::array();
  for (TtnNode h = state.first_node(); h < state.end_node(); ++h) tensors.push_back(tensor_json(state.node(h)));
  j["tensors"] = std::move(tensors);
  return j.dump();
}

MpsState mps_from_checkpoint(std::string_view text, std::string_view expected_hash) {
  const auto j = open_checkpoint(text, "mps", expected_hash);
  std::vector<DenseTensor> tensors;
  for (const auto& t : j.at("tensors")) tensors.push_back(tensor_from(t));
  auto state = MpsState::from_site_tensors(tensors);
  state.move_center(j.at("center").get<std::size_t>());
  return state;
}

TtnState ttn_from_checkpoint(std::string_view text, std::string_view expected_hash) {
  const auto j = open_checkpoint(text, "ttn", expected_hash);
  std::vector<DenseTensor> nodes;
  for (const auto& t : j.at("tensors")) nodes.push_back(tensor_from(t));
  return TtnState::from_nodes(j.at("num_leaves").get<std::size_t>(), std::move(nodes),
                              j.at("center").get<TtnNode>());
}

}  // namespace sfctn
