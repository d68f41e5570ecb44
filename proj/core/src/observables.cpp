#include "sfctn/observables.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "format.hpp"
#include "json.hpp"
#include "sfctn/mpo.hpp"

namespace sfctn {

std::string_view to_string(EngineKind e) {
  switch (e) {
    case EngineKind::ed:
      return "ed";
    case EngineKind::mps:
      return "mps";
    case EngineKind::ttn:
      return "ttn";
  }
  return "unknown";
}

EngineKind parse_engine_kind(std::string_view text) {
  if (text == "ed") return EngineKind::ed;
  if (text == "mps" || text == "dmrg") return EngineKind::mps;
  if (text == "ttn") return EngineKind::ttn;
  throw std::invalid_argument("unknown engine '" + std::string(text) + "'");
}

MagnetizationMap::MagnetizationMap(int n)
    : MagnetizationMap(n, std::vector<double>(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0)) {}

MagnetizationMap::MagnetizationMap(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  if (n < 1 || values_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw std::invalid_argument("MagnetizationMap: expected n*n values");
  }
}

double MagnetizationMap::at(LatticeCoord c) const {
  if (c.x < 0 || c.y < 0 || c.x >= n_ || c.y >= n_) throw std::out_of_range("MagnetizationMap: bad site");
  return values_[static_cast<std::size_t>(c.y * n_ + c.x)];
}

double& MagnetizationMap::at(LatticeCoord c) {
  if (c.x < 0 || c.y < 0 || c.x >= n_ || c.y >= n_) throw std::out_of_range("MagnetizationMap: bad site");
  return values_[static_cast<std::size_t>(c.y * n_ + c.x)];
}

std::vector<double> StaggeredSign::chain_weights(const SiteMapping& mapping) const {
  const double scale = 1.0 / static_cast<double>(mapping.num_sites());
  std::vector<double> w;
  w.reserve(mapping.num_sites());
  for (const auto& c : mapping.order()) w.push_back(at(c) * scale);
  return w;
}

namespace {

template <typename LocalX>
StaggeredMagnetization finish(double squared, const std::vector<double>& w, LocalX local_x) {
  StaggeredMagnetization s;
  s.squared = std::max(0.0, squared);
  s.root = std::sqrt(s.squared);
  for (std::size_t mu = 0; mu < w.size(); ++mu) s.signed_sum += w[mu] * local_x(mu);
  return s;
}

template <typename LocalZ>
MagnetizationMap pull_back(const SiteMapping& mapping, LocalZ local_z) {
  MagnetizationMap map(mapping.n());
  for (ChainIndex mu = 0; mu < mapping.num_sites(); ++mu) map.at(mapping.coord(mu)) = local_z(mu);
  return map;
}

void check_size(std::size_t state_sites, const SiteMapping& mapping) {
  if (state_sites != mapping.num_sites()) throw std::invalid_argument("state and mapping sizes differ");
}

}  // namespace

StaggeredMagnetization staggered_magnetization(const MpsState& state, const SiteMapping& mapping) {
  check_size(state.num_sites(), mapping);
  const auto w = StaggeredSign{mapping.n()}.chain_weights(mapping);
  const double sq = mps_expectation(state, weighted_x_square_mpo(w));
  return finish(sq, w, [&](std::size_t mu) { return mps_local_expectation(state, mu, PauliAxis::x); });
}

StaggeredMagnetization staggered_magnetization(const TtnState& state, const SiteMapping& mapping) {
  check_size(state.num_leaves(), mapping);
  const auto w = StaggeredSign{mapping.n()}.chain_weights(mapping);
  const double sq = ttn_weighted_x_square(state, w);
  return finish(sq, w, [&](std::size_t mu) { return ttn_local_expectation(state, mu, PauliAxis::x); });
}

StaggeredMagnetization staggered_magnetization(const EdGroundState& state, const SiteMapping& mapping) {
  check_size(state.num_sites, mapping);
  const auto w = StaggeredSign{mapping.n()}.chain_weights(mapping);
  const double sq = ed_weighted_x_square(state, Eigen::Map<const Vector>(w.data(), static_cast<Eigen::Index>(w.size())));
  return finish(sq, w, [&](std::size_t mu) { return ed_expectation(state, mu, PauliAxis::x); });
}

MagnetizationMap local_z_map(const MpsState& state, const SiteMapping& mapping) {
  check_size(state.num_sites(), mapping);
  return pull_back(mapping, [&](ChainIndex mu) { return mps_local_expectation(state, mu, PauliAxis::z); });
}

MagnetizationMap local_z_map(const TtnState& state, const SiteMapping& mapping) {
  check_size(state.num_leaves(), mapping);
  return pull_back(mapping, [&](ChainIndex mu) { return ttn_local_expectation(state, mu, PauliAxis::z); });
}

MagnetizationMap local_z_map(const EdGroundState& state, const SiteMapping& mapping) {
  check_size(state.num_sites, mapping);
  return pull_back(mapping, [&](ChainIndex mu) { return ed_expectation(state, mu, PauliAxis::z); });
}

MagnetizationMap magnetization_difference(const MagnetizationMap& a, const MagnetizationMap& b) {
  if (a.n() != b.n()) throw std::invalid_argument("magnetization_difference: lattice sizes differ");
  std::vector<double> d(a.values().size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::abs(a.values()[i] - b.values()[i]);
  return MagnetizationMap(a.n(), std::move(d));
}

double energy_difference(const RunResult& snake, const RunResult& hilbert) {
  if (snake.n != hilbert.n || snake.lambda != hilbert.lambda || snake.boundary != hilbert.boundary ||
      snake.engine != hilbert.engine || snake.m != hilbert.m) {
    throw std::invalid_argument("energy_difference: runs differ in n, lambda, boundary, engine or m");
  }
  if (snake.mapping != CurveKind::snake || hilbert.mapping != CurveKind::hilbert) {
    throw std::invalid_argument("energy_difference: expected a snake run and a hilbert run");
  }
  return snake.energy_density - hilbert.energy_density;
}

bool on_quadrant_boundary(int n, LatticeCoord c) {
  const int lo = n / 2 - 1;
  const int hi = n / 2;
  return c.x == lo || c.x == hi || c.y == lo || c.y == hi;
}

RegionMeans region_means(const MagnetizationMap& map) {
  double sum_bulk = 0.0, sum_edge = 0.0;
  int count_bulk = 0, count_edge = 0;
  for (int y = 0; y < map.n(); ++y) {
    for (int x = 0; x < map.n(); ++x) {
      const LatticeCoord c{x, y};
      if (on_quadrant_boundary(map.n(), c)) {
        sum_edge += map.at(c);
        ++count_edge;
      } else {
        sum_bulk += map.at(c);
        ++count_bulk;
      }
    }
  }
  RegionMeans r;
  if (count_bulk > 0) r.bulk = sum_bulk / count_bulk;
  if (count_edge > 0) r.boundary = sum_edge / count_edge;
  return r;
}

std::string map_to_csv(const MagnetizationMap& map) {
  std::string out;
  for (int y = 0; y < map.n(); ++y) {
    for (int x = 0; x < map.n(); ++x) {
      if (x > 0) out += ',';
      out += detail::format_real(map.at({x, y}));
    }
    out += '\n';
  }
  return out;
}

MagnetizationMap map_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<double> values;
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) values.push_back(std::stod(cell));
    ++rows;
  }
  return MagnetizationMap(rows, std::move(values));
}

std::string map_to_json(const MagnetizationMap& map) {
  nlohmann::ordered_json j;
  j["n"] = map.n();
  j["values"] = map.values();
  return j.dump();
}

MagnetizationMap map_from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  return MagnetizationMap(j.at("n").get<int>(), j.at("values").get<std::vector<double>>());
}

}  // namespace sfctn
