#include "sfctn/experiment.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "format.hpp"
#include "json.hpp"
#include "sfctn/ed.hpp"
#include "sfctn/model.hpp"
#include "sfctn/mpo.hpp"
#include "sfctn/serialize.hpp"
#include "sfctn/ttn.hpp"

namespace sfctn {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::pair<ExperimentKind, std::string_view> kKindNames[] = {
    {ExperimentKind::energy_vs_m, "energy_vs_m"},
    {ExperimentKind::delta_e_vs_n, "delta_e_vs_n"},
    {ExperimentKind::delta_e_vs_lambda, "delta_e_vs_lambda"},
    {ExperimentKind::magnetization_vs_lambda, "magnetization_vs_lambda"},
    {ExperimentKind::distance_dist, "distance_dist"},
    {ExperimentKind::local_z_diff, "local_z_diff"},
    {ExperimentKind::map_dump, "map_dump"},
    {ExperimentKind::ed_reference, "ed_reference"},
};

std::vector<double> lambda_range(double start, double stop, double step) {
  std::vector<double> v;
  const auto count = static_cast<int>(std::llround((stop - start) / step));
  for (int i = 0; i <= count; ++i) v.push_back(start + step * i);
  return v;
}

bool file_only(ExperimentKind k) {
  return k == ExperimentKind::distance_dist || k == ExperimentKind::map_dump;
}

bool needs_both_mappings(ExperimentKind k) {
  return k == ExperimentKind::delta_e_vs_n || k == ExperimentKind::delta_e_vs_lambda ||
         k == ExperimentKind::local_z_diff;
}

std::string fmt_num(double v) { return fmt::format("{}", v); }

}  // namespace

std::string_view to_string(ExperimentKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  for (const auto& [kind, name] : kKindNames) {
    if (name == text) return kind;
  }
  throw std::invalid_argument("unknown experiment kind '" + std::string(text) + "'");
}

ExperimentSpec default_spec(ExperimentKind kind) {
  ExperimentSpec s;
  s.kind = kind;
  s.mappings = {CurveKind::hilbert, CurveKind::snake};
  s.boundaries = {Boundary::open};
  switch (kind) {
    case ExperimentKind::energy_vs_m:
      s.n = {4, 8};
      s.lambda = {2.9};
      s.m = {10, 20, 30};
      s.engines = {EngineKind::mps, EngineKind::ttn};
      break;
    case ExperimentKind::delta_e_vs_n:
      s.n = {4, 8};
      s.lambda = {2.9};
      s.m = {20};
      s.engines = {EngineKind::mps, EngineKind::ttn};
      break;
    case ExperimentKind::delta_e_vs_lambda:
      s.n = {8};
      s.lambda = lambda_range(0.0, 4.0, 0.25);
      s.m = {20};
      s.engines = {EngineKind::ttn};
      break;
    case ExperimentKind::magnetization_vs_lambda:
      s.n = {8};
      s.lambda = lambda_range(0.5, 4.5, 0.25);
      s.m = {25};
      s.mappings = {CurveKind::hilbert};
      s.engines = {EngineKind::ttn};
      break;
    case ExperimentKind::distance_dist:
      s.n = {16, 32};
      s.lambda = {0.0};
      s.m = {1};
      s.engines = {EngineKind::mps};
      break;
    case ExperimentKind::local_z_diff:
      s.n = {8};
      s.lambda = {2.9};
      s.m = {50};
      s.engines = {EngineKind::ttn};
      break;
    case ExperimentKind::map_dump:
      s.n = {8};
      s.lambda = {0.0};
      s.m = {1};
      s.engines = {EngineKind::mps};
      break;
    case ExperimentKind::ed_reference:
      s.n = {2, 4};
      s.lambda = {0.0, 1.0, 2.9, 6.0};
      s.m = {0};
      s.engines = {EngineKind::ed};
      break;
  }
  return s;
}

void validate(const ExperimentSpec& spec) {
  if (spec.n.empty() || spec.lambda.empty() || spec.m.empty() || spec.mappings.empty() ||
      spec.engines.empty() || spec.boundaries.empty()) {
    throw std::invalid_argument("experiment grids must be non-empty");
  }
  if (spec.workers < 1) throw std::invalid_argument("workers must be >= 1");
  const bool has_hilbert =
      std::find(spec.mappings.begin(), spec.mappings.end(), CurveKind::hilbert) != spec.mappings.end();
  const bool has_ttn = std::find(spec.engines.begin(), spec.engines.end(), EngineKind::ttn) != spec.engines.end();
  for (const int n : spec.n) {
    if (n < 2) throw std::invalid_argument("lattice size must be >= 2, got " + std::to_string(n));
    const bool pow2 = is_power_of_two(static_cast<std::size_t>(n));
    if (has_hilbert && !pow2) {
      throw std::invalid_argument("hilbert mapping needs a power-of-two n, got " + std::to_string(n));
    }
    if (!file_only(spec.kind) && has_ttn && !pow2) {
      throw std::invalid_argument("ttn engine needs a power-of-two n, got " + std::to_string(n));
    }
  }
  for (const double l : spec.lambda) {
    if (!std::isfinite(l)) throw std::invalid_argument("lambda must be finite");
  }
  if (!file_only(spec.kind)) {
    for (const auto e : spec.engines) {
      if (e == EngineKind::ed) continue;
      for (const auto m : spec.m) {
        if (m < 1) throw std::invalid_argument("bond dimension must be >= 1");
      }
    }
  }
  if (needs_both_mappings(spec.kind) &&
      (spec.mappings.size() < 2 || !has_hilbert ||
       std::find(spec.mappings.begin(), spec.mappings.end(), CurveKind::snake) == spec.mappings.end())) {
    throw std::invalid_argument(std::string(to_string(spec.kind)) + " needs both hilbert and snake mappings");
  }
  if (spec.solver.num_sweeps < 1 || !(spec.solver.energy_tol > 0.0) || !(spec.solver.lanczos_tol > 0.0)) {
    throw std::invalid_argument("invalid solver settings");
  }
}

namespace {

template <typename T, typename Parse>
std::vector<T> list_of(const json& j, Parse parse) {
  std::vector<T> out;
  if (j.is_array()) {
    for (const auto& v : j) out.push_back(parse(v));
  } else {
    out.push_back(parse(j));
  }
  return out;
}

}  // namespace

ExperimentSpec spec_from_json(std::string_view text, ExperimentSpec base) {
  const auto j = json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("experiment config must be a JSON object");
  auto str = [](const json& v) { return v.get<std::string>(); };
  if (j.contains("kind")) base.kind = parse_experiment_kind(str(j["kind"]));
  if (j.contains("n")) base.n = list_of<int>(j["n"], [](const json& v) { return v.get<int>(); });
  if (j.contains("lambda")) base.lambda = list_of<double>(j["lambda"], [](const json& v) { return v.get<double>(); });
  if (j.contains("m")) base.m = list_of<std::size_t>(j["m"], [](const json& v) { return v.get<std::size_t>(); });
  if (j.contains("mapping")) {
    base.mappings = list_of<CurveKind>(j["mapping"], [&](const json& v) { return parse_curve_kind(str(v)); });
  }
  if (j.contains("engine")) {
    base.engines = list_of<EngineKind>(j["engine"], [&](const json& v) { return parse_engine_kind(str(v)); });
  }
  if (j.contains("boundary")) {
    base.boundaries = list_of<Boundary>(j["boundary"], [&](const json& v) { return parse_boundary(str(v)); });
  }
  if (j.contains("out")) base.out_dir = str(j["out"]);
  if (j.contains("seed")) base.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("workers")) base.workers = j["workers"].get<int>();
  if (j.contains("sweeps")) base.solver.num_sweeps = j["sweeps"].get<int>();
  if (j.contains("energy_tol")) base.solver.energy_tol = j["energy_tol"].get<double>();
  if (j.contains("lanczos_tol")) base.solver.lanczos_tol = j["lanczos_tol"].get<double>();
  if (j.contains("initial_bond")) base.solver.initial_bond = j["initial_bond"].get<std::size_t>();
  return base;
}

std::string spec_to_json(const ExperimentSpec& spec) {
  ordered_json j;
  j["kind"] = to_string(spec.kind);
  j["n"] = spec.n;
  j["lambda"] = spec.lambda;
  j["m"] = spec.m;
  auto names = [](const auto& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.emplace_back(to_string(x));
    return out;
  };
  j["mapping"] = names(spec.mappings);
  j["engine"] = names(spec.engines);
  j["boundary"] = names(spec.boundaries);
  j["out"] = spec.out_dir.string();
  j["seed"] = spec.seed;
  j["workers"] = spec.workers;
  j["sweeps"] = spec.solver.num_sweeps;
  j["energy_tol"] = spec.solver.energy_tol;
  j["lanczos_tol"] = spec.solver.lanczos_tol;
  j["initial_bond"] = spec.solver.initial_bond;
  return j.dump(1);
}

std::vector<GridPoint> expand_grid(const ExperimentSpec& spec) {
  std::vector<GridPoint> grid;
  if (file_only(spec.kind)) return grid;
  std::vector<EngineKind> engines = spec.engines;
  if (spec.kind == ExperimentKind::ed_reference) engines = {EngineKind::ed};
  for (const int n : spec.n) {
    for (const auto b : spec.boundaries) {
      for (const auto e : engines) {
        for (const double l : spec.lambda) {
          const std::vector<std::size_t> ms = e == EngineKind::ed ? std::vector<std::size_t>{0} : spec.m;
          for (const auto m : ms) {
            for (const auto k : spec.mappings) grid.push_back({n, l, m, k, e, b});
          }
        }
      }
    }
  }
  return grid;
}

std::string point_id(const GridPoint& p) {
  return fmt::format("{}_{}_{}_n{}_lambda{}_m{}", to_string(p.engine), to_string(p.mapping), to_string(p.boundary),
                     p.n, fmt_num(p.lambda), p.m);
}

std::string config_hash(const GridPoint& p, const ExperimentSpec& spec) {
  ordered_json j;
  j["n"] = p.n;
  j["lambda"] = p.lambda;
  j["m"] = p.m;
  j["mapping"] = to_string(p.mapping);
  j["engine"] = to_string(p.engine);
  j["boundary"] = to_string(p.boundary);
  j["seed"] = spec.seed;
  j["sweeps"] = spec.solver.num_sweeps;
  j["energy_tol"] = spec.solver.energy_tol;
  j["lanczos_tol"] = spec.solver.lanczos_tol;
  j["initial_bond"] = spec.solver.initial_bond;
  return fnv1a_hex(j.dump());
}

PointOutput run_point(const GridPoint& p, const ExperimentSpec& spec, const PointOptions& options) {
  const bool want_z_map = options.want_z_map;
  PointOutput out;
  auto& r = out.result;
  r.id = point_id(p);
  r.n = p.n;
  r.lambda = p.lambda;
  r.boundary = p.boundary;
  r.mapping = p.mapping;
  r.engine = p.engine;
  r.m = p.m;
  r.seed = spec.seed;
  r.config_hash = config_hash(p, spec);
  r.trace_ref = "runs/" + r.id + ".trace.json";

  const auto start = std::chrono::steady_clock::now();
  try {
    const auto mapping = SiteMapping::build(p.mapping, p.n);
    const IsingModel2D model{p.n, 1.0, p.lambda, p.boundary};
    const auto terms = map_to_chain(model, mapping);
    const double sites = static_cast<double>(terms.num_sites);
    StaggeredMagnetization ms;
    switch (p.engine) {
      case EngineKind::ed: {
        const auto gs = ed_ground_state(terms, 1e-10, spec.seed);
        r.energy = gs.energy;
        r.residual = gs.residual;
        r.converged = true;
        out.trace.energies = {gs.energy};
        out.trace.converged = true;
        ms = staggered_magnetization(gs, mapping);
        if (want_z_map) out.z_map = local_z_map(gs, mapping);
        break;
      }
      case EngineKind::mps: {
        DmrgConfig cfg;
        cfg.max_bond = p.m;
        cfg.num_sweeps = spec.solver.num_sweeps;
        cfg.energy_tol = spec.solver.energy_tol;
        cfg.lanczos_tol = spec.solver.lanczos_tol;
        cfg.initial_bond = spec.solver.initial_bond;
        cfg.seed = spec.seed;
        std::optional<MpsState> initial;
        if (!options.resume.empty()) initial = mps_from_checkpoint(options.resume);
        auto res = dmrg_ground_state(build_mpo(terms), cfg, std::move(initial));
        if (options.want_checkpoint) out.checkpoint = checkpoint_to_json(res.state, r.config_hash);
        r.energy = res.energy;
        r.converged = res.trace.converged;
        r.sweeps = res.trace.energies.size();
        out.trace = res.trace;
        ms = staggered_magnetization(res.state, mapping);
        if (want_z_map) out.z_map = local_z_map(res.state, mapping);
        break;
      }
      case EngineKind::ttn: {
        TtnConfig cfg;
        cfg.max_bond = p.m;
        cfg.num_sweeps = spec.solver.num_sweeps;
        cfg.energy_tol = spec.solver.energy_tol;
        cfg.lanczos_tol = spec.solver.lanczos_tol;
        cfg.seed = spec.seed;
        std::optional<TtnState> initial;
        if (!options.resume.empty()) initial = ttn_from_checkpoint(options.resume);
        auto res = ttn_ground_state(terms, cfg, std::move(initial));
        if (options.want_checkpoint) out.checkpoint = checkpoint_to_json(res.state, r.config_hash);
        r.energy = res.energy;
        r.converged = res.trace.converged;
        r.sweeps = res.trace.energies.size();
        out.trace = res.trace;
        ms = staggered_magnetization(res.state, mapping);
        if (want_z_map) out.z_map = local_z_map(res.state, mapping);
        break;
      }
    }
    r.energy_density = r.energy / sites;
    r.staggered_magnetization = ms.root;
    r.signed_magnetization = ms.signed_sum;
  } catch (const std::exception& e) {
    r.ok = false;
    r.error = e.what();
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<PointOutput> run_grid(const ExperimentSpec& spec, int workers) {
  validate(spec);
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  const auto grid = expand_grid(spec);
  std::vector<PointOutput> outputs(grid.size());
  PointOptions options;
  options.want_z_map = spec.kind == ExperimentKind::local_z_diff;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) outputs[i] = run_point(grid[i], spec, options);
  };
  const auto count = std::min<std::size_t>(static_cast<std::size_t>(workers), grid.size());
  if (count <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < count; ++t) pool.emplace_back(work);
  }
  return outputs;
}

std::vector<RunResult> parallel_schedule(const ExperimentSpec& spec, int workers) {
  std::vector<RunResult> results;
  for (auto& o : run_grid(spec, workers)) results.push_back(std::move(o.result));
  return results;
}

std::string results_to_json(ExperimentKind kind, const std::vector<RunResult>& results) {
  ordered_json j;
  j["experiment"] = to_string(kind);
  auto arr = ordered_json::array();
  for (const auto& r : results) arr.push_back(ordered_json::parse(run_result_to_json(r)));
  j["results"] = std::move(arr);
  return j.dump(1);
}

std::vector<RunResult> results_from_json(std::string_view text) {
  const auto j = json::parse(text);
  std::vector<RunResult> out;
  for (const auto& r : j.at("results")) out.push_back(run_result_from_json(r.dump()));
  return out;
}

namespace {

class FileSink {
 public:
  explicit FileSink(std::filesystem::path root) : root_(std::move(root)) {}

  void write(const std::filesystem::path& rel, const std::string& content) {
    const auto path = root_ / rel;
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << content;
    if (!os) throw std::runtime_error("cannot write " + path.string());
    files_.push_back(path);
  }

  std::vector<std::filesystem::path> take() { return std::move(files_); }

 private:
  std::filesystem::path root_;
  std::vector<std::filesystem::path> files_;
};

using PairKey = std::tuple<int, Boundary, EngineKind, double, std::size_t>;

PairKey pair_key(const RunResult& r) { return {r.n, r.boundary, r.engine, r.lambda, r.m}; }

struct MappingPair {
  const PointOutput* hilbert = nullptr;
  const PointOutput* snake = nullptr;
};

// Hilbert/snake pairs sharing every other parameter, in grid order.
std::vector<std::pair<PairKey, MappingPair>> mapping_pairs(const std::vector<PointOutput>& outputs) {
  std::vector<std::pair<PairKey, MappingPair>> pairs;
  std::map<PairKey, std::size_t> slot;
  for (const auto& o : outputs) {
    const auto key = pair_key(o.result);
    auto [it, inserted] = slot.emplace(key, pairs.size());
    if (inserted) pairs.push_back({key, {}});
    auto& p = pairs[it->second].second;
    (o.result.mapping == CurveKind::hilbert ? p.hilbert : p.snake) = &o;
  }
  return pairs;
}

constexpr std::string_view kDeltaHeader = "engine,boundary,lambda,m,n,energy_density_snake,energy_density_hilbert,delta_e\n";

std::string delta_row(const RunResult& s, const RunResult& h) {
  return fmt::format("{},{},{},{},{},{},{},{}\n", to_string(h.engine), to_string(h.boundary),
                     detail::format_real(h.lambda), h.m, h.n, detail::format_real(s.energy_density),
                     detail::format_real(h.energy_density), detail::format_real(energy_difference(s, h)));
}

void write_delta_series(FileSink& sink, const std::vector<PointOutput>& outputs, ExperimentKind kind) {
  std::map<std::string, std::string> files;
  for (const auto& [key, pair] : mapping_pairs(outputs)) {
    if (pair.hilbert == nullptr || pair.snake == nullptr) continue;
    const auto& h = pair.hilbert->result;
    const auto& s = pair.snake->result;
    if (!h.ok || !s.ok) continue;
    const auto name = kind == ExperimentKind::delta_e_vs_n
                          ? std::string("fig6_delta_e_vs_n.csv")
                          : fmt::format("fig9_delta_e_vs_lambda_n{}.csv", h.n);
    auto& body = files[name];
    if (body.empty()) body = kDeltaHeader;
    body += delta_row(s, h);
  }
  for (const auto& [name, body] : files) sink.write(name, body);
}

void write_energy_series(FileSink& sink, const std::vector<PointOutput>& outputs) {
  std::map<std::string, std::string> files;
  for (const auto& o : outputs) {
    const auto& r = o.result;
    if (!r.ok) continue;
    const auto name = r.engine == EngineKind::ttn ? fmt::format("fig4_energy_vs_m_n{}.csv", r.n)
                      : r.engine == EngineKind::mps ? fmt::format("fig3_energy_vs_m_n{}.csv", r.n)
                                                    : fmt::format("ed_energy_n{}.csv", r.n);
    auto& body = files[name];
    if (body.empty()) body = "mapping,boundary,lambda,m,energy_density,converged,sweeps\n";
    body += fmt::format("{},{},{},{},{},{},{}\n", to_string(r.mapping), to_string(r.boundary),
                        detail::format_real(r.lambda), r.m, detail::format_real(r.energy_density),
                        r.converged ? 1 : 0, r.sweeps);
  }
  for (const auto& [name, body] : files) sink.write(name, body);
}

void write_magnetization_series(FileSink& sink, const std::vector<PointOutput>& outputs) {
  std::map<std::string, std::string> files;
  for (const auto& o : outputs) {
    const auto& r = o.result;
    if (!r.ok) continue;
    auto& body = files[fmt::format("fig2_magnetization_n{}.csv", r.n)];
    if (body.empty()) body = "engine,mapping,boundary,m,lambda,staggered_magnetization,signed_magnetization,energy_density\n";
    body += fmt::format("{},{},{},{},{},{},{},{}\n", to_string(r.engine), to_string(r.mapping), to_string(r.boundary),
                        r.m, detail::format_real(r.lambda), detail::format_real(r.staggered_magnetization),
                        detail::format_real(r.signed_magnetization), detail::format_real(r.energy_density));
  }
  for (const auto& [name, body] : files) sink.write(name, body);
}

void write_z_maps(FileSink& sink, const std::vector<PointOutput>& outputs) {
  for (const auto& [key, pair] : mapping_pairs(outputs)) {
    if (pair.hilbert == nullptr || pair.snake == nullptr) continue;
    if (!pair.hilbert->z_map || !pair.snake->z_map) continue;
    const auto& h = pair.hilbert->result;
    const auto diff = magnetization_difference(*pair.hilbert->z_map, *pair.snake->z_map);
    const auto stem = fmt::format("fig8_delta_sz_n{}_{}_{}_m{}_lambda{}", h.n, to_string(h.engine),
                                  to_string(h.boundary), h.m, fmt_num(h.lambda));
    sink.write(stem + ".csv", map_to_csv(diff));
    sink.write(stem + ".json", map_to_json(diff));
    const auto means = region_means(diff);
    sink.write(stem + "_regions.csv", fmt::format("region,mean\nbulk,{}\nboundary,{}\n",
                                                  detail::format_real(means.bulk),
                                                  detail::format_real(means.boundary)));
  }
}

void write_distances(FileSink& sink, const ExperimentSpec& spec) {
  for (const int n : spec.n) {
    for (const auto b : spec.boundaries) {
      for (const auto k : spec.mappings) {
        const auto mapping = SiteMapping::build(k, n);
        const auto terms = map_to_chain(IsingModel2D{n, 1.0, 0.0, b}, mapping);
        const auto suffix = fmt::format("{}_{}_n{}.csv", to_string(k), to_string(b), n);
        sink.write("fig5_distance_chain_" + suffix, histogram_to_csv(distance_histogram(terms, Geometry::chain)));
        if (is_power_of_two(terms.num_sites)) {
          sink.write("fig7_distance_tree_" + suffix, histogram_to_csv(distance_histogram(terms, Geometry::tree)));
        }
      }
    }
  }
}

void write_mappings(FileSink& sink, const ExperimentSpec& spec) {
  for (const int n : spec.n) {
    for (const auto k : spec.mappings) {
      std::ostringstream os;
      write_mapping_text(os, SiteMapping::build(k, n));
      sink.write(fmt::format("mapping_{}_n{}.txt", to_string(k), n), os.str());
    }
  }
}

void write_ed_reference(FileSink& sink, const std::vector<PointOutput>& outputs) {
  std::string body = "n,boundary,mapping,lambda,energy,energy_density,staggered_magnetization\n";
  for (const auto& o : outputs) {
    const auto& r = o.result;
    if (!r.ok) continue;
    body += fmt::format("{},{},{},{},{},{},{}\n", r.n, to_string(r.boundary), to_string(r.mapping),
                        detail::format_real(r.lambda), detail::format_real(r.energy),
                        detail::format_real(r.energy_density), detail::format_real(r.staggered_magnetization));
  }
  sink.write("ed_reference.csv", body);
}

}  // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  validate(spec);
  std::error_code ec;
  std::filesystem::create_directories(spec.out_dir, ec);
  if (ec || !std::filesystem::is_directory(spec.out_dir)) {
    throw std::runtime_error("cannot create output directory " + spec.out_dir.string());
  }
  FileSink sink(spec.out_dir);
  const auto outputs = run_grid(spec, spec.workers);

  ExperimentReport report;
  for (const auto& o : outputs) {
    report.results.push_back(o.result);
    if (!o.result.ok) ++report.failures;
    sink.write("runs/" + o.result.id + ".json", run_result_to_json(o.result));
    sink.write(o.result.trace_ref, trace_to_json(o.trace, o.result.wall_seconds));
  }

  switch (spec.kind) {
    case ExperimentKind::energy_vs_m:
      write_energy_series(sink, outputs);
      break;
    case ExperimentKind::delta_e_vs_n:
    case ExperimentKind::delta_e_vs_lambda:
      write_delta_series(sink, outputs, spec.kind);
      break;
    case ExperimentKind::magnetization_vs_lambda:
      write_magnetization_series(sink, outputs);
      break;
    case ExperimentKind::local_z_diff:
      write_z_maps(sink, outputs);
      break;
    case ExperimentKind::distance_dist:
      write_distances(sink, spec);
      break;
    case ExperimentKind::map_dump:
      write_mappings(sink, spec);
      break;
    case ExperimentKind::ed_reference:
      write_ed_reference(sink, outputs);
      break;
  }
  sink.write("results.json", results_to_json(spec.kind, report.results));
  report.files = sink.take();
  return report;
}

}  // namespace sfctn
