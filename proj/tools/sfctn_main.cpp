// sfctn: command-line front end for mappings, solvers and experiment grids.
//
// Exit codes: 0 success, 1 invalid input, 2 some grid points failed,
// 3 internal error. SFCTN_OUT_DIR sets the output directory when --out is
// not given.

#include <fmt/format.h>

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "sfctn/experiment.hpp"
#include "sfctn/model.hpp"
#include "sfctn/serialize.hpp"
#include "sfctn/spacefill.hpp"

namespace {

enum ExitCode { kOk = 0, kInvalidInput = 1, kPartialFailure = 2, kInternalError = 3 };

struct Options {
  int n = 4;
  double lambda = 2.9;
  std::size_t m = 20;
  std::string mapping = "hilbert";
  std::string boundary = "obc";
  std::uint64_t seed = 1;
  std::string out;
  std::string config;
  int sweeps = 30;
  int workers = 1;
  std::string geometry = "chain";
  std::string resume;
  std::string checkpoint;
  std::string kind;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os || !(os << content)) throw std::runtime_error("cannot write " + path);
}

std::string output_dir(const Options& o) {
  if (!o.out.empty()) return o.out;
  if (const char* env = std::getenv("SFCTN_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return {};
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.n, "Lattice side length")->check(CLI::PositiveNumber);
  cmd->add_option("--lambda", o.lambda, "Transverse field");
  cmd->add_option("--m", o.m, "Bond dimension")->check(CLI::PositiveNumber);
  cmd->add_option("--mapping", o.mapping, "hilbert or snake")->check(CLI::IsMember({"hilbert", "snake"}));
  cmd->add_option("--boundary", o.boundary, "obc or pbc")->check(CLI::IsMember({"obc", "pbc"}));
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--out", o.out, "Output directory (overrides SFCTN_OUT_DIR)");
  cmd->add_option("--config", o.config, "JSON spec; its keys override flags");
  cmd->add_option("--sweeps", o.sweeps, "Maximum number of sweeps")->check(CLI::PositiveNumber);
}

sfctn::ExperimentSpec single_spec(const Options& o, sfctn::EngineKind engine) {
  sfctn::ExperimentSpec spec;
  spec.kind = engine == sfctn::EngineKind::ed ? sfctn::ExperimentKind::ed_reference : sfctn::ExperimentKind::energy_vs_m;
  spec.n = {o.n};
  spec.lambda = {o.lambda};
  spec.m = {engine == sfctn::EngineKind::ed ? std::size_t{0} : o.m};
  spec.mappings = {sfctn::parse_curve_kind(o.mapping)};
  spec.engines = {engine};
  spec.boundaries = {sfctn::parse_boundary(o.boundary)};
  spec.seed = o.seed;
  spec.solver.num_sweeps = o.sweeps;
  if (!o.config.empty()) spec = sfctn::spec_from_json(read_file(o.config), spec);
  return spec;
}

int run_single(const Options& o, sfctn::EngineKind engine) {
  const auto spec = single_spec(o, engine);
  sfctn::validate(spec);
  const auto grid = sfctn::expand_grid(spec);
  if (grid.size() != 1) throw std::invalid_argument("single-run commands take one grid point");
  sfctn::PointOptions options;
  options.want_checkpoint = !o.checkpoint.empty();
  if (!o.resume.empty()) options.resume = read_file(o.resume);
  const auto out = sfctn::run_point(grid.front(), spec, options);
  std::cout << sfctn::run_result_to_json(out.result) << '\n';
  if (const auto dir = output_dir(o); !dir.empty()) {
    std::filesystem::create_directories(std::filesystem::path(dir) / "runs");
    write_file(dir + "/runs/" + out.result.id + ".json", sfctn::run_result_to_json(out.result));
    write_file(dir + "/" + out.result.trace_ref, sfctn::trace_to_json(out.trace, out.result.wall_seconds));
  }
  if (!out.checkpoint.empty()) write_file(o.checkpoint, out.checkpoint);
  if (!out.result.ok) {
    std::cerr << "error: " << out.result.error << '\n';
    return kPartialFailure;
  }
  return kOk;
}

int run_map(const Options& o) {
  const auto mapping = sfctn::SiteMapping::build(sfctn::parse_curve_kind(o.mapping), o.n);
  if (const auto dir = output_dir(o); !dir.empty()) {
    std::filesystem::create_directories(dir);
    const auto path = fmt::format("{}/mapping_{}_n{}.txt", dir, o.mapping, o.n);
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    sfctn::write_mapping_text(os, mapping);
  } else {
    sfctn::write_mapping_text(std::cout, mapping);
  }
  return kOk;
}

int run_dist(const Options& o) {
  const auto mapping = sfctn::SiteMapping::build(sfctn::parse_curve_kind(o.mapping), o.n);
  const auto terms = sfctn::map_to_chain({o.n, 1.0, 0.0, sfctn::parse_boundary(o.boundary)}, mapping);
  std::cout << sfctn::histogram_to_csv(sfctn::distance_histogram(terms, sfctn::parse_geometry(o.geometry)));
  return kOk;
}

int run_experiment(const Options& o, const CLI::App& cmd) {
  sfctn::ExperimentSpec spec;
  if (!o.kind.empty()) {
    spec = sfctn::default_spec(sfctn::parse_experiment_kind(o.kind));
  } else if (o.config.empty()) {
    throw std::invalid_argument("experiment needs a kind or --config");
  }
  // Flags given explicitly narrow the default grid to a single value.
  if (cmd.count("--n") > 0) spec.n = {o.n};
  if (cmd.count("--lambda") > 0) spec.lambda = {o.lambda};
  if (cmd.count("--m") > 0) spec.m = {o.m};
  if (cmd.count("--mapping") > 0) spec.mappings = {sfctn::parse_curve_kind(o.mapping)};
  if (cmd.count("--boundary") > 0) spec.boundaries = {sfctn::parse_boundary(o.boundary)};
  if (cmd.count("--sweeps") > 0) spec.solver.num_sweeps = o.sweeps;
  spec.seed = o.seed;
  spec.workers = o.workers;
  if (const auto dir = output_dir(o); !dir.empty()) spec.out_dir = dir;
  if (!o.config.empty()) {
    if (o.kind.empty()) {
      const auto probe = sfctn::spec_from_json(read_file(o.config), spec);
      auto base = sfctn::default_spec(probe.kind);
      base.seed = spec.seed;
      base.workers = spec.workers;
      base.out_dir = spec.out_dir;
      spec = base;
    }
    spec = sfctn::spec_from_json(read_file(o.config), spec);
  }
  const auto report = sfctn::run_experiment(spec);
  std::size_t ok = report.results.size() - report.failures;
  std::cout << fmt::format("{}: {} run(s), {} ok, {} failed, {} file(s) in {}\n", sfctn::to_string(spec.kind),
                           report.results.size(), ok, report.failures, report.files.size(), spec.out_dir.string());
  for (const auto& r : report.results) {
    if (!r.ok) std::cerr << "failed " << r.id << ": " << r.error << '\n';
  }
  return report.failures > 0 ? kPartialFailure : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Space-filling-curve mappings and tensor-network solvers for the 2D transverse-field Ising model"};
  app.require_subcommand(1);
  Options o;

  auto* map = app.add_subcommand("map", "Print or write the site ordering of a curve");
  add_common(map, o);
  auto* ed = app.add_subcommand("ed", "Exact diagonalization (n <= 4)");
  add_common(ed, o);
  auto* dmrg = app.add_subcommand("dmrg", "Two-site DMRG with a matrix product state");
  add_common(dmrg, o);
  auto* ttn = app.add_subcommand("ttn", "Variational binary tree tensor network");
  add_common(ttn, o);
  for (auto* cmd : {dmrg, ttn}) {
    cmd->add_option("--resume", o.resume, "Start from a checkpoint file");
    cmd->add_option("--checkpoint", o.checkpoint, "Write the final state to this file");
  }
  auto* dist = app.add_subcommand("dist", "Histogram of coupling distances");
  add_common(dist, o);
  dist->add_option("--geometry", o.geometry, "chain or tree")->check(CLI::IsMember({"chain", "tree"}));
  auto* exp = app.add_subcommand("experiment", "Run an experiment grid");
  add_common(exp, o);
  exp->add_option("kind", o.kind, "energy_vs_m, delta_e_vs_n, delta_e_vs_lambda, magnetization_vs_lambda, "
                                  "distance_dist, local_z_diff, map_dump, ed_reference");
  exp->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*map) return run_map(o);
    if (*ed) return run_single(o, sfctn::EngineKind::ed);
    if (*dmrg) return run_single(o, sfctn::EngineKind::mps);
    if (*ttn) return run_single(o, sfctn::EngineKind::ttn);
    if (*dist) return run_dist(o);
    if (*exp) return run_experiment(o, *exp);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInternalError;
}
