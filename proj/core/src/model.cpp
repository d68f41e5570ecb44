#include "sfctn/model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "format.hpp"
#include "json.hpp"

namespace sfctn {

std::string_view to_string(Boundary b) { return b == Boundary::open ? "obc" : "pbc"; }

Boundary parse_boundary(std::string_view text) {
  if (text == "obc" || text == "open") return Boundary::open;
  if (text == "pbc" || text == "periodic") return Boundary::periodic;
  throw std::invalid_argument("unknown boundary '" + std::string(text) +
                              "' (expected obc or pbc)");
}

std::string_view to_string(Geometry g) { return g == Geometry::chain ? "chain" : "tree"; }

Geometry parse_geometry(std::string_view text) {
  if (text == "chain" || text == "mps") return Geometry::chain;
  if (text == "tree" || text == "ttn") return Geometry::tree;
  throw std::invalid_argument("unknown geometry '" + std::string(text) + "'");
}

void validate(const IsingModel2D& model) {
  if (model.n < 2) throw std::invalid_argument("Ising model requires n >= 2");
  if (!(model.coupling > 0.0)) {
    throw std::invalid_argument("Ising model requires an antiferromagnetic coupling J > 0");
  }
}

std::vector<Edge2D> edges_2d(const IsingModel2D& model) {
  validate(model);
  const int n = model.n;
  std::vector<Edge2D> edges;
  edges.reserve(static_cast<std::size_t>(2 * n * n));
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x + 1 < n; ++x) edges.push_back({{x, y}, {x + 1, y}});
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y + 1 < n; ++y) edges.push_back({{x, y}, {x, y + 1}});
  }
  if (model.boundary == Boundary::periodic) {
    for (int y = 0; y < n; ++y) edges.push_back({{n - 1, y}, {0, y}});
    for (int x = 0; x < n; ++x) edges.push_back({{x, n - 1}, {x, 0}});
  }
  return edges;
}

TermList1D make_term_list(std::size_t num_sites, double field, std::vector<PairTerm> pairs) {
  for (auto& t : pairs) {
    if (t.mu == t.nu) throw std::invalid_argument("pair term couples a site to itself");
    if (t.mu > t.nu) std::swap(t.mu, t.nu);
    if (t.nu >= num_sites) throw std::invalid_argument("pair term site out of range");
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const PairTerm& a, const PairTerm& b) {
    return a.mu != b.mu ? a.mu < b.mu : a.nu < b.nu;
  });
  return TermList1D{num_sites, field, std::move(pairs)};
}

TermList1D map_to_chain(const IsingModel2D& model, const SiteMapping& mapping) {
  if (mapping.n() != model.n) {
    throw std::invalid_argument("mapping size " + std::to_string(mapping.n()) +
                                " does not match model size " + std::to_string(model.n));
  }
  std::vector<PairTerm> pairs;
  for (const auto& e : edges_2d(model)) {
    pairs.push_back({mapping.index(e.a), mapping.index(e.b), model.coupling});
  }
  return make_term_list(mapping.num_sites(), model.field, std::move(pairs));
}

std::size_t DistanceHistogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0},
                         [](std::size_t s, const auto& kv) { return s + kv.second; });
}

double DistanceHistogram::mean() const {
  const auto n = total();
  if (n == 0) return 0.0;
  double s = 0.0;
  for (const auto& [d, c] : counts) s += static_cast<double>(d) * static_cast<double>(c);
  return s / static_cast<double>(n);
}

std::size_t DistanceHistogram::max_distance() const {
  return counts.empty() ? 0 : counts.rbegin()->first;
}

double DistanceHistogram::mass_at_or_above(std::size_t threshold) const {
  double p = 0.0;
  for (auto it = normalized.lower_bound(threshold); it != normalized.end(); ++it) p += it->second;
  return p;
}

DistanceHistogram distance_histogram(const TermList1D& terms, Geometry geometry) {
  if (geometry == Geometry::tree && !is_power_of_two(terms.num_sites)) {
    throw std::invalid_argument("tree geometry requires a power-of-two number of sites");
  }
  DistanceHistogram h;
  h.geometry = geometry;
  for (const auto& t : terms.pairs) {
    const auto d = geometry == Geometry::chain ? chain_distance(t.mu, t.nu)
                                               : tree_distance(t.mu, t.nu, terms.num_sites);
    ++h.counts[d];
  }
  const auto n = static_cast<double>(h.total());
  for (const auto& [d, c] : h.counts) h.normalized[d] = static_cast<double>(c) / n;
  return h;
}

std::vector<std::size_t> open_terms_per_cut(const TermList1D& terms) {
  if (terms.num_sites < 2) return {};
  // Difference array: +1 at mu, -1 at nu.
  std::vector<long long> delta(terms.num_sites, 0);
  for (const auto& t : terms.pairs) {
    ++delta[t.mu];
    --delta[t.nu];
  }
  std::vector<std::size_t> open(terms.num_sites - 1);
  long long running = 0;
  for (std::size_t b = 0; b + 1 < terms.num_sites; ++b) {
    running += delta[b];
    open[b] = static_cast<std::size_t>(running);
  }
  return open;
}

std::string term_list_to_json(const TermList1D& terms) {
  nlohmann::ordered_json j;
  j["num_sites"] = terms.num_sites;
  j["lambda"] = terms.field;
  auto pairs = nlohmann::json::array();
  for (const auto& t : terms.pairs) pairs.push_back({t.mu, t.nu, t.weight});
  j["pairs"] = std::move(pairs);
  return j.dump();
}

TermList1D term_list_from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  std::vector<PairTerm> pairs;
  for (const auto& p : j.at("pairs")) {
    pairs.push_back({p.at(0).get<ChainIndex>(), p.at(1).get<ChainIndex>(), p.at(2).get<double>()});
  }
  return make_term_list(j.at("num_sites").get<std::size_t>(), j.at("lambda").get<double>(),
                        std::move(pairs));
}

std::string histogram_to_csv(const DistanceHistogram& h) {
  std::string out = "distance,count,probability\n";
  for (const auto& [d, c] : h.counts) {
    out += std::to_string(d) + ',' + std::to_string(c) + ',' +
           detail::format_real(h.normalized.at(d)) + '\n';
  }
  return out;
}

DistanceHistogram histogram_from_csv(std::string_view text, Geometry geometry) {
  DistanceHistogram h;
  h.geometry = geometry;
  std::istringstream in{std::string(text)};
  std::string line;
  std::getline(in, line);
  if (line != "distance,count,probability") {
    throw std::invalid_argument("histogram CSV: unexpected header '" + line + "'");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string d, c, p;
    std::getline(row, d, ',');
    std::getline(row, c, ',');
    std::getline(row, p, ',');
    const auto dist = static_cast<std::size_t>(std::stoull(d));
    h.counts[dist] = static_cast<std::size_t>(std::stoull(c));
    h.normalized[dist] = std::stod(p);
  }
  return h;
}

}  // namespace sfctn
