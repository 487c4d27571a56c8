#include "graphcx/ensemble.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "graphcx/codec.hpp"
#include "label_swap.hpp"

namespace graphcx {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Generators are seeded through SplitMix64 so nearby seeds give unrelated
// streams.
std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(splitmix64(seed)); }

std::string hex_id(char prefix, std::uint64_t word) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%llx", prefix, static_cast<unsigned long long>(word));
  return buf;
}

}  // namespace

EnumerationResult enumerate_graphs(std::size_t n, const EnumerateOptions& options) {
  if (n > options.max_n || n > 8)
    throw std::length_error("enumeration of " + std::to_string(n) + "-node graphs exceeds the bound of " +
                            std::to_string(std::min<std::size_t>(options.max_n, 8)));
  const std::size_t len = pair_count(n);
  const std::uint64_t fields = std::uint64_t{1} << len;
  const std::uint64_t n_factorial = factorial(n).convert_to<std::uint64_t>();
  const detail::LabelSwapTables swaps(n);
  std::vector<std::uint64_t> visited((fields + 63) / 64, 0);

  EnumerationResult result;
  result.n = n;
  Canonizer canon;
  for (std::uint64_t f = 0; f < fields; ++f) {
    if ((visited[f >> 6] >> (f & 63)) & 1u) continue;
    std::uint64_t orbit = 0;
    swaps.for_each_relabeling(f, [&](std::uint64_t w) {
      std::uint64_t& slot = visited[w >> 6];
      const std::uint64_t bit = std::uint64_t{1} << (w & 63);
      if (!(slot & bit)) {
        slot |= bit;
        ++orbit;
      }
      return true;
    });
    const Graph g = Graph::from_link_word(n, f);
    const CanonResult cr = canon.run(g);
    EnumerationRecord rec;
    rec.representative = decode(cr.form.description);
    rec.omega = orbit;
    rec.aut_order = n_factorial / orbit;
    if (BigCount(rec.aut_order) != cr.aut_order || n_factorial % orbit != 0)
      throw std::logic_error("orbit size disagrees with the automorphism group order");
    result.records.push_back(std::move(rec));
  }
  std::sort(result.records.begin(), result.records.end(), [](const auto& a, const auto& b) {
    return a.representative.link_field() < b.representative.link_field();
  });
  return result;
}

Graph er_random(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("link probability must lie in [0, 1]");
  auto rng = make_rng(seed);
  std::bernoulli_distribution coin(p);
  BitString field(pair_count(n));
  for (std::size_t i = 0; i < field.size(); ++i)
    if (coin(rng)) field.set(i);
  return Graph(n, std::move(field));
}

Graph ba_random(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < 1 || m >= n) throw std::invalid_argument("preferential attachment needs 1 <= m < n");
  auto rng = make_rng(seed);
  BitString field(pair_count(n));
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t j = 1; j < m; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      field.set(edge_index_unchecked(i, j));
      ++degree[i];
      ++degree[j];
    }
  std::vector<double> weight;
  std::vector<std::size_t> chosen;
  for (std::size_t t = m; t < n; ++t) {
    chosen.clear();
    weight.assign(degree.begin(), degree.begin() + static_cast<std::ptrdiff_t>(t));
    for (std::size_t k = 0; k < m; ++k) {
      for (auto c : chosen) weight[c] = 0;
      double total = 0;
      for (auto w : weight) total += w;
      std::size_t pick;
      if (total > 0) {
        std::discrete_distribution<std::size_t> dist(weight.begin(), weight.end());
        pick = dist(rng);
      } else {
        // Every remaining candidate has degree zero.
        std::vector<std::size_t> open;
        for (std::size_t v = 0; v < t; ++v)
          if (std::find(chosen.begin(), chosen.end(), v) == chosen.end()) open.push_back(v);
        pick = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
      }
      chosen.push_back(pick);
    }
    for (auto v : chosen) {
      field.set(edge_index_unchecked(v, t));
      ++degree[v];
      ++degree[t];
    }
  }
  return Graph(n, std::move(field));
}

std::string_view to_string(RowSource s) noexcept {
  return s == RowSource::exhaustive_sparse ? "exhaustive-sparse" : "random-sample";
}

std::vector<ExperimentRow> sparse_sweep_experiment(const ExperimentOptions& options) {
  const std::size_t n = options.n;
  const std::size_t len = pair_count(n);
  if (len > 64) throw std::length_error("the experiment packs link fields into 64 bits (n <= 11)");
  if (options.max_links >= len && options.sample_count > 0)
    throw std::invalid_argument("no link fields are denser than max_links");
  const std::uint64_t n_factorial = factorial(n).convert_to<std::uint64_t>();
  const std::size_t sparse_top = std::min(options.max_links, len);

  std::size_t planned = options.sample_count;
  for (std::size_t l = 0; l <= sparse_top; ++l) planned += 1;
  std::size_t done = 0;
  auto tick = [&](std::size_t step) {
    done += step;
    if (options.progress) options.progress(done, planned);
  };

  std::vector<ExperimentRow> rows;
  for (std::size_t l = 0; l <= sparse_top; ++l) {
    for (const auto& [form, cls] : zcomplexity_class_sweep(n, l, options.variant, options.jobs)) {
      const Graph g = decode(form.description);
      ExperimentRow row;
      row.id = hex_id('s', g.link_field().to_word());
      row.n = n;
      row.links = l;
      row.omega = cls.omega;
      row.aut_order = n_factorial / cls.omega;
      row.C = complexity_from_omega(n, cls.omega);
      row.C_z = cls.c_z;
      row.odc = offdiagonal_complexity(g);
      row.compression_error = compression_error(row.C, row.C_z);
      row.source = RowSource::exhaustive_sparse;
      rows.push_back(std::move(row));
    }
    tick(1);
  }

  auto rng = make_rng(options.seed);
  Canonizer canon;
  std::set<std::uint64_t> seen;
  ZOptions zopt;
  zopt.method = ZMethod::relabelings;
  zopt.jobs = options.jobs;
  const std::uint64_t mask = len == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << len) - 1;
  while (seen.size() < options.sample_count) {
    // Uniform link fields, i.e. density 1/2, kept only above the sparse range.
    const std::uint64_t field = rng() & mask;
    const auto links = static_cast<std::size_t>(std::popcount(field));
    if (links <= options.max_links) continue;
    const std::uint64_t form = canon.canonical_word(n, field);
    if (!seen.insert(form).second) continue;
    const Graph g = Graph::from_link_word(n, form);
    ExperimentRow row;
    row.id = hex_id('r', form);
    row.n = n;
    row.links = links;
    row.aut_order = automorphism_order(g).convert_to<std::uint64_t>();
    row.omega = n_factorial / row.aut_order;
    row.C = complexity_from_omega(n, row.omega);
    row.C_z = zcomplexity(g, options.variant, zopt);
    row.odc = offdiagonal_complexity(g);
    row.compression_error = compression_error(row.C, row.C_z);
    row.source = RowSource::random_sample;
    rows.push_back(std::move(row));
    tick(1);
  }
  return rows;
}

Correlation correlate(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("correlate needs paired samples");
  if (x.size() < 2) throw std::invalid_argument("correlate needs at least two points");
  const double count = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0) throw std::invalid_argument("correlate needs nonzero variance in x");
  Correlation c;
  c.slope = sxy / sxx;
  c.intercept = my - c.slope * mx;
  c.r = syy == 0 ? 0.0 : sxy / std::sqrt(sxx * syy);
  return c;
}

double row_field(const ExperimentRow& row, std::string_view field) {
  if (field == "n") return static_cast<double>(row.n);
  if (field == "links") return static_cast<double>(row.links);
  if (field == "aut_order") return static_cast<double>(row.aut_order);
  if (field == "omega") return static_cast<double>(row.omega);
  if (field == "C") return row.C;
  if (field == "C_z") return row.C_z;
  if (field == "odc") return row.odc;
  if (field == "compression_error") return row.compression_error;
  throw std::invalid_argument("unknown row field: " + std::string(field));
}

Correlation correlate(std::span<const ExperimentRow> rows, std::string_view x_field, std::string_view y_field) {
  std::vector<double> x, y;
  x.reserve(rows.size());
  y.reserve(rows.size());
  for (const auto& r : rows) {
    x.push_back(row_field(r, x_field));
    y.push_back(row_field(r, y_field));
  }
  return correlate(x, y);
}

}  // namespace graphcx
