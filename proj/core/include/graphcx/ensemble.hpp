#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphcx/canon.hpp"
#include "graphcx/graph.hpp"
#include "graphcx/measures.hpp"
#include "graphcx/rle.hpp"

namespace graphcx {

struct EnumerationRecord {
  Graph representative;  // in canonical labeling
  std::uint64_t omega = 0;
  std::uint64_t aut_order = 0;
};

struct EnumerationResult {
  std::size_t n = 0;
  std::vector<EnumerationRecord> records;  // ordered by representative link field
};

struct EnumerateOptions {
  /// Guard: refuse larger orders. The visited bitmap needs 2^(n(n-1)/2)
  /// bits, so 8 is also the hard ceiling.
  std::size_t max_n = 8;
};

/// One record per isomorphism class of n-node graphs. Every link field is
/// visited once: the smallest unvisited field starts a class and its orbit
/// under relabeling is marked, so omega is counted, not derived.
EnumerationResult enumerate_graphs(std::size_t n, const EnumerateOptions& options = {});

/// Every pair present independently with probability p.
Graph er_random(std::size_t n, double p, std::uint64_t seed);

/// Preferential attachment grown from a complete graph on m nodes; each new
/// node links to m distinct existing nodes drawn with probability
/// proportional to degree (uniformly while every degree is zero).
Graph ba_random(std::size_t n, std::size_t m, std::uint64_t seed);

enum class RowSource { exhaustive_sparse, random_sample };
std::string_view to_string(RowSource s) noexcept;

struct ExperimentRow {
  std::string id;
  std::size_t n = 0;
  std::size_t links = 0;
  std::uint64_t aut_order = 0;
  std::uint64_t omega = 0;
  double C = 0;
  double C_z = 0;
  double odc = 0;
  double compression_error = 0;
  RowSource source = RowSource::exhaustive_sparse;
};

struct ExperimentOptions {
  std::size_t n = 10;
  std::size_t max_links = 6;
  std::size_t sample_count = 740;
  std::uint64_t seed = 1;
  GrammarVariant variant = GrammarVariant::implicit_final_len;
  unsigned jobs = 1;
  /// Progress callback: (rows done, rows planned). Optional.
  void (*progress)(std::size_t, std::size_t) = nullptr;
};

/// Every class with at most max_links links, scored by link-field sweeps,
/// then sample_count distinct classes drawn as uniform link fields with more
/// than max_links links, scored by relabeling sweeps.
std::vector<ExperimentRow> sparse_sweep_experiment(const ExperimentOptions& options = {});

struct Correlation {
  double r = 0;
  double slope = 0;
  double intercept = 0;
};

/// Pearson r and the least-squares line of y on x. Throws
/// std::invalid_argument for fewer than two points or constant x. Constant
/// y gives r = 0.
Correlation correlate(std::span<const double> x, std::span<const double> y);

/// Field names: n, links, aut_order, omega, C, C_z, odc, compression_error.
double row_field(const ExperimentRow& row, std::string_view field);
Correlation correlate(std::span<const ExperimentRow> rows, std::string_view x_field, std::string_view y_field);

}  // namespace graphcx
