#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "graphcx/canon.hpp"
#include "graphcx/graph.hpp"
#include "graphcx/rle.hpp"

namespace graphcx {

/// Uncompressed description length n(n+1)/2 + 1, the largest C any n-node
/// graph can reach and the cap applied to zeta.
std::size_t max_complexity(std::size_t n) noexcept;

/// C = n(n+1)/2 + 1 - log2(omega).
double complexity(const Graph& g);
double complexity_from_omega(std::size_t n, const BigCount& omega);

/// log2(omega): the bits a description spends on an arbitrary labeling.
double derived_entropy(const Graph& g);

/// (C - C_z) / C.
double compression_error(double c, double c_z);

/// Distinct descriptions of one graph, tallied by min(zeta, cap).
struct ZetaHistogram {
  std::size_t n = 0;
  std::vector<std::uint64_t> counts;  // indexed by capped zeta

  explicit ZetaHistogram(std::size_t order = 0) : n(order), counts(max_complexity(order) + 1, 0) {}
  std::uint64_t total() const noexcept;
  /// C_z = 1 - log2 sum 2^-z, evaluated exactly as
  /// cap + 1 - log2(sum counts[z] 2^(cap - z)).
  double zcomplexity() const;
  void merge(const ZetaHistogram& other);
};

enum class ZMethod {
  link_fields,  // every link field with the same link count, binned by class
  relabelings,  // every node relabeling of the graph itself
  automatic,    // link_fields iff binom(n(n-1)/2, l) < n!
};

/// link_fields iff binom(n(n-1)/2, l) < n!.
ZMethod method_selector(std::size_t n, std::size_t links);

BigCount binomial(std::size_t n, std::size_t k);

struct ZOptions {
  ZMethod method = ZMethod::automatic;
  unsigned jobs = 1;
  /// Refuse link-field sweeps over more fields than this.
  std::uint64_t max_link_fields = 200'000'000;
  /// Refuse relabeling sweeps above this node count. The sweep itself stops
  /// at 11 nodes.
  std::size_t max_relabel_nodes = 11;
};

/// Histogram of one graph's descriptions. Throws std::length_error when the
/// chosen method is outside its guard.
ZetaHistogram zeta_histogram(const Graph& g, GrammarVariant variant, const ZOptions& options = {});
double zcomplexity(const Graph& g, GrammarVariant variant, const ZOptions& options = {});

/// One isomorphism class found by a link-field sweep.
struct ClassZeta {
  std::uint64_t omega = 0;
  ZetaHistogram histogram;
  double c_z = 0;
};

/// Visits every link field with `links` ones once, binning min(zeta, cap)
/// by canonical form. Requires n(n-1)/2 <= 64.
std::map<CanonicalForm, ClassZeta> zcomplexity_class_sweep(std::size_t n, std::size_t links, GrammarVariant variant,
                                                           unsigned jobs = 1);

/// Edges counted by the degrees of their endpoints; entry(k, l) with k <= l.
class DegreeCorrelationMatrix {
 public:
  explicit DegreeCorrelationMatrix(const Graph& g);

  std::size_t max_degree() const noexcept { return size_ == 0 ? 0 : size_ - 1; }
  std::uint64_t entry(std::size_t k, std::size_t l) const;
  std::uint64_t total() const noexcept { return total_; }
  /// a_m = sum_k c[k][k + m] for m = 0..max_degree.
  std::vector<std::uint64_t> diagonal_sums() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> cells_;  // size_ x size_, upper triangle used
  std::uint64_t total_ = 0;
};

/// Entropy in bits of the edge mass over degree-offset diagonals. Zero for
/// regular and edgeless graphs.
double offdiagonal_complexity(const Graph& g);

struct ComplexityReport {
  std::size_t n = 0;
  std::size_t links = 0;
  BigCount aut_order = 1;
  BigCount omega = 1;
  double C = 0;
  std::optional<double> C_z;
  double odc = 0;
  std::optional<double> compression_error;
};

/// C, |Aut|, omega and OdC; C_z and the compression error only when a
/// variant is given.
ComplexityReport complexity_report(const Graph& g, std::optional<GrammarVariant> variant = std::nullopt,
                                   const ZOptions& options = {});

}  // namespace graphcx
