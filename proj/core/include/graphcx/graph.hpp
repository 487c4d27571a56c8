#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "graphcx/bits.hpp"

namespace graphcx {

using Edge = std::pair<std::size_t, std::size_t>;

/// Number of unordered node pairs, n(n-1)/2.
constexpr std::size_t pair_count(std::size_t n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Link-field position of the pair (i, j), i < j < n: j(j-1)/2 + i.
/// Throws std::out_of_range when the precondition fails.
std::size_t edge_index(std::size_t i, std::size_t j, std::size_t n);

/// Unchecked variant for inner loops.
constexpr std::size_t edge_index_unchecked(std::size_t i, std::size_t j) noexcept { return j * (j - 1) / 2 + i; }

/// Inverse of edge_index: the pair stored at link-field position `pos`.
Edge edge_at(std::size_t pos);

/// Undirected simple graph on nodes 0..n-1. The link field holds one flag
/// per unordered pair in edge_index order. Immutable once built.
class Graph {
 public:
  Graph() = default;
  /// Edgeless graph on n nodes.
  explicit Graph(std::size_t n);
  /// Throws std::invalid_argument if the field length is not n(n-1)/2.
  Graph(std::size_t n, BitString link_field);

  /// Duplicate pairs collapse; (j, i) is accepted for (i, j). Self-loops and
  /// out-of-range endpoints throw std::invalid_argument.
  static Graph from_edge_list(std::size_t n, std::span<const Edge> pairs);
  /// Link field packed into a word. Requires n(n-1)/2 <= 64.
  static Graph from_link_word(std::size_t n, std::uint64_t field);

  std::size_t order() const noexcept { return n_; }
  std::size_t link_count() const noexcept { return links_.count(); }
  const BitString& link_field() const noexcept { return links_; }
  bool has_edge(std::size_t i, std::size_t j) const;

  std::vector<Edge> edges() const;
  /// Adjacency rows as bit masks; row v, bit u set iff {u, v} is an edge.
  std::vector<std::vector<std::uint64_t>> adjacency_rows() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_ = 0;
  BitString links_;
};

Graph complement(const Graph& g);
std::vector<std::size_t> degree_sequence(const Graph& g);

/// Empty (edgeless) and complete graphs.
Graph empty_graph(std::size_t n);
Graph complete_graph(std::size_t n);
/// Path 0-1-...-(n-1), the cycle closing it (n >= 3), and the star centred on 0.
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph star_graph(std::size_t n);

/// Image of g under a node relabeling: edge (i, j) becomes (perm[i], perm[j]).
/// Throws std::invalid_argument unless perm is a permutation of 0..n-1.
Graph relabel(const Graph& g, std::span<const std::size_t> perm);

/// Edge-list text: first token n, then whitespace-separated 0-based pairs.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace graphcx
