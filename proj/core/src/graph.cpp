#include "graphcx/graph.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace graphcx {

std::size_t edge_index(std::size_t i, std::size_t j, std::size_t n) {
  if (!(i < j && j < n)) throw std::out_of_range("edge_index requires i < j < n");
  return edge_index_unchecked(i, j);
}

Edge edge_at(std::size_t pos) {
  // Largest j with j(j-1)/2 <= pos.
  auto j = static_cast<std::size_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(pos))) / 2.0);
  while (j * (j - 1) / 2 > pos) --j;
  while ((j + 1) * j / 2 <= pos) ++j;
  return {pos - j * (j - 1) / 2, j};
}

Graph::Graph(std::size_t n) : n_(n), links_(pair_count(n)) {}

Graph::Graph(std::size_t n, BitString link_field) : n_(n), links_(std::move(link_field)) {
  if (links_.size() != pair_count(n))
    throw std::invalid_argument("link field length must be n(n-1)/2 = " + std::to_string(pair_count(n)));
}

Graph Graph::from_edge_list(std::size_t n, std::span<const Edge> pairs) {
  BitString field(pair_count(n));
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n)
      throw std::invalid_argument("node index out of range in pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
    if (a == b) throw std::invalid_argument("self-loop at node " + std::to_string(a));
    if (a > b) std::swap(a, b);
    field.set(edge_index_unchecked(a, b));
  }
  return Graph(n, std::move(field));
}

Graph Graph::from_link_word(std::size_t n, std::uint64_t field) {
  return Graph(n, BitString::from_word(field, pair_count(n)));
}

bool Graph::has_edge(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (i == j) return false;
  return links_[edge_index(i, j, n_)];
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (std::size_t j = 1; j < n_; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (links_[edge_index_unchecked(i, j)]) out.emplace_back(i, j);
  return out;
}

std::vector<std::vector<std::uint64_t>> Graph::adjacency_rows() const {
  const std::size_t words = (n_ + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows(n_, std::vector<std::uint64_t>(words, 0));
  for (std::size_t j = 1; j < n_; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (links_[edge_index_unchecked(i, j)]) {
        rows[i][j >> 6] |= std::uint64_t{1} << (j & 63);
        rows[j][i >> 6] |= std::uint64_t{1} << (i & 63);
      }
  return rows;
}

Graph complement(const Graph& g) { return Graph(g.order(), g.link_field().inverted()); }

std::vector<std::size_t> degree_sequence(const Graph& g) {
  std::vector<std::size_t> deg(g.order(), 0);
  for (auto [i, j] : g.edges()) {
    ++deg[i];
    ++deg[j];
  }
  return deg;
}

Graph empty_graph(std::size_t n) { return Graph(n); }

Graph complete_graph(std::size_t n) { return Graph(n, BitString(pair_count(n), true)); }

Graph path_graph(std::size_t n) {
  BitString field(pair_count(n));
  for (std::size_t j = 1; j < n; ++j) field.set(edge_index_unchecked(j - 1, j));
  return Graph(n, std::move(field));
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("a cycle needs at least 3 nodes");
  Graph g = path_graph(n);
  BitString field = g.link_field();
  field.set(edge_index_unchecked(0, n - 1));
  return Graph(n, std::move(field));
}

Graph star_graph(std::size_t n) {
  BitString field(pair_count(n));
  for (std::size_t j = 1; j < n; ++j) field.set(edge_index_unchecked(0, j));
  return Graph(n, std::move(field));
}

Graph relabel(const Graph& g, std::span<const std::size_t> perm) {
  const std::size_t n = g.order();
  if (perm.size() != n) throw std::invalid_argument("relabeling size does not match node count");
  std::vector<bool> seen(n, false);
  for (auto v : perm) {
    if (v >= n || seen[v]) throw std::invalid_argument("relabeling is not a permutation");
    seen[v] = true;
  }
  BitString field(pair_count(n));
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (g.link_field()[edge_index_unchecked(i, j)]) {
        auto a = perm[i], b = perm[j];
        if (a > b) std::swap(a, b);
        field.set(edge_index_unchecked(a, b));
      }
  return Graph(n, std::move(field));
}

Graph read_edge_list(std::istream& in) {
  long long n = -1;
  if (!(in >> n) || n < 0) throw std::invalid_argument("edge list: expected a non-negative node count");
  std::vector<Edge> pairs;
  long long a = 0, b = 0;
  while (in >> a) {
    if (!(in >> b)) throw std::invalid_argument("edge list: dangling node index");
    if (a < 0 || b < 0) throw std::invalid_argument("edge list: negative node index");
    pairs.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  }
  if (!in.eof()) throw std::invalid_argument("edge list: unparsable token");
  return Graph::from_edge_list(static_cast<std::size_t>(n), pairs);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.order() << '\n';
  for (auto [i, j] : g.edges()) out << i << ' ' << j << '\n';
}

}  // namespace graphcx
