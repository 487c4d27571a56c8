#include "graphcx/codec.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace graphcx {

Description::Description(BitString bits) : bits_(std::move(bits)) {
  std::size_t n = 0;
  while (n < bits_.size() && bits_[n]) ++n;
  if (n == bits_.size()) throw std::invalid_argument("malformed description: unary header has no terminating 0");
  if (bits_.size() != n + 1 + pair_count(n))
    throw std::invalid_argument("malformed description: " + std::to_string(n) + " nodes need " +
                                std::to_string(pair_count(n)) + " link bits, found " +
                                std::to_string(bits_.size() - n - 1));
  n_ = n;
}

Description encode_link_field(std::size_t n, const BitString& link_field) {
  if (link_field.size() != pair_count(n)) throw std::invalid_argument("link field length mismatch");
  BitString bits(n, true);
  bits.push_back(false);
  bits.append(link_field);
  return Description(std::move(bits));
}

Description encode(const Graph& g, std::span<const std::size_t> relabeling) {
  if (relabeling.size() != g.order()) throw std::invalid_argument("relabeling size does not match node count");
  return encode_link_field(g.order(), relabel(g, relabeling).link_field());
}

Description encode(const Graph& g) { return encode_link_field(g.order(), g.link_field()); }

Graph decode(const Description& d) { return Graph(d.node_count(), d.link_field()); }

std::vector<Description> all_descriptions(const Graph& g, std::size_t max_n) {
  const std::size_t n = g.order();
  if (n > max_n)
    throw std::length_error("all_descriptions: " + std::to_string(n) + " nodes exceeds the permutation bound " +
                            std::to_string(max_n));
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  const auto edges = g.edges();
  std::unordered_set<BitString> seen;
  do {
    BitString field(g.link_field().size());
    for (auto [i, j] : edges) {
      auto a = perm[i], b = perm[j];
      if (a > b) std::swap(a, b);
      field.set(edge_index_unchecked(a, b));
    }
    seen.insert(std::move(field));
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<Description> out;
  out.reserve(seen.size());
  for (const auto& field : seen) out.push_back(encode_link_field(n, field));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace graphcx
