#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphcx/bits.hpp"
#include "graphcx/graph.hpp"

namespace graphcx {

/// Prefix-free bitstring description of a labeled graph: n ones, a zero,
/// then the n(n-1)/2 link bits.
class Description {
 public:
  Description() : bits_(BitString::parse("0")) {}
  /// Throws std::invalid_argument unless the bits are well formed.
  explicit Description(BitString bits);
  static Description parse(std::string_view text) { return Description(BitString::parse(text)); }

  std::size_t node_count() const noexcept { return n_; }
  std::size_t size() const noexcept { return bits_.size(); }
  const BitString& bits() const noexcept { return bits_; }
  BitString link_field() const { return bits_.slice(n_ + 1, pair_count(n_)); }
  std::string to_string() const { return bits_.to_string(); }

  friend bool operator==(const Description&, const Description&) = default;
  friend std::strong_ordering operator<=>(const Description& a, const Description& b) noexcept {
    return a.bits_ <=> b.bits_;
  }

 private:
  BitString bits_;
  std::size_t n_ = 0;
};

/// Description of g after relabeling node i as relabeling[i].
Description encode(const Graph& g, std::span<const std::size_t> relabeling);
Description encode(const Graph& g);
Description encode_link_field(std::size_t n, const BitString& link_field);

Graph decode(const Description& d);

/// Default order bound for n!-sized enumerations.
inline constexpr std::size_t kDefaultPermutationBound = 10;

/// Every distinct description of g over all n! relabelings, sorted.
/// Throws std::length_error when n exceeds max_n.
std::vector<Description> all_descriptions(const Graph& g, std::size_t max_n = kDefaultPermutationBound);

}  // namespace graphcx

template <>
struct std::hash<graphcx::Description> {
  std::size_t operator()(const graphcx::Description& d) const noexcept { return graphcx::hash_value(d.bits()); }
};
