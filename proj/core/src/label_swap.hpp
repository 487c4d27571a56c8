#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "graphcx/graph.hpp"

namespace graphcx::detail {

/// Swapping two node labels permutes link-field bits. One 256-entry table
/// per byte of the packed link word and per label pair (n(n-1)/2 <= 64).
class LabelSwapTables {
 public:
  explicit LabelSwapTables(std::size_t n)
      : n_(n), bytes_(std::max<std::size_t>(1, (pair_count(n) + 7) / 8)), tables_(n * n * bytes_ * 256, 0) {
    const std::size_t len = pair_count(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        auto image = [&](std::size_t v) { return v == a ? b : v == b ? a : v; };
        std::uint64_t* t = table(a, b);
        for (std::size_t pos = 0; pos < len; ++pos) {
          const auto [i, j] = edge_at(pos);
          const std::size_t u = image(i), v = image(j);
          const std::uint64_t bit = std::uint64_t{1} << edge_index_unchecked(std::min(u, v), std::max(u, v));
          for (std::size_t x = 0; x < 256; ++x)
            if ((x >> (pos % 8)) & 1u) t[(pos / 8) * 256 + x] |= bit;
        }
      }
  }

  std::uint64_t apply(std::uint64_t word, std::size_t a, std::size_t b) const {
    const std::uint64_t* t = table(std::min(a, b), std::max(a, b));
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < bytes_; ++k, word >>= 8) out |= t[k * 256 + (word & 255)];
    return out;
  }

  /// Calls visit(word) for the image of `word` under each of the n!
  /// relabelings (with repeats), stopping early once visit returns false.
  /// Heap's algorithm: every step is one label swap of the previous word.
  template <class Visit>
  void for_each_relabeling(std::uint64_t word, Visit&& visit) const {
    if (!visit(word)) return;
    std::vector<std::size_t> c(n_, 0);
    for (std::size_t i = 1; i < n_;) {
      if (c[i] < i) {
        word = apply(word, i % 2 == 0 ? 0 : c[i], i);
        if (!visit(word)) return;
        ++c[i];
        i = 1;
      } else {
        c[i] = 0;
        ++i;
      }
    }
  }

 private:
  std::uint64_t* table(std::size_t a, std::size_t b) { return &tables_[(a * n_ + b) * bytes_ * 256]; }
  const std::uint64_t* table(std::size_t a, std::size_t b) const { return &tables_[(a * n_ + b) * bytes_ * 256]; }

  std::size_t n_;
  std::size_t bytes_;
  std::vector<std::uint64_t> tables_;
};

}  // namespace graphcx::detail
