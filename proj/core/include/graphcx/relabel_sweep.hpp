#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "graphcx/graph.hpp"
#include "graphcx/rle.hpp"

namespace graphcx {

/// Tally of min(zeta, cap) over every node relabeling of one graph.
struct RelabelingTally {
  /// counts[z]: relabelings whose description has capped zeta z.
  std::vector<std::uint64_t> counts;
  /// Relabelings that reproduce the input link field, i.e. |Aut| when the
  /// whole tree was visited.
  std::uint64_t stabilizer = 0;
  std::uint64_t leaves = 0;

  void merge(const RelabelingTally& other);
};

/// Walks all n! labelings of a graph with n(n-1)/2 <= 64, assigning labels
/// one at a time. The link field fills row by row, so a forward parse DP
/// over the already fixed prefix is shared by every completion. That DP is a
/// relaxation (literal blocks of any length, no decodability rule) and only
/// certifies that a description cannot compress below the cap; the rare
/// descriptions it cannot rule out are scored with the exact ZetaKernel.
class RelabelingSweep {
 public:
  RelabelingSweep(std::size_t n, GrammarVariant variant);

  std::size_t cap() const noexcept { return cap_; }

  /// Visit the subtree where label 0 goes to `first`, or all of it when
  /// first == n. Results are added to `out`.
  void run(const Graph& g, RelabelingTally& out, std::size_t first);
  void run(const Graph& g, RelabelingTally& out) { run(g, out, n_); }

  /// Leaves passed on to the exact kernel so far.
  std::uint64_t exact_calls() const noexcept { return exact_calls_; }

 private:
  struct Scale {
    int w = 0;
    int w2 = 0;
    int unit = 0;  // w2 + 2w: literal cost per bit, scaled by w2
    // pmh[b]: lower bound on min over x <= b of w2 F(x) - unit x, where F is
    // the cheapest parse of the first x bits into non-final blocks.
    std::array<std::int32_t, 64> pmh{};
    // kmin[b]: min over x <= b of pmh[x] + 2w x, bounding w2 (F(x) - x).
    std::array<std::int32_t, 64> kmin{};
    // Row-start screens with pmh = 0 at the start B of the last row ([0])
    // and of the row before it ([1]): either some block holding bit B beats
    // the cap regardless of runs (never_capped), or one does once the run
    // counter of period p exceeds row_limit[p - 1].
    std::array<bool, 2> never_capped{};
    std::array<std::array<std::int8_t, 32>, 2> row_limit{};
  };

  void descend(std::size_t k, std::uint64_t field);
  void advance_row(std::size_t base, std::uint32_t row, std::size_t k);
  void leaf(std::uint64_t field, std::size_t periodic);
  std::size_t screen_periods(std::uint64_t field);
  bool prefix_capped(int B, int slot) const;
  bool final_repeats_capped(int B, std::size_t periodic) const;
  bool row_start_capped(const Scale& s, int B) const;
  void init_row_screen(Scale& s, int B, int slot) const;
  void count_capped(std::uint64_t field);
  int final_cost(const Scale& s, std::size_t periodic) const;

  std::size_t n_, len_, cap_;
  GrammarVariant variant_;
  ZetaKernel kernel_;
  std::vector<Scale> scales_;
  std::vector<std::uint32_t> adj_;
  std::vector<std::uint32_t> rowmask_;  // [depth * n + node]
  std::vector<std::uint32_t> window_;   // per row start: bit p-1 = bit[b-p]
  std::vector<std::uint8_t> runs_;      // per row start: 32 run counters
  std::uint32_t used_ = 0;
  std::size_t first_ = 0;
  std::uint64_t base_field_ = 0;
  std::uint64_t exact_calls_ = 0;
  RelabelingTally* out_ = nullptr;
  std::array<std::int8_t, 32> threshold_{};
  std::array<std::pair<int, int>, 64> periods_{};
};

}  // namespace graphcx
