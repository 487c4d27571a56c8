#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "graphcx/codec.hpp"
#include "graphcx/graph.hpp"

namespace graphcx {

/// Exact integer type for group orders, n! and omega.
using BigCount = boost::multiprecision::cpp_int;

BigCount factorial(std::size_t n);

/// log2 of a positive integer, exact for powers of two and accurate to
/// double precision otherwise.
double log2_exact(const BigCount& value);

/// The description a graph takes under its canonical relabeling. Two graphs
/// have equal canonical forms iff they are isomorphic.
struct CanonicalForm {
  Description description;

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
  friend std::strong_ordering operator<=>(const CanonicalForm& a, const CanonicalForm& b) noexcept {
    return a.description <=> b.description;
  }
};

using Permutation = std::vector<std::size_t>;

struct CanonResult {
  CanonicalForm form;
  /// labeling[v] = canonical position of node v; encode(g, labeling) == form.
  Permutation labeling;
  BigCount aut_order = 1;
  /// Automorphisms discovered during the search; they generate Aut(g).
  std::vector<Permutation> generators;
};

/// Canonical labeling by individualization and equitable refinement.
///
/// The canonical form is the lexicographically greatest link field over the
/// leaves of the search tree. |Aut| is assembled from orbit sizes along the
/// first path; automorphisms found at leaves prune equivalent subtrees.
/// Reusing one Canonizer across calls avoids reallocating work buffers.
class Canonizer {
 public:
  CanonResult run(const Graph& g);

  /// Canonical link field of a graph given as a packed link word
  /// (n(n-1)/2 <= 64). Skips building the result description.
  std::uint64_t canonical_word(std::size_t n, std::uint64_t field);

  /// Total leaves visited over all runs; exposed for benchmarks.
  std::size_t leaves_visited() const noexcept { return leaves_; }

 private:
  struct Partition {
    std::vector<int> lab;      // vertex at each position
    std::vector<int> pos;      // position of each vertex
    std::vector<int> cell_end; // valid at cell starts
    std::vector<int> start;    // cell start of each position
    int cells = 0;
  };
  struct Level {
    Partition part;
    int target = 0;
    std::vector<int> members;
    int chosen = 0;
  };
  enum class Outcome { kContinue, kAbort };

  void load(std::size_t n, const std::vector<std::uint64_t>& rows);
  void search();
  void refine(Partition& p, std::vector<int> active);
  void individualize(Partition& p, int vertex, int target) const;
  int target_cell(const Partition& p) const;
  Outcome explore(const Partition& p);
  Outcome leaf(const Partition& p);
  void certificate(const Partition& p, std::vector<std::uint64_t>& out) const;
  int compare_cert(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) const;
  void record_automorphism(const std::vector<int>& from_lab, const std::vector<int>& to_lab);
  std::vector<int> orbits_fixing(const std::vector<int>& fixed) const;

  int n_ = 0;
  int words_ = 1;
  std::vector<std::uint64_t> adj_;
  std::vector<int> fixed_;  // individualized vertices along the current path
  std::vector<int> first_lab_, best_lab_;
  std::vector<std::uint64_t> first_cert_, best_cert_, scratch_cert_;
  std::vector<Permutation> generators_;
  std::vector<int> counts_;
  std::vector<std::uint64_t> mask_;
  std::size_t leaves_ = 0;
  BigCount aut_order_;
};

CanonResult canonical_labeling(const Graph& g);
CanonicalForm canonical_form(const Graph& g);
BigCount automorphism_order(const Graph& g);
/// Number of distinct descriptions of g: n! / |Aut(g)|.
BigCount omega(const Graph& g);

}  // namespace graphcx
