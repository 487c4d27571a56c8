#include "graphcx/canon.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace graphcx {

BigCount factorial(std::size_t n) {
  BigCount out = 1;
  for (std::size_t k = 2; k <= n; ++k) out *= k;
  return out;
}

double log2_exact(const BigCount& value) {
  if (value <= 0) throw std::domain_error("log2 of a non-positive count");
  const std::size_t msb = boost::multiprecision::msb(value);
  if (msb < 63) return std::log2(static_cast<double>(value.convert_to<std::uint64_t>()));
  // Keep the top 63 bits; the discarded tail changes the result below double precision.
  const std::size_t shift = msb - 62;
  const BigCount top = value >> shift;
  if (top << shift == value && (top & (top - 1)) == 0) return static_cast<double>(msb);
  return static_cast<double>(shift) + std::log2(static_cast<double>(top.convert_to<std::uint64_t>()));
}

namespace {

// Union-find with path halving over vertex indices.
int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

void Canonizer::load(std::size_t n, const std::vector<std::uint64_t>& rows) {
  n_ = static_cast<int>(n);
  words_ = std::max(1, (n_ + 63) / 64);
  adj_ = rows;
  counts_.assign(n, 0);
  mask_.assign(static_cast<std::size_t>(words_), 0);
}

CanonResult Canonizer::run(const Graph& g) {
  const std::size_t n = g.order();
  const std::size_t words = std::max<std::size_t>(1, (n + 63) / 64);
  std::vector<std::uint64_t> rows(n * words, 0);
  for (auto [i, j] : g.edges()) {
    rows[i * words + (j >> 6)] |= std::uint64_t{1} << (j & 63);
    rows[j * words + (i >> 6)] |= std::uint64_t{1} << (i & 63);
  }
  load(n, rows);
  search();

  CanonResult out;
  out.labeling.assign(n, 0);
  for (std::size_t p = 0; p < n; ++p) out.labeling[static_cast<std::size_t>(best_lab_[p])] = p;
  BitString field(pair_count(n));
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if ((best_cert_[j * words + (i >> 6)] >> (i & 63)) & 1u) field.set(edge_index_unchecked(i, j));
  out.form = CanonicalForm{encode_link_field(n, field)};
  out.aut_order = aut_order_;
  out.generators = generators_;
  return out;
}

std::uint64_t Canonizer::canonical_word(std::size_t n, std::uint64_t field) {
  if (pair_count(n) > 64) throw std::invalid_argument("canonical_word: link field exceeds 64 bits");
  std::vector<std::uint64_t> rows(n, 0);
  std::size_t bit = 0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i, ++bit)
      if ((field >> bit) & 1u) {
        rows[i] |= std::uint64_t{1} << j;
        rows[j] |= std::uint64_t{1} << i;
      }
  load(n, rows);
  search();
  std::uint64_t out = 0;
  bit = 0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i, ++bit)
      if ((best_cert_[j] >> i) & 1u) out |= std::uint64_t{1} << bit;
  return out;
}

void Canonizer::search() {
  generators_.clear();
  fixed_.clear();
  aut_order_ = 1;

  Partition root;
  root.lab.resize(static_cast<std::size_t>(n_));
  std::iota(root.lab.begin(), root.lab.end(), 0);
  root.pos = root.lab;
  root.cell_end.assign(static_cast<std::size_t>(n_), n_);
  root.start.assign(static_cast<std::size_t>(n_), 0);
  root.cells = n_ > 0 ? 1 : 0;
  if (n_ > 0) refine(root, {0});

  std::vector<Level> levels;
  Partition cur = root;
  while (cur.cells < n_) {
    const int t = target_cell(cur);
    std::vector<int> members(cur.lab.begin() + t, cur.lab.begin() + cur.cell_end[static_cast<std::size_t>(t)]);
    std::sort(members.begin(), members.end());
    levels.push_back(Level{cur, t, members, members.front()});
    individualize(cur, members.front(), t);
    fixed_.push_back(members.front());
    refine(cur, {t});
  }
  ++leaves_;
  first_lab_ = cur.lab;
  certificate(cur, first_cert_);
  best_lab_ = first_lab_;
  best_cert_ = first_cert_;

  // Bottom-up over the first path: |Aut| is the product of the orbit sizes of
  // each chosen vertex in the stabilizer of the vertices chosen above it.
  for (std::size_t k = levels.size(); k-- > 0;) {
    const Level& level = levels[k];
    fixed_.resize(k);
    std::vector<int> explored;
    std::vector<int> orbit;
    std::size_t known = static_cast<std::size_t>(-1);
    for (int u : level.members) {
      if (u == level.chosen) continue;
      if (known != generators_.size()) {
        orbit = orbits_fixing(fixed_);
        known = generators_.size();
      }
      if (orbit[static_cast<std::size_t>(u)] == orbit[static_cast<std::size_t>(level.chosen)]) continue;
      if (std::any_of(explored.begin(), explored.end(), [&](int e) {
            return orbit[static_cast<std::size_t>(e)] == orbit[static_cast<std::size_t>(u)];
          }))
        continue;
      Partition child = level.part;
      individualize(child, u, level.target);
      fixed_.push_back(u);
      refine(child, {level.target});
      explore(child);
      fixed_.pop_back();
      explored.push_back(u);
    }
    orbit = orbits_fixing(fixed_);
    const int root_of_chosen = orbit[static_cast<std::size_t>(level.chosen)];
    aut_order_ *= static_cast<unsigned>(std::count(orbit.begin(), orbit.end(), root_of_chosen));
  }
}

Canonizer::Outcome Canonizer::explore(const Partition& p) {
  if (p.cells == n_) return leaf(p);
  const int t = target_cell(p);
  std::vector<int> members(p.lab.begin() + t, p.lab.begin() + p.cell_end[static_cast<std::size_t>(t)]);
  std::sort(members.begin(), members.end());
  std::vector<int> explored;
  std::vector<int> orbit;
  std::size_t known = static_cast<std::size_t>(-1);
  for (int u : members) {
    if (!explored.empty()) {
      if (known != generators_.size()) {
        orbit = orbits_fixing(fixed_);
        known = generators_.size();
      }
      if (std::any_of(explored.begin(), explored.end(), [&](int e) {
            return orbit[static_cast<std::size_t>(e)] == orbit[static_cast<std::size_t>(u)];
          }))
        continue;
    }
    Partition child = p;
    individualize(child, u, t);
    fixed_.push_back(u);
    refine(child, {t});
    const Outcome r = explore(child);
    fixed_.pop_back();
    if (r == Outcome::kAbort) return r;
    explored.push_back(u);
  }
  return Outcome::kContinue;
}

Canonizer::Outcome Canonizer::leaf(const Partition& p) {
  ++leaves_;
  certificate(p, scratch_cert_);
  if (scratch_cert_ == first_cert_) {
    // Equivalent to the first leaf: this whole subtree mirrors one already searched.
    record_automorphism(first_lab_, p.lab);
    return Outcome::kAbort;
  }
  const int c = compare_cert(scratch_cert_, best_cert_);
  if (c == 0) {
    record_automorphism(best_lab_, p.lab);
  } else if (c > 0) {
    best_cert_ = scratch_cert_;
    best_lab_ = p.lab;
  }
  return Outcome::kContinue;
}

void Canonizer::record_automorphism(const std::vector<int>& from_lab, const std::vector<int>& to_lab) {
  Permutation gamma(static_cast<std::size_t>(n_));
  bool identity = true;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    gamma[static_cast<std::size_t>(from_lab[i])] = static_cast<std::size_t>(to_lab[i]);
    identity = identity && from_lab[i] == to_lab[i];
  }
  if (!identity) generators_.push_back(std::move(gamma));
}

std::vector<int> Canonizer::orbits_fixing(const std::vector<int>& fixed) const {
  std::vector<int> parent(static_cast<std::size_t>(n_));
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& gamma : generators_) {
    const bool stabilizes = std::all_of(fixed.begin(), fixed.end(), [&](int f) {
      return gamma[static_cast<std::size_t>(f)] == static_cast<std::size_t>(f);
    });
    if (!stabilizes) continue;
    for (std::size_t v = 0; v < gamma.size(); ++v) {
      const int a = find_root(parent, static_cast<int>(v));
      const int b = find_root(parent, static_cast<int>(gamma[v]));
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  for (int v = 0; v < n_; ++v) parent[static_cast<std::size_t>(v)] = find_root(parent, v);
  return parent;
}

int Canonizer::target_cell(const Partition& p) const {
  int best = -1;
  int best_size = n_ + 1;
  for (int x = 0; x < n_; x = p.cell_end[static_cast<std::size_t>(x)]) {
    const int size = p.cell_end[static_cast<std::size_t>(x)] - x;
    if (size > 1 && size < best_size) {
      best = x;
      best_size = size;
    }
  }
  return best;
}

void Canonizer::individualize(Partition& p, int vertex, int target) const {
  const auto t = static_cast<std::size_t>(target);
  const int end = p.cell_end[t];
  const auto q = static_cast<std::size_t>(p.pos[static_cast<std::size_t>(vertex)]);
  std::swap(p.lab[t], p.lab[q]);
  p.pos[static_cast<std::size_t>(p.lab[t])] = target;
  p.pos[static_cast<std::size_t>(p.lab[q])] = static_cast<int>(q);
  p.cell_end[t] = target + 1;
  p.cell_end[t + 1] = end;
  for (int x = target + 1; x < end; ++x) p.start[static_cast<std::size_t>(x)] = target + 1;
  ++p.cells;
}

void Canonizer::refine(Partition& p, std::vector<int> active) {
  const auto W = static_cast<std::size_t>(words_);
  std::vector<char> queued(static_cast<std::size_t>(n_), 0);
  std::deque<int> queue;
  for (int s : active) {
    queue.push_back(s);
    queued[static_cast<std::size_t>(s)] = 1;
  }
  std::vector<std::pair<int, int>> pieces;
  while (!queue.empty() && p.cells < n_) {
    const int s = queue.front();
    queue.pop_front();
    queued[static_cast<std::size_t>(s)] = 0;

    std::fill(mask_.begin(), mask_.end(), 0);
    for (int x = s; x < p.cell_end[static_cast<std::size_t>(s)]; ++x) {
      const auto v = static_cast<std::size_t>(p.lab[static_cast<std::size_t>(x)]);
      mask_[v >> 6] |= std::uint64_t{1} << (v & 63);
    }

    for (int x = 0; x < n_;) {
      const int e = p.cell_end[static_cast<std::size_t>(x)];
      if (e - x == 1) {
        x = e;
        continue;
      }
      bool uniform = true;
      int first_count = -1;
      for (int y = x; y < e; ++y) {
        const auto v = static_cast<std::size_t>(p.lab[static_cast<std::size_t>(y)]);
        int c = 0;
        for (std::size_t w = 0; w < W; ++w) c += std::popcount(adj_[v * W + w] & mask_[w]);
        counts_[v] = c;
        if (first_count < 0)
          first_count = c;
        else if (c != first_count)
          uniform = false;
      }
      if (uniform) {
        x = e;
        continue;
      }
      std::sort(p.lab.begin() + x, p.lab.begin() + e, [&](int a, int b) {
        const int ca = counts_[static_cast<std::size_t>(a)], cb = counts_[static_cast<std::size_t>(b)];
        return ca != cb ? ca < cb : a < b;
      });
      pieces.clear();
      int piece_start = x;
      for (int y = x; y < e; ++y) {
        const auto v = static_cast<std::size_t>(p.lab[static_cast<std::size_t>(y)]);
        p.pos[v] = y;
        if (y > x && counts_[v] != counts_[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(y - 1)])]) {
          pieces.emplace_back(piece_start, y);
          piece_start = y;
        }
      }
      pieces.emplace_back(piece_start, e);
      for (auto [a, b] : pieces) {
        p.cell_end[static_cast<std::size_t>(a)] = b;
        for (int y = a; y < b; ++y) p.start[static_cast<std::size_t>(y)] = a;
      }
      p.cells += static_cast<int>(pieces.size()) - 1;

      if (queued[static_cast<std::size_t>(x)]) {
        for (std::size_t k = 1; k < pieces.size(); ++k) {
          queue.push_back(pieces[k].first);
          queued[static_cast<std::size_t>(pieces[k].first)] = 1;
        }
      } else {
        std::size_t largest = 0;
        for (std::size_t k = 1; k < pieces.size(); ++k)
          if (pieces[k].second - pieces[k].first > pieces[largest].second - pieces[largest].first) largest = k;
        for (std::size_t k = 0; k < pieces.size(); ++k) {
          if (k == largest) continue;
          queue.push_back(pieces[k].first);
          queued[static_cast<std::size_t>(pieces[k].first)] = 1;
        }
      }
      x = e;
    }
  }
}

void Canonizer::certificate(const Partition& p, std::vector<std::uint64_t>& out) const {
  const auto W = static_cast<std::size_t>(words_);
  out.assign(static_cast<std::size_t>(n_) * W, 0);
  for (std::size_t i = 0; i < static_cast<std::size_t>(n_); ++i) {
    const auto v = static_cast<std::size_t>(p.lab[i]);
    for (std::size_t w = 0; w < W; ++w) {
      std::uint64_t row = adj_[v * W + w];
      while (row != 0) {
        const auto u = w * 64 + static_cast<std::size_t>(std::countr_zero(row));
        row &= row - 1;
        const auto q = static_cast<std::size_t>(p.pos[u]);
        out[i * W + (q >> 6)] |= std::uint64_t{1} << (q & 63);
      }
    }
  }
}

int Canonizer::compare_cert(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) const {
  const auto W = static_cast<std::size_t>(words_);
  for (std::size_t j = 1; j < static_cast<std::size_t>(n_); ++j) {
    for (std::size_t w = 0; w <= (j - 1) >> 6; ++w) {
      std::uint64_t diff = a[j * W + w] ^ b[j * W + w];
      if (w == j >> 6) diff &= (std::uint64_t{1} << (j & 63)) - 1;
      if (diff != 0) {
        const auto bit = std::countr_zero(diff);
        return ((a[j * W + w] >> bit) & 1u) ? 1 : -1;
      }
    }
  }
  return 0;
}

CanonResult canonical_labeling(const Graph& g) {
  Canonizer canonizer;
  return canonizer.run(g);
}

CanonicalForm canonical_form(const Graph& g) { return canonical_labeling(g).form; }

BigCount automorphism_order(const Graph& g) { return canonical_labeling(g).aut_order; }

BigCount omega(const Graph& g) { return factorial(g.order()) / automorphism_order(g); }

}  // namespace graphcx
