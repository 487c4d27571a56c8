#pragma once
// Test-only reference implementations. Deliberately naive: they share no
// code paths with the library beyond the plain Graph/BitString containers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "graphcx/bits.hpp"
#include "graphcx/graph.hpp"

namespace oracle {

inline bool adjacent(const graphcx::Graph& g, std::size_t a, std::size_t b) {
  if (a == b) return false;
  if (a > b) std::swap(a, b);
  return g.link_field()[b * (b - 1) / 2 + a];
}

/// Permutations p with {i,j} an edge iff {p[i],p[j]} an edge.
inline std::uint64_t aut_count(const graphcx::Graph& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (std::size_t j = 1; j < n && ok; ++j)
      for (std::size_t i = 0; i < j && ok; ++i) ok = adjacent(g, i, j) == adjacent(g, p[i], p[j]);
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

/// Distinct link-field strings over all relabelings.
inline std::set<std::string> relabeled_fields(const graphcx::Graph& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::set<std::string> out;
  do {
    std::string s(n * (n - 1) / 2, '0');
    for (std::size_t j = 1; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (adjacent(g, i, j)) {
          auto a = p[i], b = p[j];
          if (a > b) std::swap(a, b);
          s[b * (b - 1) / 2 + a] = '1';
        }
    out.insert(s);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

inline graphcx::Graph random_graph(std::mt19937_64& rng, std::size_t n, double p = 0.5) {
  std::bernoulli_distribution coin(p);
  graphcx::BitString field(n * (n - 1) / 2);
  for (std::size_t i = 0; i < field.size(); ++i)
    if (coin(rng)) field.set(i);
  return graphcx::Graph(n, field);
}

// ---- run-length grammar reference ----------------------------------------

/// Reference decoder for a compressed stream given as a '0'/'1' string.
/// Returns the description string, or nullopt if the stream is malformed.
inline std::optional<std::string> decode_stream(const std::string& s, bool implicit_final) {
  std::size_t at = 0;
  std::size_t w = 0;
  while (at < s.size() && s[at] == '1') ++w, ++at;
  if (at == s.size() || w == 0) return std::nullopt;
  ++at;
  auto field = [&](std::size_t& out) {
    if (at + w > s.size()) return false;
    std::size_t v = 0;
    for (std::size_t k = 0; k < w; ++k) v = v * 2 + (s[at + k] - '0');
    at += w;
    out = v == 0 ? (std::size_t{1} << w) : v;
    return true;
  };
  std::size_t n = 0;
  if (!field(n)) return std::nullopt;
  const std::size_t L = n * (n - 1) / 2;
  std::string link;
  while (link.size() < L) {
    const std::size_t rest = L - link.size();
    std::size_t c = 0, p = 0;
    if (!field(c)) return std::nullopt;
    const std::size_t tail = (rest + c - 1) / c;
    if (implicit_final && s.size() - at == tail) {
      p = tail;
    } else if (!field(p)) {
      return std::nullopt;
    }
    if (at + p > s.size()) return std::nullopt;
    const std::string payload = s.substr(at, p);
    at += p;
    for (std::size_t k = 0; k < c; ++k) link += payload;
  }
  if (at != s.size()) return std::nullopt;
  if (link.size() > L) {
    // Overrun is only legal from the last block.
    link.resize(L);
  }
  return std::string(n, '1') + "0" + link;
}

inline std::string field_bits(std::size_t value, std::size_t w) {
  std::string out(w, '0');
  const std::size_t stored = value == (std::size_t{1} << w) ? 0 : value;
  for (std::size_t k = 0; k < w; ++k) out[w - 1 - k] = ((stored >> k) & 1) ? '1' : '0';
  return out;
}

/// Shortest stream that decode_stream maps back to the description, found by
/// exhaustive search over block sequences that reproduce the link field.
inline std::size_t min_stream(const std::string& description, std::size_t w, bool implicit_final) {
  std::size_t n = 0;
  while (description[n] == '1') ++n;
  const std::string link = description.substr(n + 1);
  const std::size_t L = link.size();
  const std::size_t W = std::size_t{1} << w;
  const std::string header = std::string(w, '1') + "0" + field_bits(n, w);
  std::size_t best = SIZE_MAX;
  if (L == 0) {
    if (decode_stream(header, implicit_final) == description) best = header.size();
    return best;
  }
  auto expands = [&](std::size_t pos, std::size_t c, std::size_t p) {
    if (pos + p > L) return false;
    for (std::size_t k = 0; k < c * p && pos + k < L; ++k)
      if (link[pos + k] != link[pos + k % p]) return false;
    return true;
  };
  std::string stream = header;
  auto rec = [&](auto& self, std::size_t pos) -> void {
    if (stream.size() >= best) return;
    if (pos >= L) {
      if (decode_stream(stream, implicit_final) == description) best = stream.size();
      return;
    }
    const std::size_t rest = L - pos;
    const std::size_t mark = stream.size();
    for (std::size_t c = 1; c <= W; ++c) {
      if (implicit_final) {
        const std::size_t p = (rest + c - 1) / c;
        if (p <= rest && expands(pos, c, p)) {
          stream += field_bits(c, w) + link.substr(pos, p);
          self(self, L);
          stream.resize(mark);
        }
      }
      for (std::size_t p = 1; p <= W; ++p) {
        if (!expands(pos, c, p)) continue;
        if (implicit_final && c * p >= rest) continue;
        stream += field_bits(c, w) + field_bits(p, w) + link.substr(pos, p);
        self(self, pos + c * p);
        stream.resize(mark);
      }
    }
  };
  rec(rec, 0);
  return best;
}

/// Best stream over the wordsizes with n <= 2^w <= n(n-1)/2, or the single
/// fallback max(1, ceil(log2 n)) when there are none.
inline std::size_t zeta(const std::string& description, bool implicit_final) {
  std::size_t n = 0;
  while (description[n] == '1') ++n;
  const std::size_t L = n * (n - 1) / 2;
  std::vector<std::size_t> ws;
  for (std::size_t w = 1; w < 20; ++w)
    if ((std::size_t{1} << w) >= n && (std::size_t{1} << w) <= L) ws.push_back(w);
  if (ws.empty()) {
    std::size_t w = 0;
    while ((std::size_t{1} << w) < n) ++w;
    ws.push_back(std::max<std::size_t>(w, 1));
  }
  std::size_t best = SIZE_MAX;
  for (auto w : ws) best = std::min(best, min_stream(description, w, implicit_final));
  return best;
}

/// C_z straight from the definition: 1 - log2 of the sum of 2^-min(zeta, cap)
/// over the distinct descriptions.
inline double zcomplexity(const graphcx::Graph& g, bool implicit_final) {
  const std::size_t n = g.order();
  const std::size_t cap = n * (n + 1) / 2 + 1;
  long double sum = 0;
  for (const auto& field : relabeled_fields(g)) {
    const std::size_t z = std::min(zeta(std::string(n, '1') + "0" + field, implicit_final), cap);
    sum += std::ldexp(1.0L, -static_cast<int>(z));
  }
  return static_cast<double>(1.0L - std::log2(sum));
}

/// Shannon entropy in bits of the degree-offset edge distribution, from an
/// explicit degree-pair tally.
inline double offdiagonal(const graphcx::Graph& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> deg(n, 0);
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (adjacent(g, i, j)) ++deg[i], ++deg[j];
  std::vector<double> mass(n + 1, 0.0);
  double total = 0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (adjacent(g, i, j)) {
        mass[deg[i] > deg[j] ? deg[i] - deg[j] : deg[j] - deg[i]] += 1;
        total += 1;
      }
  double h = 0;
  for (double m : mass)
    if (m > 0 && m < total) h -= m / total * std::log2(m / total);
  return h;
}

}  // namespace oracle
