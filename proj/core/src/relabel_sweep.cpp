#include "graphcx/relabel_sweep.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <stdexcept>

#if defined(__SSE2__)
#include <emmintrin.h>
#endif

namespace graphcx {

void RelabelingTally::merge(const RelabelingTally& other) {
  if (counts.size() < other.counts.size()) counts.resize(other.counts.size(), 0);
  for (std::size_t z = 0; z < other.counts.size(); ++z) counts[z] += other.counts[z];
  stabilizer += other.stabilizer;
  leaves += other.leaves;
}

namespace {

// Byte b of expand(x) is 0xFF iff bit b of x is set.
constexpr std::array<std::uint64_t, 256> make_expand() {
  std::array<std::uint64_t, 256> t{};
  for (std::size_t x = 0; x < 256; ++x)
    for (std::size_t b = 0; b < 8; ++b)
      if ((x >> b) & 1) t[x] |= std::uint64_t{0xFF} << (8 * b);
  return t;
}
constexpr auto kExpand = make_expand();

constexpr std::uint64_t low_mask(std::size_t bits) noexcept {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

// Smallest pos from which link[pos..len) has period q.
inline std::size_t period_start(std::uint64_t field, std::size_t len, std::size_t q) {
  const std::uint64_t d = (field ^ (field >> q)) & low_mask(len - q);
  return d == 0 ? 0 : 64 - static_cast<std::size_t>(std::countl_zero(d));
}

}  // namespace

RelabelingSweep::RelabelingSweep(std::size_t n, GrammarVariant variant)
    : n_(n), len_(pair_count(n)), cap_(n * (n + 1) / 2 + 1), variant_(variant), kernel_(n, variant) {
  if (n > 11) throw std::invalid_argument("RelabelingSweep supports at most 11 nodes");
  threshold_.fill(127);
  if (n >= 4) {
    for (auto w : legal_wordsizes(n)) {
      Scale s;
      s.w = static_cast<int>(w);
      s.w2 = 1 << w;
      s.unit = s.w2 + 2 * s.w;
      // Smallest run excess (c-1)p at which a repeat of period p beats the
      // amortized literal rate.
      for (int p = 1; p <= std::min(s.w2, 32); ++p)
        for (int c = 2; c <= s.w2; ++c)
          if (s.unit * c * p - s.w2 * p > 2 * s.w * s.w2) {
            threshold_[static_cast<std::size_t>(p - 1)] =
                static_cast<std::int8_t>(std::min<int>(threshold_[static_cast<std::size_t>(p - 1)], (c - 1) * p - 1));
            break;
          }
      init_row_screen(s, static_cast<int>(len_ - (n - 1)), 0);
      init_row_screen(s, static_cast<int>(len_ - (n - 1) - (n - 2)), 1);
      scales_.push_back(std::move(s));
    }
  }
  adj_.assign(n, 0);
  rowmask_.assign((n + 1) * n, 0);
  window_.assign(len_ + 1, 0);
  runs_.assign((len_ + 1) * 32, 0);
}

void RelabelingSweep::run(const Graph& g, RelabelingTally& out, std::size_t first) {
  if (g.order() != n_) throw std::invalid_argument("RelabelingSweep: graph order mismatch");
  if (out.counts.size() < cap_ + 1) out.counts.resize(cap_ + 1, 0);
  std::fill(adj_.begin(), adj_.end(), 0);
  for (auto [i, j] : g.edges()) {
    adj_[i] |= 1u << j;
    adj_[j] |= 1u << i;
  }
  base_field_ = g.link_field().to_word();
  std::fill(rowmask_.begin(), rowmask_.begin() + static_cast<std::ptrdiff_t>(n_), 0);
  used_ = 0;
  out_ = &out;
  if (n_ == 0) {
    leaf(0, 0);
    return;
  }
  first_ = first;
  descend(0, 0);
}

void RelabelingSweep::descend(std::size_t k, std::uint64_t field) {
  if (k == n_) {
    leaf(field, scales_.empty() ? 0 : screen_periods(field));
    return;
  }
  const std::size_t base = k * (k - 1) / 2;
  const std::uint32_t* rows = &rowmask_[k * n_];
  std::uint32_t* next = &rowmask_[(k + 1) * n_];
  // With two labels left both completions are fixed fields. The prefix part
  // of the row-start screen is shared by them. It rarely settles anything
  // under the implicit grammar, so it runs for the explicit one only.
  const bool two_left = variant_ == GrammarVariant::explicit_len && k + 2 == n_ && !scales_.empty() && prefix_capped(static_cast<int>(base), 1);
  for (std::size_t v = 0; v < n_; ++v) {
    if ((used_ >> v) & 1u) continue;
    if (k == 0 && first_ < n_ && v != first_) continue;
    const std::uint32_t row = rows[v];
    if (k + 1 == n_ && !scales_.empty()) {
      // The last row is forced. Most leaves are settled from the DP state at
      // the row start, without running the row through it.
      const std::uint64_t full = field | (std::uint64_t{row} << base);
      const std::size_t periodic = screen_periods(full);
      if (prefix_capped(static_cast<int>(base), 0) && final_repeats_capped(static_cast<int>(base), periodic)) {
        count_capped(full);
        continue;
      }
      advance_row(base, row, k);
      leaf(full, periodic);
      continue;
    }
    if (two_left) {
      const std::uint32_t free = ((1u << n_) - 1) & ~used_ & ~(1u << v);
      const auto u = static_cast<std::size_t>(std::countr_zero(free));
      const std::uint32_t last = rows[u] | (((adj_[v] >> u) & 1u) << k);
      const std::uint64_t full = field | (std::uint64_t{row} << base) | (std::uint64_t{last} << (base + k));
      if (final_repeats_capped(static_cast<int>(base), screen_periods(full))) {
        count_capped(full);
        continue;
      }
    }
    advance_row(base, row, k);
    for (std::size_t u = 0; u < n_; ++u) next[u] = rows[u] | (((adj_[v] >> u) & 1u) << k);
    used_ |= 1u << v;
    descend(k + 1, field | (std::uint64_t{row} << base));
    used_ &= ~(1u << v);
  }
}

void RelabelingSweep::count_capped(std::uint64_t field) {
  ++out_->leaves;
  if (field == base_field_) ++out_->stabilizer;
  ++out_->counts[cap_];
}

// Runs the k bits of one row, starting at boundary `base`, through the
// prefix DP. Run counters and the history window stay in registers and are
// stored only for the row end, which is all the next row needs.
void RelabelingSweep::advance_row(std::size_t base, std::uint32_t row, std::size_t k) {
  std::uint32_t hist = window_[base];
  Scale* const sc = scales_.data();
  const std::size_t ns = scales_.size();
#if defined(__SSE2__)
  const __m128i one = _mm_set1_epi8(1);
  const __m128i limit_lo = _mm_loadu_si128(reinterpret_cast<const __m128i*>(threshold_.data()));
  const __m128i limit_hi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(threshold_.data() + 16));
  __m128i lo = _mm_loadu_si128(reinterpret_cast<const __m128i*>(&runs_[base * 32]));
  __m128i hi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(&runs_[base * 32 + 16]));
  alignas(16) std::uint8_t runs[32];
#else
  std::uint8_t runs[32];
  std::copy_n(&runs_[base * 32], 32, runs);
#endif
  for (std::size_t x = 0; x < k; ++x) {
    const std::size_t b = base + x;
    const std::uint32_t bit = (row >> x) & 1u;
    const std::uint32_t valid = b >= 32 ? ~0u : ((1u << b) - 1);
    const std::uint32_t eq = ~(hist ^ (0u - bit)) & valid;
    hist = (hist << 1) | bit;
    // Lanes whose run is long enough for a repeat to beat the literal rate.
    std::uint32_t long_runs = 0;
#if defined(__SSE2__)
    const __m128i keep_lo = _mm_set_epi64x(static_cast<long long>(kExpand[(eq >> 8) & 255]),
                                           static_cast<long long>(kExpand[eq & 255]));
    const __m128i keep_hi = _mm_set_epi64x(static_cast<long long>(kExpand[(eq >> 24) & 255]),
                                           static_cast<long long>(kExpand[(eq >> 16) & 255]));
    lo = _mm_and_si128(_mm_add_epi8(lo, one), keep_lo);
    hi = _mm_and_si128(_mm_add_epi8(hi, one), keep_hi);
    long_runs = static_cast<std::uint32_t>(_mm_movemask_epi8(_mm_cmpgt_epi8(lo, limit_lo))) |
                (static_cast<std::uint32_t>(_mm_movemask_epi8(_mm_cmpgt_epi8(hi, limit_hi))) << 16);
#else
    for (std::size_t l = 0; l < 32; ++l) {
      runs[l] = ((eq >> l) & 1u) ? static_cast<std::uint8_t>(runs[l] + 1) : 0;
      if (static_cast<int>(runs[l]) > threshold_[l]) long_runs |= 1u << l;
    }
#endif
    const std::size_t nb = b + 1;
    if (nb >= len_) continue;
    // Literal blocks cost at least unit/w2 = 1 + 2w/2^w per bit, so with
    // h(x) = w2 F(x) - unit x a literal never lowers the running minimum of h.
    // Only repeats that beat that rate can, and they are rare.
    if (long_runs == 0) {
      for (std::size_t i = 0; i < ns; ++i) {
        sc[i].pmh[nb] = sc[i].pmh[nb - 1];
        sc[i].kmin[nb] = sc[i].kmin[nb - 1];
      }
      continue;
    }
#if defined(__SSE2__)
    _mm_store_si128(reinterpret_cast<__m128i*>(runs), lo);
    _mm_store_si128(reinterpret_cast<__m128i*>(runs + 16), hi);
#endif
    for (std::size_t i = 0; i < ns; ++i) {
      Scale& s = sc[i];
      std::int32_t best = s.pmh[nb - 1];
      std::uint32_t sq = long_runs & (s.w2 >= 32 ? ~0u : ((1u << s.w2) - 1));
      while (sq != 0) {
        const int p = std::countr_zero(sq) + 1;
        sq &= sq - 1;
        const int run = runs[p - 1] + p;
        for (int c = 2, span = 2 * p; c <= s.w2 && span <= run; ++c, span += p) {
          const int gain = s.unit * span - s.w2 * (2 * s.w + p);
          if (gain > 0) best = std::min(best, s.pmh[nb - static_cast<std::size_t>(span)] - gain);
        }
      }
      s.pmh[nb] = best;
      s.kmin[nb] = std::min(s.kmin[nb - 1], best + 2 * s.w * static_cast<std::int32_t>(nb));
    }
  }
  window_[base + k] = hist;
#if defined(__SSE2__)
  _mm_storeu_si128(reinterpret_cast<__m128i*>(&runs_[(base + k) * 32]), lo);
  _mm_storeu_si128(reinterpret_cast<__m128i*>(&runs_[(base + k) * 32 + 16]), hi);
#else
  std::copy_n(runs, 32, &runs_[(base + k) * 32]);
#endif
}

// Lower bound on the block cost at one wordsize. `periodic` lists the
// (period, start) pairs that can carry a final block of two or more copies.
int RelabelingSweep::final_cost(const Scale& s, std::size_t periodic) const {
  const int L = static_cast<int>(len_);
  const int w = s.w;
  const int w2 = s.w2;
  // ceil(v / 2^w) for either sign.
  auto ceil_units = [&](std::int32_t v) { return -((-v) >> w); };
  // Lower bound on the cost of the first pos bits.
  auto prefix = [&](int pos) { return ceil_units(s.unit * pos + s.pmh[static_cast<std::size_t>(pos)]); };
  if (variant_ == GrammarVariant::implicit_final_len) {
    // One literal final block from any boundary: F(pos) - pos + w + L.
    int best = w + L + ceil_units(s.kmin[len_ - 1]);
    // Payload q from pos needs ceil(rest / c) == q for some 2 <= c <= 2^w.
    for (std::size_t k = 0; k < periodic; ++k) {
      const int q = periods_[k].first;
      if (w + q >= best) break;
      for (int pos = periods_[k].second; pos <= L - std::max(2 * q - 1, 2); ++pos) {
        const int rest = L - pos;
        const int c = (rest + q - 1) / q;
        if (c > w2 || (rest + c - 1) / c != q) continue;
        best = std::min(best, prefix(pos) + w + q);
      }
    }
    return best;
  }
  // Explicit: a literal final block needs rest <= 2^w, then final blocks
  // (c, p) with p <= 2^w and c = ceil(rest / p) <= 2^w.
  int best = std::numeric_limits<int>::max();
  for (int pos = std::max(0, L - w2); pos < L; ++pos) best = std::min(best, prefix(pos) + 2 * w + (L - pos));
  for (std::size_t k = 0; k < periodic; ++k) {
    const int p = periods_[k].first;
    if (p > w2 || 2 * w + p >= best) break;
    for (int pos = std::max(periods_[k].second, L - w2 * p); pos <= L - p - 1; ++pos)
      best = std::min(best, prefix(pos) + 2 * w + p);
  }
  return best;
}

// Periods q whose shortest admissible final suffix is q-periodic: m bits,
// with m = max(2q - 1, 2) for implicit payloads and q + 1 for explicit ones.
std::size_t RelabelingSweep::screen_periods(std::uint64_t field) {
  const bool implicit = variant_ == GrammarVariant::implicit_final_len;
  const std::size_t top = implicit ? (len_ + 1) / 2 : std::min<std::size_t>(len_ - 1, 32);
  // Bit j of cand: the last `probe` bits agree with the bits q = len - 1 - j
  // earlier. Every q > probe needs at least that much agreement.
  const std::size_t probe = implicit ? 4 : 1;
  std::uint64_t cand = ~std::uint64_t{0};
  for (std::size_t t = 0; t < probe && t < len_; ++t) {
    const std::uint64_t y = ((field >> (len_ - 1 - t)) & 1u) ? field : ~field;
    cand &= y << t;
  }
  std::size_t count = 0;
  auto check = [&](std::size_t q) {
    const std::size_t m = implicit ? std::max<std::size_t>(2 * q - 1, 2) : q + 1;
    if (m > len_) return false;
    const std::uint64_t d = ((field >> (len_ - m)) ^ (field >> (len_ - m + q))) & low_mask(m - q);
    if (d == 0) periods_[count++] = {static_cast<int>(q), static_cast<int>(period_start(field, len_, q))};
    return true;
  };
  std::size_t q = 1;
  for (; q <= std::min(top, probe); ++q)
    if (!check(q)) return count;
  if (q > top) return count;
  // q in [q, top] maps to j = len - 1 - q in [len - 1 - top, len - 1 - q].
  cand &= low_mask(len_ - q) & ~low_mask(len_ - 1 - top);
  while (cand != 0) {
    const std::size_t j = 63 - static_cast<std::size_t>(std::countl_zero(cand));
    cand &= ~(std::uint64_t{1} << j);
    if (!check(len_ - 1 - j)) break;
  }
  return count;
}

// The DP has seen the first B bits, B being a row start. Some block of any
// parse holds bit B and starts at x <= B. The bits before x cost at least
// prefix(x) >= (unit x + pmh[B]) / w2, since pmh never increases. After a
// block that does not reach the end, at least one more block follows, so a
// repeat that cannot stop short of the end is left to the final-repeat test.
bool RelabelingSweep::row_start_capped(const Scale& s, int B) const {
  const int L = static_cast<int>(len_);
  const bool implicit = variant_ == GrammarVariant::implicit_final_len;
  const std::uint8_t* runs = &runs_[static_cast<std::size_t>(B) * 32];
  const int w = s.w;
  const int w2 = s.w2;
  const std::int32_t P = s.pmh[static_cast<std::size_t>(B)];
  auto prefix = [&](int x) { return -((-(s.unit * x + P)) >> w); };
  // F(x) - x for any x <= B, from kmin.
  const int excess = -((-s.kmin[static_cast<std::size_t>(B)]) >> w);
  const int need = static_cast<int>(cap_) - 2 * w - 1;
  const int tail = implicit ? w + 1 : 2 * w + 1;
  // Literal blocks holding bit B.
  if (implicit) {
    if (excess + w + L < need) return false;
  } else if (L - w2 <= B) {
    const int x = std::max(0, L - w2);
    if (std::max(prefix(x) - x, excess) + 2 * w + L < need) return false;
  }
  {
    const int x = std::max(0, B + 1 - w2);
    if (std::max(prefix(x) - x, excess) + 2 * w + B + 1 + tail < need) return false;
  }
  // Repeats holding bit B that stop short of the end: the known bits from x
  // to B must already be p-periodic.
  for (int p = 1; p <= w2; ++p) {
    const int periodic_from = std::max(0, B - p - static_cast<int>(runs[p - 1]));
    const int x = std::max({periodic_from, B - w2 * p + 1, 0});
    if (x + 2 * p < L && prefix(x) + 2 * w + p + tail < need) return false;
  }
  return true;
}

// Same test as row_start_capped with pmh = 0, folded into per-lane limits.
void RelabelingSweep::init_row_screen(Scale& s, int B, int slot) const {
  auto& limit = s.row_limit[static_cast<std::size_t>(slot)];
  bool& never = s.never_capped[static_cast<std::size_t>(slot)];
  limit.fill(127);
  if (n_ < 2 || B < 0) {
    never = true;
    return;
  }
  const int L = static_cast<int>(len_);
  const bool implicit = variant_ == GrammarVariant::implicit_final_len;
  const int w = s.w;
  const int w2 = s.w2;
  auto prefix = [&](int x) { return -((-(s.unit * x)) >> w); };
  const int need = static_cast<int>(cap_) - 2 * w - 1;
  const int tail = implicit ? w + 1 : 2 * w + 1;
  if (implicit && prefix(0) + w + L < need) never = true;
  if (!implicit && L - w2 <= B) {
    const int x = std::max(0, L - w2);
    if (prefix(x) + 2 * w + L - x < need) never = true;
  }
  const int xl = std::max(0, B + 1 - w2);
  if (prefix(xl) + 2 * w + B + 1 - xl + tail < need) never = true;
  for (int p = 1; p <= std::min(w2, 32); ++p) {
    // Smallest run r making the block beat the cap; runs stay below B.
    for (int r = 0; r <= B; ++r) {
      const int x = std::max({B - p - r, B - w2 * p + 1, 0});
      if (x + 2 * p < L && prefix(x) + 2 * w + p + tail < need) {
        if (r == 0) never = true;
        else limit[static_cast<std::size_t>(p - 1)] = static_cast<std::int8_t>(r - 1);
        break;
      }
    }
  }
}

// Prefix half of the row-start screen at every wordsize; slot selects the
// precomputed limits for B.
bool RelabelingSweep::prefix_capped(int B, int slot) const {
  const std::uint8_t* runs = &runs_[static_cast<std::size_t>(B) * 32];
  for (const auto& s : scales_) {
    if (s.pmh[static_cast<std::size_t>(B)] != 0) {
      if (!row_start_capped(s, B)) return false;
      continue;
    }
    if (s.never_capped[static_cast<std::size_t>(slot)]) return false;
    const auto& limit = s.row_limit[static_cast<std::size_t>(slot)];
#if defined(__SSE2__)
    const __m128i lo = _mm_loadu_si128(reinterpret_cast<const __m128i*>(runs));
    const __m128i hi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(runs + 16));
    const __m128i lim_lo = _mm_loadu_si128(reinterpret_cast<const __m128i*>(limit.data()));
    const __m128i lim_hi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(limit.data() + 16));
    if ((_mm_movemask_epi8(_mm_cmpgt_epi8(lo, lim_lo)) | _mm_movemask_epi8(_mm_cmpgt_epi8(hi, lim_hi))) != 0)
      return false;
#else
    for (std::size_t l = 0; l < 32; ++l)
      if (static_cast<int>(runs[l]) > limit[l]) return false;
#endif
  }
  return true;
}

// Final repeats of the full field starting at or before B.
bool RelabelingSweep::final_repeats_capped(int B, std::size_t periodic) const {
  const int L = static_cast<int>(len_);
  const bool implicit = variant_ == GrammarVariant::implicit_final_len;
  for (const auto& s : scales_) {
    const int w = s.w;
    const int w2 = s.w2;
    const std::int32_t P = s.pmh[static_cast<std::size_t>(B)];
    const int need = static_cast<int>(cap_) - 2 * w - 1;
    for (std::size_t k = 0; k < periodic; ++k) {
      const int q = periods_[k].first;
      if (!implicit && q > w2) break;
      const int x = std::max({periods_[k].second, L - w2 * q, 0});
      if (x > B) continue;
      if (-((-(s.unit * x + P)) >> w) + (implicit ? w : 2 * w) + q < need) return false;
    }
  }
  return true;
}

void RelabelingSweep::leaf(std::uint64_t field, std::size_t periodic) {
  RelabelingTally& out = *out_;
  ++out.leaves;
  if (field == base_field_) ++out.stabilizer;
  std::size_t z = cap_;
  if (scales_.empty()) {
    z = kernel_(field, cap_);
  } else {
    std::size_t lower = cap_;
    for (const auto& s : scales_)
      lower = std::min(lower, static_cast<std::size_t>(2 * s.w + 1 + final_cost(s, periodic)));
    if (lower < cap_) {
      ++exact_calls_;
      z = kernel_(field, cap_);
    }
  }
  ++out.counts[z];
}

}  // namespace graphcx
