#include <algorithm>
#include <bit>
#include <stdexcept>

#include "graphcx/rle.hpp"

namespace graphcx {

namespace {

constexpr std::uint64_t low_mask(std::size_t bits) noexcept {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

constexpr std::size_t ceil_div(std::size_t a, std::size_t b) noexcept { return (a + b - 1) / b; }

}  // namespace

ZetaKernel::ZetaKernel(std::size_t n, GrammarVariant variant)
    : n_(n), len_(pair_count(n)), variant_(variant), wordsizes_(legal_wordsizes(n)) {
  if (len_ > 64) throw std::invalid_argument("ZetaKernel needs n(n-1)/2 <= 64");
}

std::size_t ZetaKernel::operator()(std::uint64_t field, std::size_t cap) {
  if (n_ == 0) return std::min(kNoCompressedForm, cap);
  const std::size_t L = len_;
  field_ = field & low_mask(L);

  // diff_[q] bit i: link bits i and i+q differ (i < L-q).
  std::size_t widest = 0;
  for (auto w : wordsizes_) widest = std::max(widest, std::size_t{1} << w);
  for (std::size_t q = 1; q < L; ++q) diff_[q] = (field_ ^ (field_ >> q)) & low_mask(L - q);

  // square_[p] bit i: bits i..i+2p-1 have period p, i.e. a repeat of 2+ copies starts at i.
  std::fill(std::begin(period_candidates_), std::end(period_candidates_), 0);
  const std::size_t max_square = std::min(widest, L / 2);
  for (std::size_t p = 1; p <= max_square; ++p) {
    std::uint64_t run = ~diff_[p] & low_mask(L - p);
    for (std::size_t k = 1; k < p;) {
      const std::size_t step = std::min(k, p - k);
      run &= run >> step;
      k += step;
    }
    square_[p] = run;
    while (run != 0) {
      const auto pos = static_cast<std::size_t>(std::countr_zero(run));
      run &= run - 1;
      period_candidates_[pos] |= std::uint64_t{1} << p;
    }
  }

  std::size_t result = kNoCompressedForm;
  for (auto w : wordsizes_) {
    const std::size_t header = 2 * w + 1;
    const std::size_t limit = std::min(result, cap);
    if (header >= limit) continue;
    const std::size_t cost = dp(w, limit - header);
    result = std::min(result, header + cost);
  }
  return std::min(result, cap);
}

std::size_t ZetaKernel::dp(std::size_t w, std::size_t budget) {
  const std::size_t L = len_;
  const std::size_t W2 = std::size_t{1} << w;
  constexpr std::uint32_t kInf = 1u << 30;
  const bool implicit = variant_ == GrammarVariant::implicit_final_len;

  best_[L] = 0;
  std::size_t period = 1;  // minimal period of the suffix starting at pos
  std::uint8_t window[66];
  std::size_t head = 0, tail = 0;  // monotone deque over window[head..tail)

  for (std::size_t pos = L; pos-- > 0;) {
    const std::size_t rest = L - pos;
    while (period < rest && (diff_[period] >> pos) != 0) ++period;

    std::uint32_t cand = kInf;
    std::size_t pick_c = 0, pick_p = 0;
    bool pick_final = true;

    if (implicit) {
      std::size_t c = std::min(W2, rest);
      if (period > 1) c = std::min(c, (rest - 1) / (period - 1));
      for (; c >= 1; --c) {
        const std::size_t q = ceil_div(rest, c);
        if (q >= rest || (diff_[q] >> pos) == 0) {
          cand = static_cast<std::uint32_t>(w + q);
          pick_c = c;
          pick_p = q;
          break;
        }
      }
    } else {
      for (std::size_t p = period; p <= std::min(W2, rest); ++p)
        if ((p >= rest || (diff_[p] >> pos) == 0) && ceil_div(rest, p) <= W2) {
          cand = static_cast<std::uint32_t>(2 * w + p);
          pick_c = ceil_div(rest, p);
          pick_p = p;
          break;
        }
    }

    // Literal blocks: min over x in (pos, min(pos+W2, L-1)] of x + best_[x].
    if (pos + 1 <= L - 1) {
      const auto x = static_cast<std::uint8_t>(pos + 1);
      while (tail > head && window[tail - 1] + best_[window[tail - 1]] >= x + best_[x]) --tail;
      window[tail++] = x;
    }
    while (tail > head && window[head] > pos + W2) ++head;
    if (tail > head) {
      const std::size_t x = window[head];
      const auto cost = static_cast<std::uint32_t>(2 * w + (x - pos) + best_[x]);
      if (cost < cand) {
        cand = cost;
        pick_c = 1;
        pick_p = x - pos;
        pick_final = false;
      }
    }

    // Repeats of two or more copies.
    std::uint64_t periods = period_candidates_[pos] & low_mask(std::min(W2, (rest - 1) / 2) + 1);
    while (periods != 0) {
      const auto p = static_cast<std::size_t>(std::countr_zero(periods));
      periods &= periods - 1;
      const std::uint64_t d = diff_[p] >> pos;
      const std::size_t agree = d == 0 ? rest - p : std::min<std::size_t>(rest - p, std::countr_zero(d));
      const std::size_t cmax = std::min({W2, (p + agree) / p, (rest - 1) / p});
      for (std::size_t c = 2; c <= cmax; ++c) {
        const auto cost = static_cast<std::uint32_t>(2 * w + p + best_[pos + c * p]);
        if (cost < cand) {
          cand = cost;
          pick_c = c;
          pick_p = p;
          pick_final = false;
        }
      }
    }

    best_[pos] = cand;
    choice_c_[pos] = static_cast<std::uint16_t>(pick_c);
    choice_p_[pos] = static_cast<std::uint16_t>(pick_p);
    final_[pos] = pick_final;
  }

  const std::size_t cost = best_[0];
  if (!implicit || cost >= budget) return cost;

  // The unconstrained optimum is exact unless one of its non-final blocks
  // would be read back as a final block.
  for (std::size_t pos = 0; pos < L && !final_[pos];) {
    const std::size_t c = choice_c_[pos], p = choice_p_[pos];
    const std::size_t next = pos + c * p;
    if (w + p + best_[next] == ceil_div(L - pos, c)) {
      ++fallbacks_;
      return block_cost(BitString::from_word(field_, L), w, variant_);
    }
    pos = next;
  }
  return cost;
}

}  // namespace graphcx
