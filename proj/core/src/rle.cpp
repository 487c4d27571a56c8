#include "graphcx/rle.hpp"

#include <algorithm>
#include <stdexcept>

namespace graphcx {

std::string_view to_string(GrammarVariant v) noexcept {
  return v == GrammarVariant::explicit_len ? "explicit-len" : "implicit-final-len";
}

GrammarVariant parse_variant(std::string_view text) {
  if (text == "explicit-len") return GrammarVariant::explicit_len;
  if (text == "implicit-final-len") return GrammarVariant::implicit_final_len;
  throw std::invalid_argument("unknown grammar variant '" + std::string(text) +
                              "' (expected explicit-len or implicit-final-len)");
}

std::size_t ceil_log2(std::size_t n) noexcept {
  std::size_t w = 0;
  while ((std::size_t{1} << w) < n) ++w;
  return w;
}

std::vector<std::size_t> legal_wordsizes(std::size_t n) {
  std::vector<std::size_t> out;
  const std::size_t pairs = pair_count(n);
  for (std::size_t w = 1; w < 63 && (std::size_t{1} << w) <= pairs; ++w)
    if ((std::size_t{1} << w) >= n) out.push_back(w);
  if (out.empty()) out.push_back(std::max<std::size_t>(1, ceil_log2(n)));
  return out;
}

std::size_t empty_full_closed_form(std::size_t n) {
  if (n < 2) throw std::invalid_argument("closed form needs n >= 2");
  const std::size_t w = ceil_log2(n);
  const std::size_t denom = std::size_t{1} << (w + 1);
  return 2 + 3 * w + (n * (n - 1) + denom - 1) / denom;
}

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 4;

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

// w-bit field holding 1..2^w, with 2^w written as all zeros.
void put_field(BitString& out, std::size_t value, std::size_t w) {
  out.append_uint(value == (std::size_t{1} << w) ? 0 : value, w);
}

// Exhaustive minimal parse of a link field into blocks at a fixed wordsize.
class BlockParser {
 public:
  BlockParser(const BitString& link, std::size_t w, GrammarVariant variant)
      : link_(link), len_(link.size()), w_(w), cap_(std::size_t{1} << w), variant_(variant) {
    // Agreement runs are only needed for periods a length field can hold;
    // longer implicit final payloads are checked against a per-suffix
    // Z-array instead.
    short_ = std::min(cap_, len_ == 0 ? 0 : len_ - 1);
    agree_.assign((short_ + 1) * (len_ + 1), 0);
    for (std::size_t p = 1; p <= short_; ++p)
      for (std::size_t pos = len_ - p; pos-- > 0;)
        if (link_[pos] == link_[pos + p]) agree_[p * (len_ + 1) + pos] = agree_[p * (len_ + 1) + pos + 1] + 1;
    solve_min();
    if (variant_ == GrammarVariant::implicit_final_len && !min_path_decodable()) {
      exact_sets_ = true;
      solve_sets();
    }
  }

  std::size_t min_cost() const { return min_cost_; }

  std::vector<Block> blocks() const { return exact_sets_ ? blocks_sets() : blocks_min(); }

 private:
  std::size_t agree(std::size_t p, std::size_t pos) const { return agree_[p * (len_ + 1) + pos]; }

  bool periodic(std::size_t q, std::size_t pos) const {
    const std::size_t rest = len_ - pos;
    if (q >= rest) return true;
    if (q <= short_) return agree(q, pos) >= rest - q;
    load_suffix(pos);
    return z_[q] >= rest - q;
  }

  // Z-array of link[pos..len): z_[k] = common prefix length of the suffix
  // and its own shift by k.
  void load_suffix(std::size_t pos) const {
    if (z_pos_ == pos) return;
    z_pos_ = pos;
    const std::size_t m = len_ - pos;
    z_.assign(m + 1, 0);
    std::size_t l = 0, r = 0;
    for (std::size_t k = 1; k < m; ++k) {
      std::size_t z = k < r ? std::min<std::size_t>(r - k, z_[k - l]) : 0;
      while (k + z < m && link_[pos + z] == link_[pos + k + z]) ++z;
      z_[k] = z;
      if (k + z > r) l = k, r = k + z;
    }
  }

  // Largest repeat count for a non-final block of period p at pos.
  std::size_t max_repeat(std::size_t p, std::size_t pos) const {
    const std::size_t rest = len_ - pos;
    const std::size_t run = std::min(rest, p + agree(p, pos));
    return std::min({cap_, run / p, (rest - 1) / p});
  }

  // Cheapest parse ignoring the implicit grammar's decodability rule. For
  // explicit_len that rule does not exist, so this is the answer.
  void solve_min() {
    const bool implicit = variant_ == GrammarVariant::implicit_final_len;
    best_.assign(len_ + 1, kInf);
    pick_.assign(len_ + 1, {0, 0});
    best_[len_] = 0;
    for (std::size_t pos = len_; pos-- > 0;) {
      const std::size_t rest = len_ - pos;
      if (implicit) {
        for (std::size_t c = std::min(cap_, rest); c >= 1; --c) {
          const std::size_t q = ceil_div(rest, c);
          if (periodic(q, pos)) {
            best_[pos] = w_ + q;
            pick_[pos] = {c, q};
            break;
          }
        }
      } else {
        for (std::size_t p = 1; p <= std::min(cap_, rest); ++p)
          if (periodic(p, pos) && ceil_div(rest, p) <= cap_) {
            best_[pos] = 2 * w_ + p;
            pick_[pos] = {ceil_div(rest, p), p};
            break;
          }
      }
      for (std::size_t p = 1; p <= std::min(cap_, rest - 1); ++p)
        for (std::size_t c = 1, cmax = max_repeat(p, pos); c <= cmax; ++c) {
          const std::size_t cost = 2 * w_ + p + best_[pos + c * p];
          if (cost < best_[pos]) {
            best_[pos] = cost;
            pick_[pos] = {c, p};
          }
        }
    }
    min_cost_ = best_[0];
  }

  // True when no non-final block on the argmin path leaves exactly a final
  // payload's worth of bits behind its repeat field.
  bool min_path_decodable() const {
    std::size_t pos = 0;
    while (pos < len_) {
      auto [c, p] = pick_[pos];
      const std::size_t rest = len_ - pos;
      if (c * p >= rest) return true;
      if (ceil_div(rest, c) == w_ + p + best_[pos + c * p]) return false;
      pos += c * p;
    }
    return true;
  }

  std::vector<Block> blocks_min() const {
    std::vector<Block> out;
    std::size_t pos = 0;
    while (pos < len_) {
      auto [c, p] = pick_[pos];
      out.push_back(Block{c, p, link_.slice(pos, p)});
      pos = std::min(len_, pos + c * p);
    }
    return out;
  }

  // Implicit grammar: a non-final block is illegal when the rest of the
  // stream after its repeat field would read as a final payload, so the
  // optimum depends on which suffix costs are reachable, not only the least.
  // Track the full set of reachable costs up to the single-literal bound.
  void solve_sets() {
    bound_ = w_ + len_;
    words_ = (bound_ + 1 + 63) / 64;
    sets_.assign((len_ + 1) * words_, 0);
    sets_[len_ * words_] = 1;
    std::vector<std::uint64_t> tmp(words_);
    for (std::size_t pos = len_; pos-- > 0;) {
      const std::size_t rest = len_ - pos;
      std::uint64_t* dst = &sets_[pos * words_];
      for (std::size_t c = 1; c <= std::min(cap_, rest); ++c) {
        const std::size_t q = ceil_div(rest, c);
        if (periodic(q, pos)) set_bit(dst, w_ + q);
      }
      for (std::size_t p = 1; p <= std::min(cap_, rest - 1); ++p)
        for (std::size_t c = 1, cmax = max_repeat(p, pos); c <= cmax; ++c) {
          const std::size_t next = pos + c * p;
          std::copy_n(&sets_[next * words_], words_, tmp.begin());
          const std::size_t tail = ceil_div(rest, c);
          if (tail >= w_ + p) clear_bit(tmp.data(), tail - w_ - p);
          or_shifted(dst, tmp.data(), 2 * w_ + p);
        }
    }
    min_cost_ = kInf;
    for (std::size_t k = 0; k <= bound_; ++k)
      if (get_bit(&sets_[0], k)) {
        min_cost_ = k;
        break;
      }
  }

  std::vector<Block> blocks_sets() const {
    std::vector<Block> out;
    std::size_t pos = 0;
    std::size_t target = min_cost_;
    while (pos < len_) {
      const std::size_t rest = len_ - pos;
      bool done = false;
      // Ties go to the largest repeat, the shortest payload.
      for (std::size_t c = std::min(cap_, rest); c >= 1 && !done; --c) {
        const std::size_t q = ceil_div(rest, c);
        if (w_ + q == target && periodic(q, pos)) {
          out.push_back(Block{c, q, link_.slice(pos, q)});
          pos = len_;
          done = true;
        }
      }
      for (std::size_t p = 1; p <= std::min(cap_, rest - 1) && !done; ++p)
        for (std::size_t c = 1, cmax = max_repeat(p, pos); c <= cmax && !done; ++c) {
          if (target < 2 * w_ + p) continue;
          const std::size_t s = target - 2 * w_ - p;
          const std::size_t next = pos + c * p;
          if (ceil_div(rest, c) == w_ + p + s || !get_bit(&sets_[next * words_], s)) continue;
          out.push_back(Block{c, p, link_.slice(pos, p)});
          pos = next;
          target = s;
          done = true;
        }
      if (!done) throw std::logic_error("block reconstruction failed");
    }
    return out;
  }

  bool get_bit(const std::uint64_t* s, std::size_t k) const {
    return k <= bound_ && ((s[k >> 6] >> (k & 63)) & 1u);
  }
  void set_bit(std::uint64_t* s, std::size_t k) const {
    if (k <= bound_) s[k >> 6] |= std::uint64_t{1} << (k & 63);
  }
  void clear_bit(std::uint64_t* s, std::size_t k) const {
    if (k <= bound_) s[k >> 6] &= ~(std::uint64_t{1} << (k & 63));
  }
  void or_shifted(std::uint64_t* dst, const std::uint64_t* src, std::size_t shift) const {
    const std::size_t ws = shift >> 6, bs = shift & 63;
    for (std::size_t i = words_; i-- > ws;) {
      std::uint64_t v = src[i - ws] << bs;
      if (bs != 0 && i - ws >= 1) v |= src[i - ws - 1] >> (64 - bs);
      dst[i] |= v;
    }
    const std::size_t used = (bound_ + 1) & 63;
    if (used != 0) dst[words_ - 1] &= (std::uint64_t{1} << used) - 1;
  }

  const BitString& link_;
  std::size_t len_, w_, cap_;
  GrammarVariant variant_;
  std::size_t short_ = 0;
  std::vector<std::uint32_t> agree_;
  mutable std::vector<std::uint32_t> z_;
  mutable std::size_t z_pos_ = kInf;
  bool exact_sets_ = false;
  std::size_t min_cost_ = kInf;
  std::vector<std::size_t> best_;
  std::vector<std::pair<std::size_t, std::size_t>> pick_;
  std::size_t bound_ = 0, words_ = 0;
  std::vector<std::uint64_t> sets_;
};

void check_wordsize(std::size_t n, std::size_t w) {
  const auto legal = legal_wordsizes(n);
  if (std::find(legal.begin(), legal.end(), w) == legal.end()) {
    std::string range;
    for (auto x : legal) range += (range.empty() ? "" : ",") + std::to_string(x);
    throw std::invalid_argument("wordsize " + std::to_string(w) + " is out of range for n = " + std::to_string(n) +
                                " (legal: " + range + ")");
  }
}

}  // namespace

std::size_t block_cost(const BitString& link_field, std::size_t w, GrammarVariant variant) {
  return BlockParser(link_field, w, variant).min_cost();
}

CompressedDescription compress(const Description& d, std::size_t w, GrammarVariant variant) {
  const std::size_t n = d.node_count();
  if (n == 0) throw std::invalid_argument("the 0-node description has no compressed form");
  check_wordsize(n, w);
  const BitString link = d.link_field();
  BlockParser parser(link, w, variant);
  auto blocks = parser.blocks();

  BitString bits(w, true);
  bits.push_back(false);
  put_field(bits, n, w);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    put_field(bits, blocks[k].repeat, w);
    const bool last = k + 1 == blocks.size();
    if (!(last && variant == GrammarVariant::implicit_final_len)) put_field(bits, blocks[k].length, w);
    bits.append(blocks[k].payload);
  }
  return CompressedDescription(w, variant, std::move(bits), std::move(blocks));
}

Description decompress(const CompressedDescription& c) {
  const BitString& bits = c.bits();
  std::size_t at = 0;
  auto need = [&](std::size_t k, const char* what) {
    if (bits.size() - at < k) throw std::invalid_argument(std::string("compressed stream truncated in ") + what);
  };
  auto read_field = [&](std::size_t w, const char* what) {
    need(w, what);
    std::size_t v = 0;
    for (std::size_t i = 0; i < w; ++i) v = (v << 1) | (bits[at++] ? 1u : 0u);
    return v == 0 ? std::size_t{1} << w : v;
  };

  std::size_t w = 0;
  while (at < bits.size() && bits[at]) ++w, ++at;
  if (at == bits.size()) throw std::invalid_argument("malformed compressed header: missing wordsize terminator");
  if (w == 0 || w > 32) throw std::invalid_argument("malformed compressed header: bad wordsize");
  ++at;
  const std::size_t n = read_field(w, "node count");
  const std::size_t len = pair_count(n);

  BitString link;
  while (link.size() < len) {
    const std::size_t rest = len - link.size();
    const std::size_t repeat = read_field(w, "repeat field");
    const std::size_t left = bits.size() - at;
    const bool implicit_final =
        c.variant() == GrammarVariant::implicit_final_len && left == ceil_div(rest, repeat);
    const std::size_t length = implicit_final ? left : read_field(w, "length field");
    need(length, "payload");
    const BitString payload = bits.slice(at, length);
    at += length;
    if (c.variant() == GrammarVariant::implicit_final_len && !implicit_final && repeat * length >= rest)
      throw std::invalid_argument("non-final block overruns the link field");
    for (std::size_t r = 0; r < repeat && link.size() < len; ++r)
      for (std::size_t i = 0; i < length && link.size() < len; ++i) link.push_back(payload[i]);
  }
  if (at != bits.size()) throw std::invalid_argument("compressed stream has trailing bits");
  return encode_link_field(n, link);
}

std::size_t zeta(const Description& d, GrammarVariant variant) {
  const std::size_t n = d.node_count();
  if (n == 0) return kNoCompressedForm;
  const std::size_t len = pair_count(n);
  if (len <= 64) {
    ZetaKernel kernel(n, variant);
    return kernel(d.link_field().to_word());
  }
  const BitString link = d.link_field();
  std::size_t best = kNoCompressedForm;
  for (auto w : legal_wordsizes(n)) best = std::min(best, 2 * w + 1 + block_cost(link, w, variant));
  return best;
}

std::string CompressedDescription::to_field_string() const {
  const std::string all = bits_.to_string();
  const std::size_t w = wordsize_;
  if (all.size() < 2 * w + 1) return all;
  std::string out = all.substr(0, w) + " " + all.substr(w, 1) + " " + all.substr(w + 1, w);
  std::size_t at = 2 * w + 1;
  if (blocks_.empty()) {
    if (at < all.size()) out += " " + all.substr(at);
    return out;
  }
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    out += " " + all.substr(at, w);
    at += w;
    const bool last = k + 1 == blocks_.size();
    if (!(last && variant_ == GrammarVariant::implicit_final_len)) {
      out += " " + all.substr(at, w);
      at += w;
    }
    out += " " + all.substr(at, blocks_[k].payload.size());
    at += blocks_[k].payload.size();
  }
  return out;
}

}  // namespace graphcx
