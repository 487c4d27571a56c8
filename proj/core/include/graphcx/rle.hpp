#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "graphcx/bits.hpp"
#include "graphcx/codec.hpp"

namespace graphcx {

/// Block grammars of the run-length compressor.
///
/// Both share the layout: w ones, a zero, n in w bits, then blocks of
/// (repeat, length, payload). Every w-bit field stores 1..2^w with the
/// all-zeros pattern meaning 2^w.
///
///  - explicit_len: every block carries its length field. Self-delimiting;
///    the final block may overrun the link field and the excess is dropped.
///  - implicit_final_len: the final block omits its length field; its
///    payload length is ceil(remaining / repeat). The decoder treats a block
///    as final exactly when, after its repeat field, the bits left in the
///    stream equal that payload length, so non-final blocks never leave
///    exactly that many bits behind.
enum class GrammarVariant { explicit_len, implicit_final_len };

std::string_view to_string(GrammarVariant v) noexcept;
/// Accepts "explicit-len" and "implicit-final-len".
GrammarVariant parse_variant(std::string_view text);

struct Block {
  std::size_t repeat = 1;
  std::size_t length = 1;
  BitString payload;
};

class CompressedDescription {
 public:
  CompressedDescription(std::size_t wordsize, GrammarVariant variant, BitString bits, std::vector<Block> blocks = {})
      : wordsize_(wordsize), variant_(variant), bits_(std::move(bits)), blocks_(std::move(blocks)) {}

  std::size_t wordsize() const noexcept { return wordsize_; }
  GrammarVariant variant() const noexcept { return variant_; }
  const BitString& bits() const noexcept { return bits_; }
  std::size_t size() const noexcept { return bits_.size(); }
  /// Blocks as chosen by compress(); empty for streams built from raw bits.
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  /// Bits split into header and block fields, separated by spaces.
  std::string to_field_string() const;

 private:
  std::size_t wordsize_;
  GrammarVariant variant_;
  BitString bits_;
  std::vector<Block> blocks_;
};

/// Integer wordsizes w with n <= 2^w <= n(n-1)/2. When none exists (n <= 3)
/// the single fallback max(1, ceil(log2 n)) is returned.
std::vector<std::size_t> legal_wordsizes(std::size_t n);

std::size_t ceil_log2(std::size_t n) noexcept;

/// Minimal-length encoding of d under the grammar with wordsize w.
/// Throws std::invalid_argument if w is not legal for d's node count or if
/// n == 0 (n cannot be written in a w-bit field).
CompressedDescription compress(const Description& d, std::size_t w, GrammarVariant variant);

/// Throws std::invalid_argument on a malformed header, a block stream that
/// ends before the link field is filled, or trailing bits.
Description decompress(const CompressedDescription& c);

inline constexpr std::size_t kNoCompressedForm = std::numeric_limits<std::size_t>::max();

/// Compressed length using the best legal wordsize. kNoCompressedForm for
/// the 0-node description.
std::size_t zeta(const Description& d, GrammarVariant variant);

/// Block-stream cost (excluding the 2w+1 header bits) of the cheapest
/// encoding of a link field at wordsize w.
std::size_t block_cost(const BitString& link_field, std::size_t w, GrammarVariant variant);

/// 2 + 3w + ceil(n(n-1)/2^(w+1)) with w = ceil(log2 n): the zcomplexity of
/// the empty and full networks under a single maximal-repeat block.
std::size_t empty_full_closed_form(std::size_t n);

/// min(zeta, cap) for link fields packed in a word, n(n-1)/2 <= 64. Holds
/// per-order tables so repeated calls stay cheap; not thread-safe per
/// instance.
class ZetaKernel {
 public:
  ZetaKernel(std::size_t n, GrammarVariant variant);

  std::size_t operator()(std::uint64_t field, std::size_t cap = kNoCompressedForm);

  std::size_t order() const noexcept { return n_; }
  GrammarVariant variant() const noexcept { return variant_; }
  /// Number of evaluations that fell back to the exact set-based search.
  std::size_t exact_fallbacks() const noexcept { return fallbacks_; }

 private:
  std::size_t dp(std::size_t w, std::size_t budget);

  std::size_t n_;
  std::size_t len_;
  GrammarVariant variant_;
  std::vector<std::size_t> wordsizes_;
  std::uint64_t field_ = 0;
  std::uint64_t diff_[65] = {};
  std::uint64_t square_[65] = {};
  std::uint64_t period_candidates_[65] = {};
  std::uint32_t best_[66] = {};
  std::uint16_t choice_c_[66] = {};
  std::uint16_t choice_p_[66] = {};
  bool final_[66] = {};
  std::size_t fallbacks_ = 0;
};

}  // namespace graphcx
