#include "graphcx/bits.hpp"

#include <bit>
#include <stdexcept>

namespace graphcx {

BitString::BitString(std::size_t size, bool value)
    : words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0), size_(size) {
  clear_tail();
}

BitString BitString::parse(std::string_view text) {
  BitString out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case '0':
        break;
      case '1':
        out.set(i);
        break;
      default:
        throw std::invalid_argument("bit string may only contain '0' and '1'");
    }
  }
  return out;
}

BitString BitString::from_word(std::uint64_t word, std::size_t size) {
  if (size > 64) throw std::invalid_argument("from_word: size exceeds 64");
  BitString out(size);
  if (size > 0) out.words_[0] = size == 64 ? word : word & ((std::uint64_t{1} << size) - 1);
  return out;
}

bool BitString::test(std::size_t pos) const {
  if (pos >= size_) throw std::out_of_range("bit position out of range");
  return (*this)[pos];
}

void BitString::set(std::size_t pos, bool value) {
  if (pos >= size_) throw std::out_of_range("bit position out of range");
  const std::uint64_t mask = std::uint64_t{1} << (pos & 63);
  if (value)
    words_[pos >> 6] |= mask;
  else
    words_[pos >> 6] &= ~mask;
}

void BitString::flip(std::size_t pos) {
  if (pos >= size_) throw std::out_of_range("bit position out of range");
  words_[pos >> 6] ^= std::uint64_t{1} << (pos & 63);
}

void BitString::push_back(bool value) {
  if ((size_ & 63) == 0) words_.push_back(0);
  ++size_;
  if (value) words_[(size_ - 1) >> 6] |= std::uint64_t{1} << ((size_ - 1) & 63);
}

void BitString::append(const BitString& other) {
  for (std::size_t i = 0; i < other.size_; ++i) push_back(other[i]);
}

void BitString::append_uint(std::uint64_t value, std::size_t width) {
  for (std::size_t i = width; i-- > 0;) push_back(i < 64 && ((value >> i) & 1u));
}

std::size_t BitString::count() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
  if (pos > size_ || len > size_ - pos) throw std::out_of_range("slice out of range");
  BitString out(len);
  for (std::size_t i = 0; i < len; ++i)
    if ((*this)[pos + i]) out.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  return out;
}

BitString BitString::inverted() const {
  BitString out = *this;
  for (auto& w : out.words_) w = ~w;
  out.clear_tail();
  return out;
}

std::uint64_t BitString::to_word() const {
  if (size_ > 64) throw std::length_error("bit string longer than 64 bits");
  return words_.empty() ? 0 : words_[0];
}

std::string BitString::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if ((*this)[i]) out[i] = '1';
  return out;
}

void BitString::clear_tail() noexcept {
  if ((size_ & 63) != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
}

std::strong_ordering operator<=>(const BitString& a, const BitString& b) noexcept {
  const std::size_t common = std::min(a.words_.size(), b.words_.size());
  for (std::size_t i = 0; i < common; ++i) {
    const std::uint64_t diff = a.words_[i] ^ b.words_[i];
    if (diff == 0) continue;
    const auto bit = std::countr_zero(diff);
    const std::size_t pos = i * 64 + static_cast<std::size_t>(bit);
    // A differing bit past the shorter string's end means the shorter one ran out first.
    if (pos >= a.size_ || pos >= b.size_) break;
    return ((a.words_[i] >> bit) & 1u) ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return a.size_ <=> b.size_;
}

std::size_t hash_value(const BitString& bits) noexcept {
  std::size_t h = std::hash<std::size_t>{}(bits.size());
  for (auto w : bits.words()) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace graphcx
