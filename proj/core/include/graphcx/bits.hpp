#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace graphcx {

/// Packed sequence of bits. Position 0 is the first (leftmost) bit of the
/// textual form; ordering is lexicographic by position.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t size, bool value = false);

  /// Parses a string of '0'/'1' characters. Throws std::invalid_argument on
  /// any other character.
  static BitString parse(std::string_view text);

  /// The low `size` bits of `word`, bit 0 first. Requires size <= 64.
  static BitString from_word(std::uint64_t word, std::size_t size);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool operator[](std::size_t pos) const noexcept {
    return (words_[pos >> 6] >> (pos & 63)) & 1u;
  }
  bool test(std::size_t pos) const;  // bounds-checked
  void set(std::size_t pos, bool value = true);
  void flip(std::size_t pos);
  void push_back(bool value);
  void append(const BitString& other);
  /// Appends `width` bits of `value`, most significant first.
  void append_uint(std::uint64_t value, std::size_t width);

  std::size_t count() const noexcept;
  BitString slice(std::size_t pos, std::size_t len) const;
  BitString inverted() const;

  /// Bits 0..size-1 as a word (bit i of the word = position i). Requires
  /// size <= 64.
  std::uint64_t to_word() const;

  std::string to_string() const;
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const BitString& a, const BitString& b) noexcept {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) noexcept;

 private:
  void clear_tail() noexcept;

  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

std::size_t hash_value(const BitString& bits) noexcept;

}  // namespace graphcx

template <>
struct std::hash<graphcx::BitString> {
  std::size_t operator()(const graphcx::BitString& b) const noexcept { return graphcx::hash_value(b); }
};
