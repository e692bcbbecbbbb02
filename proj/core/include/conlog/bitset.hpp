#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace conlog {

/// Fixed-length bit vector packed into 64-bit words. Bits beyond `size()` in
/// the last word are always zero, so word-wise comparisons are exact.
class BitSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitSet() = default;
  explicit BitSet(std::size_t size, bool value = false);

  static BitSet full(std::size_t size) { return BitSet(size, true); }

  std::size_t size() const { return size_; }
  std::size_t word_count() const { return words_.size(); }
  const std::vector<Word>& words() const { return words_; }

  bool test(std::size_t i) const {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }
  BitSet& set(std::size_t i, bool value = true) {
    const Word mask = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
    return *this;
  }
  BitSet& reset(std::size_t i) { return set(i, false); }

  std::size_t count() const;
  bool none() const;
  bool any() const { return !none(); }
  bool all() const;

  bool is_subset_of(const BitSet& other) const;
  bool intersects(const BitSet& other) const;

  /// Index of the lowest set bit at or after `from`, or size() if none.
  std::size_t find_next(std::size_t from) const;
  std::size_t find_first() const { return find_next(0); }

  BitSet& operator&=(const BitSet& other);
  BitSet& operator|=(const BitSet& other);
  BitSet& operator^=(const BitSet& other);
  BitSet& subtract(const BitSet& other);
  BitSet& flip();

  friend BitSet operator&(BitSet a, const BitSet& b) { return a &= b; }
  friend BitSet operator|(BitSet a, const BitSet& b) { return a |= b; }
  friend BitSet operator^(BitSet a, const BitSet& b) { return a ^= b; }
  friend BitSet operator~(BitSet a) { return a.flip(); }

  bool operator==(const BitSet& other) const = default;

  /// Lectic comparison: a < b iff the smallest index in the symmetric
  /// difference belongs to b.
  static bool lectic_less(const BitSet& a, const BitSet& b);

  /// Copy with all bits at positions >= `prefix` cleared.
  BitSet prefix(std::size_t prefix) const;
  /// True iff both agree on every position < `prefix`.
  bool equal_below(const BitSet& other, std::size_t prefix) const;

  /// "0110..." with bit 0 first.
  std::string to_string() const;

  std::size_t hash() const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word word = words_[w];
      while (word != 0) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(word));
        fn(w * kWordBits + bit);
        word &= word - 1;
      }
    }
  }

 private:
  void trim();

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

}  // namespace conlog

template <>
struct std::hash<conlog::BitSet> {
  std::size_t operator()(const conlog::BitSet& b) const noexcept { return b.hash(); }
};
