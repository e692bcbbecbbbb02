#include "conlog/bitset.hpp"

#include <algorithm>
#include <cassert>

namespace conlog {

BitSet::BitSet(std::size_t size, bool value)
    : size_(size), words_((size + kWordBits - 1) / kWordBits, value ? ~Word{0} : Word{0}) {
  trim();
}

void BitSet::trim() {
  const std::size_t tail = size_ % kWordBits;
  if (tail != 0 && !words_.empty()) {
    words_.back() &= (Word{1} << tail) - 1;
  }
}

std::size_t BitSet::count() const {
  std::size_t n = 0;
  for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool BitSet::none() const {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

bool BitSet::all() const { return count() == size_; }

bool BitSet::is_subset_of(const BitSet& other) const {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

bool BitSet::intersects(const BitSet& other) const {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

std::size_t BitSet::find_next(std::size_t from) const {
  if (from >= size_) return size_;
  std::size_t w = from / kWordBits;
  Word word = words_[w] & (~Word{0} << (from % kWordBits));
  while (true) {
    if (word != 0) {
      return w * kWordBits + static_cast<std::size_t>(std::countr_zero(word));
    }
    if (++w == words_.size()) return size_;
    word = words_[w];
  }
}

BitSet& BitSet::operator&=(const BitSet& other) {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

BitSet& BitSet::operator|=(const BitSet& other) {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

BitSet& BitSet::operator^=(const BitSet& other) {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitSet& BitSet::subtract(const BitSet& other) {
  assert(size_ == other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

BitSet& BitSet::flip() {
  for (Word& w : words_) w = ~w;
  trim();
  return *this;
}

bool BitSet::lectic_less(const BitSet& a, const BitSet& b) {
  assert(a.size_ == b.size_);
  for (std::size_t i = 0; i < a.words_.size(); ++i) {
    const Word diff = a.words_[i] ^ b.words_[i];
    if (diff != 0) {
      const Word lowest = diff & (~diff + 1);
      return (b.words_[i] & lowest) != 0;
    }
  }
  return false;
}

BitSet BitSet::prefix(std::size_t prefix) const {
  BitSet out = *this;
  for (std::size_t i = prefix; i < size_; ) {
    const std::size_t w = i / kWordBits;
    const std::size_t bit = i % kWordBits;
    out.words_[w] &= bit == 0 ? Word{0} : ((Word{1} << bit) - 1);
    i = (w + 1) * kWordBits;
  }
  return out;
}

bool BitSet::equal_below(const BitSet& other, std::size_t prefix) const {
  assert(size_ == other.size_);
  const std::size_t full_words = prefix / kWordBits;
  for (std::size_t i = 0; i < full_words; ++i) {
    if (words_[i] != other.words_[i]) return false;
  }
  const std::size_t tail = prefix % kWordBits;
  if (tail == 0) return true;
  const Word mask = (Word{1} << tail) - 1;
  return ((words_[full_words] ^ other.words_[full_words]) & mask) == 0;
}

std::string BitSet::to_string() const {
  std::string s(size_, '0');
  for_each([&](std::size_t i) { s[i] = '1'; });
  return s;
}

std::size_t BitSet::hash() const {
  std::size_t h = std::hash<std::size_t>{}(size_);
  for (Word w : words_) {
    h ^= std::hash<Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace conlog
