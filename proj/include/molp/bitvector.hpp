#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace molp {

/// Growable bit vector used for vertex/facet adjacency.
class BitVector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t nbits) { resize(nbits); }

  std::size_t size() const { return nbits_; }
  void resize(std::size_t nbits) {
    nbits_ = nbits;
    words_.resize((nbits + kWordBits - 1) / kWordBits, 0);
    trim();
  }

  bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i) { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
  void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }
  void fill() {
    std::fill(words_.begin(), words_.end(), ~Word{0});
    trim();
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool none() const {
    for (Word w : words_) {
      if (w) return false;
    }
    return true;
  }

  BitVector& operator&=(const BitVector& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= k < o.words_.size() ? o.words_[k] : 0;
    return *this;
  }
  BitVector& operator|=(const BitVector& o) {
    for (std::size_t k = 0; k < words_.size() && k < o.words_.size(); ++k) words_[k] |= o.words_[k];
    trim();
    return *this;
  }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }

  /// popcount(a & b) without materializing the intersection.
  friend std::size_t and_count(const BitVector& a, const BitVector& b) {
    const std::size_t n = std::min(a.words_.size(), b.words_.size());
    std::size_t c = 0;
    for (std::size_t k = 0; k < n; ++k) c += static_cast<std::size_t>(std::popcount(a.words_[k] & b.words_[k]));
    return c;
  }

  /// Calls f(i) for every set bit in ascending order.
  template <class F>
  void for_each_set(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      Word w = words_[k];
      while (w) {
        const int b = std::countr_zero(w);
        f(k * kWordBits + static_cast<std::size_t>(b));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> ones() const {
    std::vector<std::size_t> out;
    for_each_set([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  void trim() {
    if (nbits_ % kWordBits && !words_.empty()) words_.back() &= (Word{1} << (nbits_ % kWordBits)) - 1;
  }

  std::vector<Word> words_;
  std::size_t nbits_ = 0;
};

}  // namespace molp
