#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace latmon {

/// Element index into a finite carrier.
using Elem = std::uint32_t;

/// Fixed-width membership vector packed into 64-bit words.
///
/// Bits past size() are always zero, so word-wise comparisons and hashing
/// never see garbage.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  static Bitset full(std::size_t size) {
    Bitset b(size);
    for (auto& w : b.words_) w = ~std::uint64_t{0};
    b.trim();
    return b;
  }

  static Bitset singleton(std::size_t size, std::size_t i) {
    Bitset b(size);
    b.set(i);
    return b;
  }

  std::size_t size() const noexcept { return size_; }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool none() const noexcept {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }
  bool any() const noexcept { return !none(); }

  bool is_subset_of(const Bitset& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  bool intersects(const Bitset& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  Bitset& operator|=(const Bitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  /// Set difference.
  Bitset& operator-=(const Bitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

  Bitset complement() const {
    Bitset r(size_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
    r.trim();
    return r;
  }

  /// Lowest member, or size() when empty.
  std::size_t first() const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
    return size_;
  }

  /// Calls f(index) for each member in increasing order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(w));
        f(static_cast<Elem>(i * 64 + bit));
        w &= w - 1;
      }
    }
  }

  std::vector<Elem> elements() const {
    std::vector<Elem> out;
    out.reserve(count());
    for_each([&](Elem e) { out.push_back(e); });
    return out;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  std::size_t hash() const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL ^ size_;
    for (auto w : words_) {
      h ^= static_cast<std::size_t>(w);
      h *= 0x100000001b3ULL;
      h ^= h >> 29;
    }
    return h;
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  void trim() noexcept {
    if (size_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const noexcept { return b.hash(); }
};

/// Canonical subset order: smaller cardinality first, then lexicographic on
/// the increasing member lists ({0,2} before {1,2}).
inline bool canonical_less(const Bitset& a, const Bitset& b) noexcept {
  const auto ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  const auto& wa = a.words();
  const auto& wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    const std::uint64_t diff = wa[i] ^ wb[i];
    if (diff) return (wa[i] & (diff & (~diff + 1))) != 0;
  }
  return false;
}

}  // namespace latmon
