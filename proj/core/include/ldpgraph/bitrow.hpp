#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ldpgraph {

/// Fixed-length packed bit vector. One row of an adjacency matrix; supports
/// the popcount and row-intersection operations the estimators are built on.
class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return size_; }

  bool get(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::size_t i, bool v = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  void clear(std::size_t i) { set(i, false); }

  void clear_all() { words_.assign(words_.size(), 0); }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  /// Number of positions set in both rows. Rows must have equal size.
  std::size_t and_popcount(const BitRow& other) const {
    std::size_t c = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      c += std::popcount(words_[k] & other.words_[k]);
    }
    return c;
  }

  void or_with(const BitRow& other) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
  }

  template <typename Fn>
  void for_each_set(Fn&& fn) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        const int b = std::countr_zero(w);
        fn(k * 64 + static_cast<std::size_t>(b));
        w &= w - 1;
      }
    }
  }

  std::vector<std::uint32_t> set_bits() const {
    std::vector<std::uint32_t> out;
    out.reserve(popcount());
    for_each_set([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
    return out;
  }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  friend bool operator==(const BitRow& a, const BitRow& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace ldpgraph
