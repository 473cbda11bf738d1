#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace xorfilt {

// Bit array with a Rank9-style index: per 512-bit block, one word holds
// the absolute rank at the block start and a second word packs seven
// 9-bit in-block ranks (one per trailing 64-bit word). Auxiliary cost is
// two words per eight, 25%. rank() touches at most two index words and
// does one population count.
class RankedBitmap {
 public:
  RankedBitmap() = default;

  // Takes the backing words (little-endian bit order, bit i of the array
  // is bit i%64 of word i/64) and builds the index. Bits at and beyond
  // bit_count are cleared.
  RankedBitmap(std::vector<std::uint64_t> words, std::uint64_t bit_count);

  bool test(std::uint64_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  // Number of set bits in [0, i); i may equal size().
  std::uint64_t rank(std::uint64_t i) const {
    if (i >= bit_count_) return ones_;
    const std::uint64_t block = i >> 9;
    const std::uint64_t sub = (i >> 6) & 7;
    const std::uint64_t rel =
        sub ? (counts_[2 * block + 1] >> (9 * (sub - 1))) & 0x1ff : 0;
    const std::uint64_t mask = (std::uint64_t{1} << (i & 63)) - 1;
    return counts_[2 * block] + rel + std::popcount(words_[i >> 6] & mask);
  }

  std::uint64_t size() const { return bit_count_; }
  std::uint64_t ones() const { return ones_; }
  const std::vector<std::uint64_t>& words() const { return words_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }

 private:
  std::vector<std::uint64_t> words_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t bit_count_ = 0;
  std::uint64_t ones_ = 0;
};

}  // namespace xorfilt
