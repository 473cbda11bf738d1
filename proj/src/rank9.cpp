#include "rank9.hpp"

#include <bit>

namespace xorfilt {

RankedBitmap::RankedBitmap(std::vector<std::uint64_t> words,
                           std::uint64_t bit_count)
    : words_(std::move(words)), bit_count_(bit_count) {
  const std::uint64_t word_count = (bit_count + 63) / 64;
  words_.resize(word_count, 0);
  if (bit_count & 63) {
    words_.back() &= (std::uint64_t{1} << (bit_count & 63)) - 1;
  }

  const std::uint64_t block_count = (word_count + 7) / 8;
  counts_.assign(2 * block_count, 0);
  std::uint64_t total = 0;
  for (std::uint64_t b = 0; b < block_count; b++) {
    counts_[2 * b] = total;
    std::uint64_t in_block = 0;
    std::uint64_t packed = 0;
    for (std::uint64_t w = 0; w < 8; w++) {
      if (w > 0) packed |= in_block << (9 * (w - 1));
      const std::uint64_t idx = 8 * b + w;
      if (idx < word_count) in_block += std::popcount(words_[idx]);
    }
    counts_[2 * b + 1] = packed;
    total += in_block;
  }
  ones_ = total;
}

}  // namespace xorfilt
