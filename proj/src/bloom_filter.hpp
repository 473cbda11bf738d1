#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hashing.hpp"

namespace xorfilt {

// Hash count minimizing the false-positive probability at a given budget:
// round(bits_per_key * ln 2), at least 1.
unsigned optimal_hash_count(double bits_per_key);

// Standard Bloom filter with double hashing: one 64-bit mix per key,
// split into two 32-bit halves h1, h2; probe i lands at
// reduce(h1 + i * h2, m).
class BloomFilter {
 public:
  static BloomFilter build(std::span<const std::uint64_t> keys,
                           unsigned bits_per_key, Seed seed);

  // True iff every probed bit is set; stops at the first unset bit.
  bool contains(std::uint64_t key) const {
    if (bit_count_ == 0) return false;
    const std::uint64_t h = mix64(key, seed_);
    const auto h1 = static_cast<std::uint32_t>(h);
    const auto h2 = static_cast<std::uint32_t>(h >> 32);
    for (unsigned i = 0; i < hash_count_; i++) {
      const std::uint32_t pos = reduce(h1 + i * h2, bit_count_);
      if (!((words_[pos >> 6] >> (pos & 63)) & 1)) return false;
    }
    return true;
  }

  Seed seed() const { return seed_; }
  unsigned bits_per_key() const { return bits_per_key_; }
  unsigned hash_count() const { return hash_count_; }
  std::uint64_t bit_count() const { return bit_count_; }
  std::uint64_t key_count() const { return key_count_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  static BloomFilter from_parts(Seed seed, unsigned bits_per_key,
                                unsigned hash_count, std::uint32_t bit_count,
                                std::uint64_t key_count,
                                std::vector<std::uint64_t> words);

 private:
  BloomFilter() = default;

  Seed seed_ = 0;
  unsigned bits_per_key_ = 8;
  unsigned hash_count_ = 1;
  std::uint32_t bit_count_ = 0;  // m
  std::uint64_t key_count_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace xorfilt
