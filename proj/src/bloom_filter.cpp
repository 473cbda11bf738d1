#include "bloom_filter.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace xorfilt {

unsigned optimal_hash_count(double bits_per_key) {
  const long k = std::lround(bits_per_key * std::numbers::ln2);
  return k < 1 ? 1u : static_cast<unsigned>(k);
}

BloomFilter BloomFilter::build(std::span<const std::uint64_t> keys,
                               unsigned bits_per_key, Seed seed) {
  if (bits_per_key == 0) {
    throw std::invalid_argument("xorfilt: bits per key must be positive");
  }
  const std::uint64_t m = bits_per_key * static_cast<std::uint64_t>(keys.size());
  if (m > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("xorfilt: bloom bit array exceeds 32-bit indexing");
  }

  BloomFilter f;
  f.seed_ = seed;
  f.bits_per_key_ = bits_per_key;
  f.hash_count_ = optimal_hash_count(bits_per_key);
  f.bit_count_ = static_cast<std::uint32_t>(m);
  f.key_count_ = keys.size();
  f.words_.assign((m + 63) / 64, 0);
  for (std::uint64_t key : keys) {
    const std::uint64_t h = mix64(key, seed);
    const auto h1 = static_cast<std::uint32_t>(h);
    const auto h2 = static_cast<std::uint32_t>(h >> 32);
    for (unsigned i = 0; i < f.hash_count_; i++) {
      const std::uint32_t pos = reduce(h1 + i * h2, f.bit_count_);
      f.words_[pos >> 6] |= std::uint64_t{1} << (pos & 63);
    }
  }
  return f;
}

BloomFilter BloomFilter::from_parts(Seed seed, unsigned bits_per_key,
                                    unsigned hash_count,
                                    std::uint32_t bit_count,
                                    std::uint64_t key_count,
                                    std::vector<std::uint64_t> words) {
  BloomFilter f;
  f.seed_ = seed;
  f.bits_per_key_ = bits_per_key;
  f.hash_count_ = hash_count;
  f.bit_count_ = bit_count;
  f.key_count_ = key_count;
  f.words_ = std::move(words);
  return f;
}

}  // namespace xorfilt
