#include "xor_filter.hpp"

#include <algorithm>
#include <limits>

namespace xorfilt {

Capacity capacity(std::uint64_t n) {
  std::uint64_t c = (123 * n) / 100 + 32;  // floor(1.23 n) + 32, exactly
  c += (3 - c % 3) % 3;
  if (c > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("xorfilt: key count too large for 32-bit slot indexing");
  }
  return {static_cast<std::uint32_t>(c / 3), static_cast<std::uint32_t>(c)};
}

namespace {

// Mixes every key with the attempt seed and drops duplicate hashes. True
// duplicate keys collide under every seed; distinct keys colliding under
// this one merge for the attempt, as if they were a single key.
std::vector<std::uint64_t> mix_and_dedup(std::span<const std::uint64_t> keys,
                                         Seed seed) {
  std::vector<std::uint64_t> hashes;
  hashes.reserve(keys.size());
  for (std::uint64_t key : keys) hashes.push_back(mix64(key, seed));
  std::sort(hashes.begin(), hashes.end());
  hashes.erase(std::unique(hashes.begin(), hashes.end()), hashes.end());
  return hashes;
}

}  // namespace

MappedKeys map_with_retries(std::span<const std::uint64_t> keys,
                            Seed master_seed, MapFn map_fn) {
  SeedSequence seeds(master_seed);
  for (std::uint32_t attempt = 1; attempt <= kMaxBuildAttempts; attempt++) {
    const Seed seed = seeds.next();
    std::vector<std::uint64_t> hashes = mix_and_dedup(keys, seed);
    const Capacity cap = capacity(hashes.size());
    if (std::optional<PeelStack> stack = map_fn(hashes, cap.seg_len)) {
      return {seed, cap.seg_len, std::move(*stack), attempt};
    }
  }
  throw ConstructionFailed("xorfilt: mapping failed for 100 seeds in a row");
}

XorFilter XorFilter::build(std::span<const std::uint64_t> keys,
                           unsigned fingerprint_bits, Seed master_seed) {
  if (fingerprint_bits != 8 && fingerprint_bits != 16) {
    throw std::invalid_argument("xorfilt: fingerprint width must be 8 or 16");
  }
  MappedKeys mapped = map_with_retries(keys, master_seed, &map_hashes);

  XorFilter f;
  f.seed_ = mapped.seed;
  f.fingerprint_bits_ = fingerprint_bits;
  f.seg_len_ = mapped.seg_len;
  f.key_count_ = mapped.stack.size();
  f.build_attempts_ = mapped.attempts;
  f.slots_ = assign_slots(mapped.stack, mapped.seg_len, fingerprint_bits);
  return f;
}

XorFilter XorFilter::from_parts(Seed seed, unsigned fingerprint_bits,
                                std::uint32_t seg_len, std::uint64_t key_count,
                                std::vector<std::uint16_t> slots) {
  XorFilter f;
  f.seed_ = seed;
  f.fingerprint_bits_ = fingerprint_bits;
  f.seg_len_ = seg_len;
  f.key_count_ = key_count;
  f.slots_ = std::move(slots);
  return f;
}

}  // namespace xorfilt
