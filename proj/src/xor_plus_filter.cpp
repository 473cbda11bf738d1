#include "xor_plus_filter.hpp"

namespace xorfilt {

double xor_plus_bits_per_key(double fingerprint_bits) {
  return 1.0824 * fingerprint_bits + 0.5125;
}

XorPlusFilter XorPlusFilter::build(std::span<const std::uint64_t> keys,
                                   unsigned fingerprint_bits,
                                   Seed master_seed) {
  if (fingerprint_bits != 8 && fingerprint_bits != 16) {
    throw std::invalid_argument("xorfilt: fingerprint width must be 8 or 16");
  }
  MappedKeys mapped =
      map_with_retries(keys, master_seed, &map_hashes_three_queues);
  const std::uint32_t seg_len = mapped.seg_len;

  std::vector<std::uint16_t> full =
      assign_slots(mapped.stack, seg_len, fingerprint_bits);

  // A last-segment slot is occupied iff assignment wrote it, i.e. it owns
  // a key on the peel stack. A written slot whose value happens to be
  // zero still counts; dropping it would shift every later rank.
  std::vector<std::uint64_t> bits((seg_len + 63) / 64, 0);
  for (const PeelEntry& e : mapped.stack) {
    if (e.slot >= 2 * seg_len) {
      const std::uint32_t j = e.slot - 2 * seg_len;
      bits[j >> 6] |= std::uint64_t{1} << (j & 63);
    }
  }
  RankedBitmap occupancy(std::move(bits), seg_len);

  std::vector<std::uint16_t> packed;
  packed.reserve(occupancy.ones());
  for (std::uint32_t j = 0; j < seg_len; j++) {
    if (occupancy.test(j)) packed.push_back(full[2 * std::size_t{seg_len} + j]);
  }

  full.resize(2 * std::size_t{seg_len});

  XorPlusFilter f;
  f.seed_ = mapped.seed;
  f.fingerprint_bits_ = fingerprint_bits;
  f.seg_len_ = seg_len;
  f.key_count_ = mapped.stack.size();
  f.build_attempts_ = mapped.attempts;
  f.dense_ = std::move(full);
  f.occupancy_ = std::move(occupancy);
  f.packed_ = std::move(packed);
  return f;
}

XorPlusFilter XorPlusFilter::from_parts(
    Seed seed, unsigned fingerprint_bits, std::uint32_t seg_len,
    std::uint64_t key_count, std::vector<std::uint16_t> dense,
    RankedBitmap occupancy, std::vector<std::uint16_t> packed) {
  XorPlusFilter f;
  f.seed_ = seed;
  f.fingerprint_bits_ = fingerprint_bits;
  f.seg_len_ = seg_len;
  f.key_count_ = key_count;
  f.dense_ = std::move(dense);
  f.occupancy_ = std::move(occupancy);
  f.packed_ = std::move(packed);
  return f;
}

}  // namespace xorfilt
