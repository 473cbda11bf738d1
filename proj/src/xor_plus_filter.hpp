#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hashing.hpp"
#include "rank9.hpp"
#include "xor_filter.hpp"

namespace xorfilt {

// Expected size of an xor+ filter: 1.0824 k + 0.5125 bits per key. The
// terms are the dense two thirds (2/3 * 1.23 k), the ~64% occupied last
// third, and the 25% rank overhead on its occupancy bitmap.
double xor_plus_bits_per_key(double fingerprint_bits);

// Xor filter variant that biases unwritten slots into the last segment
// during peeling, then stores that segment compressed: an occupancy
// bitmap with a rank index plus the occupied slot values only. One rank
// query per membership test.
class XorPlusFilter {
 public:
  // fingerprint_bits must be 8 or 16.
  static XorPlusFilter build(std::span<const std::uint64_t> keys,
                             unsigned fingerprint_bits, Seed master_seed);

  bool contains(std::uint64_t key) const {
    const std::uint64_t h = mix64(key, seed_);
    const SegmentIndexes ix = segment_hashes(h, seg_len_);
    const std::uint16_t f = fingerprint(h, fingerprint_bits_);
    const std::uint32_t j = ix.i2 - 2 * seg_len_;
    const std::uint16_t last =
        occupancy_.test(j) ? packed_[occupancy_.rank(j)] : std::uint16_t{0};
    return static_cast<std::uint16_t>(dense_[ix.i0] ^ dense_[ix.i1] ^ last) ==
           f;
  }

  Seed seed() const { return seed_; }
  unsigned fingerprint_bits() const { return fingerprint_bits_; }
  std::uint32_t segment_length() const { return seg_len_; }
  std::uint64_t key_count() const { return key_count_; }
  std::uint32_t build_attempts() const { return build_attempts_; }
  const std::vector<std::uint16_t>& dense() const { return dense_; }
  const RankedBitmap& occupancy() const { return occupancy_; }
  const std::vector<std::uint16_t>& packed() const { return packed_; }

  // Fraction of last-segment slots no key was assigned to.
  double last_segment_empty_fraction() const {
    return 1.0 - static_cast<double>(occupancy_.ones()) / seg_len_;
  }

  static XorPlusFilter from_parts(Seed seed, unsigned fingerprint_bits,
                                  std::uint32_t seg_len,
                                  std::uint64_t key_count,
                                  std::vector<std::uint16_t> dense,
                                  RankedBitmap occupancy,
                                  std::vector<std::uint16_t> packed);

 private:
  XorPlusFilter() = default;

  Seed seed_ = 0;
  unsigned fingerprint_bits_ = 8;
  std::uint32_t seg_len_ = 0;
  std::uint64_t key_count_ = 0;
  std::uint32_t build_attempts_ = 0;
  std::vector<std::uint16_t> dense_;  // segments 0 and 1, uncompressed
  RankedBitmap occupancy_;            // which last-segment slots were written
  std::vector<std::uint16_t> packed_;  // values of the written ones, in order
};

}  // namespace xorfilt
