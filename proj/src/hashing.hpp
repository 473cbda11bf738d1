#pragma once

#include <bit>
#include <cstdint>

namespace xorfilt {

using Seed = std::uint64_t;

// Murmur3 finalizer with an additive seed. Deterministic, total, and a
// fixed point at (0, 0).
inline std::uint64_t mix64(std::uint64_t key, Seed seed) {
  std::uint64_t h = key + seed;
  h = (h ^ (h >> 33)) * 0xff51afd7ed558ccdULL;
  h = (h ^ (h >> 33)) * 0xc4ceb9fe1a85ec53ULL;
  return h ^ (h >> 33);
}

// Maps x into [0, m) without a modulo: floor(x * m / 2^32).
inline std::uint32_t reduce(std::uint32_t x, std::uint32_t m) {
  return static_cast<std::uint32_t>((std::uint64_t{x} * m) >> 32);
}

// k-bit fingerprint from a mixed hash: fold the halves, keep the low k bits.
// Uses bits that overlap the index fields only through the fold, so the
// fingerprint behaves independently of segment_hashes.
inline std::uint16_t fingerprint(std::uint64_t h, unsigned k) {
  return static_cast<std::uint16_t>((h ^ (h >> 32)) & ((1u << k) - 1));
}

struct SegmentIndexes {
  std::uint32_t i0;  // in [0, seg_len)
  std::uint32_t i1;  // in [seg_len, 2*seg_len)
  std::uint32_t i2;  // in [2*seg_len, 3*seg_len)
};

// Three slot indexes, one per segment of the slot array. Each index is
// derived from a different 32-bit view of the hash (left-rotations by 21)
// so one mix64 call serves the whole query.
inline SegmentIndexes segment_hashes(std::uint64_t h, std::uint32_t seg_len) {
  SegmentIndexes ix;
  ix.i0 = reduce(static_cast<std::uint32_t>(h), seg_len);
  ix.i1 = reduce(static_cast<std::uint32_t>(std::rotl(h, 21)), seg_len) + seg_len;
  ix.i2 = reduce(static_cast<std::uint32_t>(std::rotl(h, 42)), seg_len) + 2 * seg_len;
  return ix;
}

// splitmix64. One instance per construction; draw r yields the seed for
// retry attempt r. The output is a bijection of the state, so any stream
// shorter than 2^64 draws has no repeats.
class SeedSequence {
 public:
  explicit SeedSequence(std::uint64_t master_seed) : state_(master_seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace xorfilt
