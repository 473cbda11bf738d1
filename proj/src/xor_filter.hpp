#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "hashing.hpp"
#include "peeling.hpp"

namespace xorfilt {

struct Capacity {
  std::uint32_t seg_len;
  std::uint32_t total_slots;  // always 3 * seg_len
};

// Slot budget for n keys: floor(1.23 * n) + 32, rounded up to the next
// multiple of 3 so the three segments have equal length.
Capacity capacity(std::uint64_t n);

class ConstructionFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kMaxBuildAttempts = 100;

using MapFn = std::optional<PeelStack> (*)(std::span<const std::uint64_t>,
                                           std::uint32_t);

// One successful mapping attempt: the seed that worked, the geometry, the
// peel stack, and how many attempts it took. Keys are mixed and
// deduplicated per attempt, so two keys colliding under the attempt seed
// merge into one stack entry.
struct MappedKeys {
  Seed seed = 0;
  std::uint32_t seg_len = 0;
  PeelStack stack;
  std::uint32_t attempts = 0;
};

// Retries map_fn with fresh seeds drawn from master_seed until it
// succeeds. Throws ConstructionFailed after kMaxBuildAttempts; with the
// capacity above, per-attempt success stays above 0.8 at every set size,
// so hitting the cap means a usage bug rather than bad luck.
MappedKeys map_with_retries(std::span<const std::uint64_t> keys,
                            Seed master_seed, MapFn map_fn);

// Immutable once built; concurrent contains calls need no synchronization.
class XorFilter {
 public:
  // fingerprint_bits must be 8 or 16.
  static XorFilter build(std::span<const std::uint64_t> keys,
                         unsigned fingerprint_bits, Seed master_seed);

  // Three slot reads; never false for a construction key.
  bool contains(std::uint64_t key) const {
    const std::uint64_t h = mix64(key, seed_);
    const SegmentIndexes ix = segment_hashes(h, seg_len_);
    const std::uint16_t f = fingerprint(h, fingerprint_bits_);
    return static_cast<std::uint16_t>(slots_[ix.i0] ^ slots_[ix.i1] ^
                                      slots_[ix.i2]) == f;
  }

  Seed seed() const { return seed_; }
  unsigned fingerprint_bits() const { return fingerprint_bits_; }
  std::uint32_t segment_length() const { return seg_len_; }
  std::uint64_t key_count() const { return key_count_; }
  std::uint32_t build_attempts() const { return build_attempts_; }
  const std::vector<std::uint16_t>& slots() const { return slots_; }

  // Reassembles a filter from serialized fields; performs no validation
  // beyond sizing.
  static XorFilter from_parts(Seed seed, unsigned fingerprint_bits,
                              std::uint32_t seg_len, std::uint64_t key_count,
                              std::vector<std::uint16_t> slots);

 private:
  XorFilter() = default;

  Seed seed_ = 0;
  unsigned fingerprint_bits_ = 8;
  std::uint32_t seg_len_ = 0;
  std::uint64_t key_count_ = 0;
  std::uint32_t build_attempts_ = 0;
  std::vector<std::uint16_t> slots_;
};

}  // namespace xorfilt
