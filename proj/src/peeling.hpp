#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hashing.hpp"

namespace xorfilt {

struct PeelEntry {
  std::uint64_t hash;  // mixed key
  std::uint32_t slot;  // the slot this key will own during assignment
};

// Peel order: entry i was peeled before entry i+1. Assignment walks it
// back to front.
using PeelStack = std::vector<PeelEntry>;

// Peels the 3-partite hypergraph induced by the hashes over 3*seg_len
// slots. Returns the full peel stack, or nullopt when a cyclic residue
// remains. Hashes must be distinct; a duplicate pair can never be peeled.
std::optional<PeelStack> map_hashes(std::span<const std::uint64_t> hashes,
                                    std::uint32_t seg_len);

// Same peeling, but candidate slots queue per segment and the first two
// segments drain before the third is touched. This biases peeled keys
// toward slots in segments 0 and 1, which leaves most unwritten slots in
// the last segment. Succeeds on exactly the same inputs as map_hashes.
std::optional<PeelStack> map_hashes_three_queues(
    std::span<const std::uint64_t> hashes, std::uint32_t seg_len);

// Writes slot values in reverse peel order so that afterwards
//   slots[i0] ^ slots[i1] ^ slots[i2] == fingerprint(hash, k)
// for every stacked hash. Unassigned slots stay zero.
std::vector<std::uint16_t> assign_slots(const PeelStack& stack,
                                        std::uint32_t seg_len, unsigned k);

}  // namespace xorfilt
