#include "peeling.hpp"

namespace xorfilt {
namespace {

// Counter plus xor-of-members; with distinct hashes a count-1 slot's mask
// is exactly its sole member.
struct SlotState {
  std::uint32_t count = 0;
  std::uint64_t mask = 0;
};

std::vector<SlotState> seed_slots(std::span<const std::uint64_t> hashes,
                                  std::uint32_t seg_len) {
  std::vector<SlotState> slots(std::size_t{3} * seg_len);
  for (std::uint64_t h : hashes) {
    const SegmentIndexes ix = segment_hashes(h, seg_len);
    for (std::uint32_t i : {ix.i0, ix.i1, ix.i2}) {
      slots[i].count++;
      slots[i].mask ^= h;
    }
  }
  return slots;
}

// FIFO over a fixed backing vector; each slot enters at most once, so
// capacity c suffices.
class SlotQueue {
 public:
  explicit SlotQueue(std::size_t capacity) { items_.reserve(capacity); }

  bool empty() const { return head_ == items_.size(); }
  void push(std::uint32_t slot) { items_.push_back(slot); }
  std::uint32_t pop() { return items_[head_++]; }

 private:
  std::vector<std::uint32_t> items_;
  std::size_t head_ = 0;
};

// Pops the peelable slot, records it, and removes its key from all three
// incident slots, reporting any slot that becomes peelable.
template <typename Enqueue>
void peel_slot(std::vector<SlotState>& slots, std::uint32_t slot,
               std::uint32_t seg_len, PeelStack& stack, Enqueue&& enqueue) {
  if (slots[slot].count != 1) return;  // stale queue entry
  const std::uint64_t h = slots[slot].mask;
  stack.push_back({h, slot});
  const SegmentIndexes ix = segment_hashes(h, seg_len);
  for (std::uint32_t i : {ix.i0, ix.i1, ix.i2}) {
    slots[i].count--;
    slots[i].mask ^= h;
    if (slots[i].count == 1) enqueue(i);
  }
}

}  // namespace

std::optional<PeelStack> map_hashes(std::span<const std::uint64_t> hashes,
                                    std::uint32_t seg_len) {
  std::vector<SlotState> slots = seed_slots(hashes, seg_len);

  SlotQueue queue(slots.size());
  for (std::uint32_t i = 0; i < slots.size(); i++) {
    if (slots[i].count == 1) queue.push(i);
  }

  PeelStack stack;
  stack.reserve(hashes.size());
  while (!queue.empty()) {
    peel_slot(slots, queue.pop(), seg_len, stack,
              [&](std::uint32_t i) { queue.push(i); });
  }

  if (stack.size() != hashes.size()) return std::nullopt;
  return stack;
}

std::optional<PeelStack> map_hashes_three_queues(
    std::span<const std::uint64_t> hashes, std::uint32_t seg_len) {
  std::vector<SlotState> slots = seed_slots(hashes, seg_len);

  SlotQueue queues[3] = {SlotQueue(seg_len), SlotQueue(seg_len),
                         SlotQueue(seg_len)};
  for (std::uint32_t i = 0; i < slots.size(); i++) {
    if (slots[i].count == 1) queues[i / seg_len].push(i);
  }
  auto enqueue = [&](std::uint32_t i) { queues[i / seg_len].push(i); };

  PeelStack stack;
  stack.reserve(hashes.size());
  for (;;) {
    SlotQueue& queue = !queues[0].empty()   ? queues[0]
                       : !queues[1].empty() ? queues[1]
                       : queues[2];
    if (queue.empty()) break;
    peel_slot(slots, queue.pop(), seg_len, stack, enqueue);
  }

  if (stack.size() != hashes.size()) return std::nullopt;
  return stack;
}

std::vector<std::uint16_t> assign_slots(const PeelStack& stack,
                                        std::uint32_t seg_len, unsigned k) {
  std::vector<std::uint16_t> slots(std::size_t{3} * seg_len, 0);
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
    const SegmentIndexes ix = segment_hashes(it->hash, seg_len);
    // slots[it->slot] is still zero here, so including it in the xor is a
    // no-op and the identity below holds once written.
    slots[it->slot] = static_cast<std::uint16_t>(
        fingerprint(it->hash, k) ^ slots[ix.i0] ^ slots[ix.i1] ^ slots[ix.i2]);
  }
  return slots;
}

}  // namespace xorfilt
