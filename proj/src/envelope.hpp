#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "any_filter.hpp"

namespace xorfilt {

// Envelope header, 32 bytes, all integers little-endian:
//   0  magic "XFLT"
//   4  format version (u16)
//   6  kind (u8)
//   7  fingerprint bits (xor kinds) or hash count (bloom) (u8)
//   8  seed (u64)
//   16 key count (u64)
//   24 segment length (xor kinds) or bit count m (bloom) (u64)
// followed by the kind-specific payload. docs/format.md spells out the
// payload layouts bit by bit.
inline constexpr char kMagic[4] = {'X', 'F', 'L', 'T'};
inline constexpr std::uint16_t kFormatVersion = 1;
inline constexpr std::size_t kHeaderBytes = 32;

class EnvelopeError : public std::runtime_error {
 public:
  enum class Code {
    bad_magic,
    unsupported_version,
    truncated_payload,
    invalid_field,
  };

  EnvelopeError(Code code, std::string field, std::size_t offset);

  Code code() const { return code_; }
  const std::string& field() const { return field_; }
  std::size_t offset() const { return offset_; }

 private:
  Code code_;
  std::string field_;
  std::size_t offset_;
};

// Canonical bytes: equal filters serialize identically, with no
// timestamps or platform-dependent widths.
std::vector<std::uint8_t> serialize(const AnyFilter& filter);

// Throws EnvelopeError naming the failing field and byte offset.
AnyFilter deserialize(std::span<const std::uint8_t> bytes);

// Size of the kind-specific payload in bytes (serialized size minus the
// header); the numerator of the bits-per-key metric.
std::uint64_t payload_bytes(const AnyFilter& filter);

}  // namespace xorfilt
