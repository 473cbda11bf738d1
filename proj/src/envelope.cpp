#include "envelope.hpp"

#include <cstring>
#include <limits>

namespace xorfilt {

namespace {

const char* code_label(EnvelopeError::Code code) {
  switch (code) {
    case EnvelopeError::Code::bad_magic:
      return "bad magic";
    case EnvelopeError::Code::unsupported_version:
      return "unsupported version";
    case EnvelopeError::Code::truncated_payload:
      return "truncated payload";
    case EnvelopeError::Code::invalid_field:
      return "invalid field";
  }
  return "envelope error";
}

std::string format_message(EnvelopeError::Code code, const std::string& field,
                           std::size_t offset) {
  return std::string(code_label(code)) + ": field '" + field + "' at offset " +
         std::to_string(offset);
}

class Writer {
 public:
  explicit Writer(std::size_t reserve) { bytes_.reserve(reserve); }

  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u16(std::uint16_t v) {
    bytes_.push_back(static_cast<std::uint8_t>(v));
    bytes_.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; i++) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void slots(const std::vector<std::uint16_t>& values, unsigned k) {
    for (std::uint16_t v : values) {
      bytes_.push_back(static_cast<std::uint8_t>(v));
      if (k == 16) bytes_.push_back(static_cast<std::uint8_t>(v >> 8));
    }
  }
  void words(const std::vector<std::uint64_t>& values) {
    for (std::uint64_t v : values) u64(v);
  }
  // Low bytes of the word array only; tail bits beyond bit_count are zero.
  void bit_array(const std::vector<std::uint64_t>& words, std::uint64_t bit_count) {
    const std::uint64_t nbytes = (bit_count + 7) / 8;
    for (std::uint64_t j = 0; j < nbytes; j++) {
      bytes_.push_back(static_cast<std::uint8_t>(words[j >> 3] >> (8 * (j & 7))));
    }
  }

  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

  void require(std::uint64_t count, const char* field) const {
    if (remaining() < count) {
      throw EnvelopeError(EnvelopeError::Code::truncated_payload, field, pos_);
    }
  }

  std::uint8_t u8(const char* field) {
    require(1, field);
    return bytes_[pos_++];
  }
  std::uint16_t u16(const char* field) {
    require(2, field);
    std::uint16_t v = static_cast<std::uint16_t>(bytes_[pos_]) |
                      static_cast<std::uint16_t>(bytes_[pos_ + 1]) << 8;
    pos_ += 2;
    return v;
  }
  std::uint64_t u64(const char* field) {
    require(8, field);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; i++) v |= std::uint64_t{bytes_[pos_ + i]} << (8 * i);
    pos_ += 8;
    return v;
  }
  std::vector<std::uint16_t> slots(std::uint64_t count, unsigned k,
                                   const char* field) {
    require(count * (k / 8), field);
    std::vector<std::uint16_t> values(count);
    for (std::uint64_t i = 0; i < count; i++) {
      std::uint16_t v = bytes_[pos_++];
      if (k == 16) v |= static_cast<std::uint16_t>(bytes_[pos_++]) << 8;
      values[i] = v;
    }
    return values;
  }
  std::vector<std::uint64_t> words(std::uint64_t count, const char* field) {
    require(count * 8, field);
    std::vector<std::uint64_t> values(count);
    for (std::uint64_t i = 0; i < count; i++) values[i] = u64(field);
    return values;
  }
  std::vector<std::uint64_t> bit_array(std::uint64_t bit_count, const char* field) {
    const std::uint64_t nbytes = (bit_count + 7) / 8;
    require(nbytes, field);
    std::vector<std::uint64_t> words((bit_count + 63) / 64, 0);
    for (std::uint64_t j = 0; j < nbytes; j++) {
      words[j >> 3] |= std::uint64_t{bytes_[pos_++]} << (8 * (j & 7));
    }
    return words;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

struct PayloadSizes {
  std::uint64_t total = 0;
};

std::uint64_t xor_payload_bytes(std::uint32_t seg_len, unsigned k) {
  return 3 * std::uint64_t{seg_len} * (k / 8);
}

std::uint64_t xorplus_payload_bytes(std::uint32_t seg_len, unsigned k,
                                    std::uint64_t packed_count) {
  const std::uint64_t word_count = (std::uint64_t{seg_len} + 63) / 64;
  const std::uint64_t block_count = (word_count + 7) / 8;
  return 2 * std::uint64_t{seg_len} * (k / 8)  // dense
         + word_count * 8                      // occupancy bitmap
         + 2 * block_count * 8                 // rank counts
         + packed_count * (k / 8);             // occupied last-segment slots
}

void write_header(Writer& w, FilterKind kind, std::uint8_t k, Seed seed,
                  std::uint64_t n, std::uint64_t seg_len_or_m) {
  for (char c : kMagic) w.u8(static_cast<std::uint8_t>(c));
  w.u16(kFormatVersion);
  w.u8(static_cast<std::uint8_t>(kind));
  w.u8(k);
  w.u64(seed);
  w.u64(n);
  w.u64(seg_len_or_m);
}

}  // namespace

EnvelopeError::EnvelopeError(Code code, std::string field, std::size_t offset)
    : std::runtime_error(format_message(code, field, offset)),
      code_(code),
      field_(std::move(field)),
      offset_(offset) {}

std::uint64_t payload_bytes(const AnyFilter& filter) {
  struct Visitor {
    std::uint64_t operator()(const XorFilter& f) const {
      return xor_payload_bytes(f.segment_length(), f.fingerprint_bits());
    }
    std::uint64_t operator()(const XorPlusFilter& f) const {
      return xorplus_payload_bytes(f.segment_length(), f.fingerprint_bits(),
                                   f.packed().size());
    }
    std::uint64_t operator()(const BloomFilter& f) const {
      return (f.bit_count() + 7) / 8;
    }
  };
  return std::visit(Visitor{}, filter);
}

std::vector<std::uint8_t> serialize(const AnyFilter& filter) {
  const FilterKind kind = kind_of(filter);
  Writer w(kHeaderBytes + payload_bytes(filter));

  struct Visitor {
    Writer& w;
    FilterKind kind;

    void operator()(const XorFilter& f) const {
      write_header(w, kind, static_cast<std::uint8_t>(f.fingerprint_bits()),
                   f.seed(), f.key_count(), f.segment_length());
      w.slots(f.slots(), f.fingerprint_bits());
    }
    void operator()(const XorPlusFilter& f) const {
      write_header(w, kind, static_cast<std::uint8_t>(f.fingerprint_bits()),
                   f.seed(), f.key_count(), f.segment_length());
      w.slots(f.dense(), f.fingerprint_bits());
      w.words(f.occupancy().words());
      w.words(f.occupancy().counts());
      w.slots(f.packed(), f.fingerprint_bits());
    }
    void operator()(const BloomFilter& f) const {
      write_header(w, kind, static_cast<std::uint8_t>(f.hash_count()),
                   f.seed(), f.key_count(), f.bit_count());
      w.bit_array(f.words(), f.bit_count());
    }
  };
  std::visit(Visitor{w, kind}, filter);
  return w.take();
}

AnyFilter deserialize(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);

  r.require(kHeaderBytes, "header");
  char magic[4];
  for (char& c : magic) c = static_cast<char>(r.u8("magic"));
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw EnvelopeError(EnvelopeError::Code::bad_magic, "magic", 0);
  }
  const std::uint16_t version = r.u16("format_version");
  if (version != kFormatVersion) {
    throw EnvelopeError(EnvelopeError::Code::unsupported_version,
                        "format_version", 4);
  }
  const std::uint8_t kind_byte = r.u8("kind");
  if (kind_byte > static_cast<std::uint8_t>(FilterKind::bloom16)) {
    throw EnvelopeError(EnvelopeError::Code::invalid_field, "kind", 6);
  }
  const auto kind = static_cast<FilterKind>(kind_byte);
  const std::uint8_t k = r.u8("k");
  const Seed seed = r.u64("seed");
  const std::uint64_t n = r.u64("key_count");
  const std::uint64_t seg_len_or_m = r.u64("seg_len_or_m");

  auto check_fingerprint_bits = [&](unsigned expected) {
    if (k != expected) {
      throw EnvelopeError(EnvelopeError::Code::invalid_field, "k", 7);
    }
  };

  switch (kind) {
    case FilterKind::xor8:
    case FilterKind::xor16: {
      check_fingerprint_bits(kind == FilterKind::xor8 ? 8 : 16);
      if (seg_len_or_m == 0 ||
          seg_len_or_m > std::numeric_limits<std::uint32_t>::max() / 3) {
        throw EnvelopeError(EnvelopeError::Code::invalid_field, "seg_len", 24);
      }
      const auto seg_len = static_cast<std::uint32_t>(seg_len_or_m);
      auto slots = r.slots(3 * std::uint64_t{seg_len}, k, "slots");
      if (r.remaining() != 0) {
        throw EnvelopeError(EnvelopeError::Code::invalid_field,
                            "trailing_bytes", r.offset());
      }
      return XorFilter::from_parts(seed, k, seg_len, n, std::move(slots));
    }

    case FilterKind::xorplus8:
    case FilterKind::xorplus16: {
      check_fingerprint_bits(kind == FilterKind::xorplus8 ? 8 : 16);
      if (seg_len_or_m == 0 ||
          seg_len_or_m > std::numeric_limits<std::uint32_t>::max() / 3) {
        throw EnvelopeError(EnvelopeError::Code::invalid_field, "seg_len", 24);
      }
      const auto seg_len = static_cast<std::uint32_t>(seg_len_or_m);
      auto dense = r.slots(2 * std::uint64_t{seg_len}, k, "dense_slots");
      const std::size_t bitmap_offset = r.offset();
      auto bitmap_words = r.words((std::uint64_t{seg_len} + 63) / 64,
                                  "occupancy_bits");
      if ((seg_len & 63) != 0 && (bitmap_words.back() >> (seg_len & 63)) != 0) {
        throw EnvelopeError(EnvelopeError::Code::invalid_field,
                            "occupancy_bits", bitmap_offset);
      }
      RankedBitmap occupancy(std::move(bitmap_words), seg_len);
      const std::size_t counts_offset = r.offset();
      auto stored_counts =
          r.words(occupancy.counts().size(), "rank_counts");
      if (stored_counts != occupancy.counts()) {
        throw EnvelopeError(EnvelopeError::Code::invalid_field, "rank_counts",
                            counts_offset);
      }
      auto packed = r.slots(occupancy.ones(), k, "packed_slots");
      if (r.remaining() != 0) {
        throw EnvelopeError(EnvelopeError::Code::invalid_field,
                            "trailing_bytes", r.offset());
      }
      return XorPlusFilter::from_parts(seed, k, seg_len, n, std::move(dense),
                                       std::move(occupancy), std::move(packed));
    }

    case FilterKind::bloom8:
    case FilterKind::bloom12:
    case FilterKind::bloom16: {
      if (k == 0) {
        throw EnvelopeError(EnvelopeError::Code::invalid_field, "k", 7);
      }
      if (seg_len_or_m > std::numeric_limits<std::uint32_t>::max()) {
        throw EnvelopeError(EnvelopeError::Code::invalid_field, "m", 24);
      }
      const auto m = static_cast<std::uint32_t>(seg_len_or_m);
      auto words = r.bit_array(m, "bits");
      if ((m & 63) != 0 && (words.empty() ? 0 : words.back() >> (m & 63)) != 0) {
        throw EnvelopeError(EnvelopeError::Code::invalid_field, "bits",
                            r.offset());
      }
      if (r.remaining() != 0) {
        throw EnvelopeError(EnvelopeError::Code::invalid_field,
                            "trailing_bytes", r.offset());
      }
      const unsigned bits_per_key = kind == FilterKind::bloom8    ? 8
                                    : kind == FilterKind::bloom12 ? 12
                                                                  : 16;
      return BloomFilter::from_parts(seed, bits_per_key, k, m, n,
                                     std::move(words));
    }
  }
  throw EnvelopeError(EnvelopeError::Code::invalid_field, "kind", 6);
}

}  // namespace xorfilt
