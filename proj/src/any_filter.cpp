#include "any_filter.hpp"

#include <stdexcept>

namespace xorfilt {

AnyFilter build_filter(FilterKind kind, std::span<const std::uint64_t> keys,
                       Seed master_seed) {
  switch (kind) {
    case FilterKind::xor8:
      return XorFilter::build(keys, 8, master_seed);
    case FilterKind::xor16:
      return XorFilter::build(keys, 16, master_seed);
    case FilterKind::xorplus8:
      return XorPlusFilter::build(keys, 8, master_seed);
    case FilterKind::xorplus16:
      return XorPlusFilter::build(keys, 16, master_seed);
    case FilterKind::bloom8:
      return BloomFilter::build(keys, 8, master_seed);
    case FilterKind::bloom12:
      return BloomFilter::build(keys, 12, master_seed);
    case FilterKind::bloom16:
      return BloomFilter::build(keys, 16, master_seed);
  }
  throw std::invalid_argument("xorfilt: unknown filter kind");
}

bool contains(const AnyFilter& filter, std::uint64_t key) {
  return std::visit([key](const auto& f) { return f.contains(key); }, filter);
}

FilterKind kind_of(const AnyFilter& filter) {
  struct Visitor {
    FilterKind operator()(const XorFilter& f) const {
      return f.fingerprint_bits() == 8 ? FilterKind::xor8 : FilterKind::xor16;
    }
    FilterKind operator()(const XorPlusFilter& f) const {
      return f.fingerprint_bits() == 8 ? FilterKind::xorplus8
                                       : FilterKind::xorplus16;
    }
    FilterKind operator()(const BloomFilter& f) const {
      switch (f.bits_per_key()) {
        case 8:
          return FilterKind::bloom8;
        case 12:
          return FilterKind::bloom12;
        case 16:
          return FilterKind::bloom16;
        default:
          throw std::invalid_argument("xorfilt: bloom filter size has no kind code");
      }
    }
  };
  return std::visit(Visitor{}, filter);
}

std::uint64_t key_count(const AnyFilter& filter) {
  return std::visit([](const auto& f) { return f.key_count(); }, filter);
}

std::string_view kind_name(FilterKind kind) {
  switch (kind) {
    case FilterKind::xor8:
      return "xor8";
    case FilterKind::xor16:
      return "xor16";
    case FilterKind::xorplus8:
      return "xorplus8";
    case FilterKind::xorplus16:
      return "xorplus16";
    case FilterKind::bloom8:
      return "bloom8";
    case FilterKind::bloom12:
      return "bloom12";
    case FilterKind::bloom16:
      return "bloom16";
  }
  return "unknown";
}

std::optional<FilterKind> parse_kind(std::string_view name) {
  for (FilterKind kind : kAllKinds) {
    if (kind_name(kind) == name) return kind;
  }
  return std::nullopt;
}

}  // namespace xorfilt
