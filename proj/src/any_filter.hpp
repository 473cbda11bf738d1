#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

#include "bloom_filter.hpp"
#include "xor_filter.hpp"
#include "xor_plus_filter.hpp"

namespace xorfilt {

// Wire-stable kind codes; these bytes go into the file envelope.
enum class FilterKind : std::uint8_t {
  xor8 = 0,
  xor16 = 1,
  xorplus8 = 2,
  xorplus16 = 3,
  bloom8 = 4,
  bloom12 = 5,
  bloom16 = 6,
};

inline constexpr FilterKind kAllKinds[] = {
    FilterKind::xor8,   FilterKind::xor16,   FilterKind::xorplus8,
    FilterKind::xorplus16, FilterKind::bloom8, FilterKind::bloom12,
    FilterKind::bloom16,
};

using AnyFilter = std::variant<XorFilter, XorPlusFilter, BloomFilter>;

AnyFilter build_filter(FilterKind kind, std::span<const std::uint64_t> keys,
                       Seed master_seed);

bool contains(const AnyFilter& filter, std::uint64_t key);

// The kind a filter would serialize as. The parameters of a filter built
// through build_filter always map back to exactly one kind.
FilterKind kind_of(const AnyFilter& filter);

std::uint64_t key_count(const AnyFilter& filter);

std::string_view kind_name(FilterKind kind);
std::optional<FilterKind> parse_kind(std::string_view name);

}  // namespace xorfilt
