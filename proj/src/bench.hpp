#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "any_filter.hpp"

namespace xorfilt {

struct BenchConfig {
  FilterKind kind = FilterKind::xor8;
  std::uint64_t key_count = 1'000'000;
  std::uint64_t query_count = 1'000'000;
  std::vector<double> present_fractions = {0.0, 0.25, 0.5, 0.75, 1.0};
  Seed master_seed = 1;
  std::uint32_t repetitions = 3;
};

struct BenchRow {
  FilterKind kind;
  std::uint64_t key_count;
  double fraction;
  double bits_per_key;
  double fpp;  // false-positive rate over the absent part of the mix
  double construct_ns_per_key;
  double query_ns_per_key;
  std::uint64_t positives;
};

struct BenchReport {
  std::vector<BenchRow> rows;
};

namespace detail {
// Median of the sample; mean of the two middle values for even sizes.
double median(std::vector<double> values);
}  // namespace detail

// n distinct pseudo-random keys, deterministic in seed.
std::vector<std::uint64_t> generate_keys(std::uint64_t n, Seed seed);

// count queries: round(fraction * count) drawn from inserted with
// repetition, the rest guaranteed absent from inserted, shuffled
// deterministically by seed.
std::vector<std::uint64_t> build_query_set(
    std::span<const std::uint64_t> inserted, double fraction,
    std::uint64_t count, Seed seed);

// positives / |absent|; callers must pass keys disjoint from the
// construction set.
double measure_fpp(const AnyFilter& filter, std::span<const std::uint64_t> absent);

// Builds the filter and runs the query mix for every fraction,
// `repetitions` times, reporting median timings. FPP and positive counts
// are deterministic in the config; only the timing fields vary.
BenchReport run_benchmark(const BenchConfig& config);

enum class SpaceModel { bloom, xor_filter, xor_plus, lower_bound };

// Theoretical bits per key for a target false-positive probability.
double theoretical_bits_per_key(SpaceModel model, double epsilon);

inline constexpr std::string_view kCsvHeader =
    "kind,n,fraction,bits_per_key,fpp,construct_ns_per_key,query_ns_per_key";

std::string to_csv(const BenchReport& report);
std::string to_table(const BenchReport& report);

}  // namespace xorfilt
