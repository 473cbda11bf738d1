#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

#include "envelope.hpp"

namespace xorfilt {

namespace {

// Stream salts keep key generation, absent-key generation, and shuffling
// decorrelated from the construction seed sequence.
constexpr std::uint64_t kKeysSalt = 0x4b65795374726561ULL;
constexpr std::uint64_t kQuerySalt = 0x5175657279536574ULL;
constexpr std::uint64_t kAbsentSalt = 0x416273656e744b65ULL;
constexpr std::uint64_t kPickSalt = 0x5069636b50726573ULL;
constexpr std::uint64_t kShuffleSalt = 0x53687566666c6521ULL;

using Clock = std::chrono::steady_clock;

double elapsed_ns(Clock::time_point start, Clock::time_point stop) {
  return std::chrono::duration<double, std::nano>(stop - start).count();
}

// Keeps the membership test out of line so the counting loop cannot be
// folded away.
[[gnu::noinline]] bool contains_outlined(const AnyFilter& filter,
                                         std::uint64_t key) {
  return contains(filter, key);
}

std::uint64_t count_positives(const AnyFilter& filter,
                              std::span<const std::uint64_t> queries) {
  std::uint64_t positives = 0;
  for (std::uint64_t q : queries) positives += contains_outlined(filter, q);
  return positives;
}

// Uniform index in [0, n) from a 64-bit draw, multiply-shift style.
std::uint64_t index_below(std::uint64_t draw, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(draw) * n) >> 64);
}

}  // namespace

namespace detail {

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace detail

std::vector<std::uint64_t> generate_keys(std::uint64_t n, Seed seed) {
  SeedSequence stream(seed);
  std::vector<std::uint64_t> keys(n);
  for (std::uint64_t& k : keys) k = stream.next();
  return keys;
}

std::vector<std::uint64_t> build_query_set(
    std::span<const std::uint64_t> inserted, double fraction,
    std::uint64_t count, Seed seed) {
  if (fraction < 0.0 || fraction > 1.0) {
    throw std::invalid_argument("xorfilt: present fraction must be in [0, 1]");
  }
  const auto present = static_cast<std::uint64_t>(
      std::llround(fraction * static_cast<double>(count)));
  if (present > 0 && inserted.empty()) {
    throw std::invalid_argument("xorfilt: cannot draw present keys from an empty set");
  }

  std::vector<std::uint64_t> queries;
  queries.reserve(count);

  SeedSequence pick(mix64(seed, kPickSalt));
  for (std::uint64_t i = 0; i < present; i++) {
    queries.push_back(inserted[index_below(pick.next(), inserted.size())]);
  }

  // Absent keys come from a disjoint stream and are rejected against the
  // inserted set, so every one is a guaranteed negative.
  const std::unordered_set<std::uint64_t> inserted_set(inserted.begin(),
                                                       inserted.end());
  SeedSequence absent(mix64(seed, kAbsentSalt));
  while (queries.size() < count) {
    const std::uint64_t candidate = absent.next();
    if (!inserted_set.contains(candidate)) queries.push_back(candidate);
  }

  SeedSequence shuffle(mix64(seed, kShuffleSalt));
  for (std::uint64_t i = count; i > 1; i--) {
    std::swap(queries[i - 1], queries[index_below(shuffle.next(), i)]);
  }
  return queries;
}

double measure_fpp(const AnyFilter& filter,
                   std::span<const std::uint64_t> absent) {
  if (absent.empty()) return 0.0;
  return static_cast<double>(count_positives(filter, absent)) /
         static_cast<double>(absent.size());
}

BenchReport run_benchmark(const BenchConfig& config) {
  if (config.key_count < 1 || config.query_count < 1 ||
      config.repetitions < 1) {
    throw std::invalid_argument("xorfilt: bench config counts must be at least 1");
  }

  const std::vector<std::uint64_t> keys =
      generate_keys(config.key_count, mix64(config.master_seed, kKeysSalt));

  std::vector<double> construct_ns(config.repetitions);
  AnyFilter filter = build_filter(config.kind, keys, config.master_seed);
  for (std::uint32_t rep = 0; rep < config.repetitions; rep++) {
    const auto start = Clock::now();
    filter = build_filter(config.kind, keys, config.master_seed);
    construct_ns[rep] =
        elapsed_ns(start, Clock::now()) / static_cast<double>(config.key_count);
  }
  const double construct_per_key = detail::median(construct_ns);
  const double bits_per_key =
      static_cast<double>(payload_bytes(filter)) * 8.0 /
      static_cast<double>(config.key_count);

  BenchReport report;
  for (std::size_t fi = 0; fi < config.present_fractions.size(); fi++) {
    const double fraction = config.present_fractions[fi];
    const std::vector<std::uint64_t> queries =
        build_query_set(keys, fraction, config.query_count,
                        mix64(config.master_seed, kQuerySalt + fi));
    const auto present = static_cast<std::uint64_t>(
        std::llround(fraction * static_cast<double>(config.query_count)));

    std::uint64_t positives = 0;
    std::vector<double> query_ns(config.repetitions);
    for (std::uint32_t rep = 0; rep < config.repetitions; rep++) {
      const auto start = Clock::now();
      positives = count_positives(filter, queries);
      query_ns[rep] = elapsed_ns(start, Clock::now()) /
                      static_cast<double>(config.query_count);
    }

    const std::uint64_t absent = config.query_count - present;
    BenchRow row;
    row.kind = config.kind;
    row.key_count = config.key_count;
    row.fraction = fraction;
    row.bits_per_key = bits_per_key;
    row.fpp = absent == 0 ? 0.0
                          : static_cast<double>(positives - present) /
                                static_cast<double>(absent);
    row.construct_ns_per_key = construct_per_key;
    row.query_ns_per_key = detail::median(query_ns);
    row.positives = positives;
    report.rows.push_back(row);
  }
  return report;
}

double theoretical_bits_per_key(SpaceModel model, double epsilon) {
  if (epsilon <= 0.0 || epsilon >= 1.0) {
    throw std::invalid_argument("xorfilt: epsilon must be in (0, 1)");
  }
  const double bits = -std::log2(epsilon);
  switch (model) {
    case SpaceModel::bloom:
      return 1.44 * bits;
    case SpaceModel::xor_filter:
      return 1.23 * bits;
    case SpaceModel::xor_plus:
      return 1.0824 * bits + 0.5125;
    case SpaceModel::lower_bound:
      return bits;
  }
  throw std::invalid_argument("xorfilt: unknown space model");
}

std::string to_csv(const BenchReport& report) {
  std::string out{kCsvHeader};
  out += '\n';
  char line[256];
  for (const BenchRow& r : report.rows) {
    std::snprintf(line, sizeof line, "%s,%llu,%g,%.4f,%.8f,%.2f,%.2f\n",
                  std::string(kind_name(r.kind)).c_str(),
                  static_cast<unsigned long long>(r.key_count), r.fraction,
                  r.bits_per_key, r.fpp, r.construct_ns_per_key,
                  r.query_ns_per_key);
    out += line;
  }
  return out;
}

std::string to_table(const BenchReport& report) {
  std::string out =
      "kind        n          fraction  bits/key  fpp%      construct  query\n"
      "                                                     ns/key     ns/key\n";
  char line[256];
  for (const BenchRow& r : report.rows) {
    std::snprintf(line, sizeof line, "%-11s %-10llu %-9g %-9.3f %-9.5f %-10.1f %-9.1f\n",
                  std::string(kind_name(r.kind)).c_str(),
                  static_cast<unsigned long long>(r.key_count), r.fraction,
                  r.bits_per_key, 100.0 * r.fpp, r.construct_ns_per_key,
                  r.query_ns_per_key);
    out += line;
  }
  return out;
}

}  // namespace xorfilt
