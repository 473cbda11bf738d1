// Command-line front end for the xorfilt shared library: build filters
// from key files, query them, inspect envelopes, and run the benchmark
// harness. Talks to the library through the C API only.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "xorfilt.h"

namespace {

constexpr const char* kSynopsis =
    "usage: xfilt <command> [options]\n"
    "  build    --kind KIND --keys PATH --out PATH [--seed S] [--raw]\n"
    "  query    --filter PATH --keys PATH [--raw]\n"
    "  inspect  --filter PATH\n"
    "  bench    --kind KIND [--n N] [--queries Q] [--fractions F,F,...]\n"
    "           [--seed S] [--reps R] [--csv PATH]\n"
    "kinds: xor8 xor16 xorplus8 xorplus16 bloom8 bloom12 bloom16\n";

// Thrown for unreadable/malformed inputs; maps to exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown for errors in flag values; maps to exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FilterDeleter {
  void operator()(xf_filter* f) const { xf_filter_free(f); }
};
using FilterHandle = std::unique_ptr<xf_filter, FilterDeleter>;

void check(xf_status status, const std::string& context) {
  if (status != XF_OK) {
    throw DataError(context + ": " + xf_status_name(status) + " (" +
                    xf_last_error() + ")");
  }
}

std::uint64_t parse_key_token(const std::string& token, const std::string& path,
                              std::size_t line_no) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  int base = 10;
  if (token.size() > 2 && token[0] == '0' && (token[1] == 'x' || token[1] == 'X')) {
    first += 2;
    base = 16;
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(first, last, value, base);
  if (ec != std::errc{} || ptr != last) {
    throw DataError(path + ":" + std::to_string(line_no) + ": bad key '" +
                    token + "'");
  }
  return value;
}

std::vector<std::uint64_t> read_text_keys(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open key file " + path);
  std::vector<std::uint64_t> keys;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    line_no++;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t')) {
      line.pop_back();
    }
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    keys.push_back(parse_key_token(line.substr(start), path, line_no));
  }
  return keys;
}

std::vector<std::uint64_t> read_raw_keys(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open key file " + path);
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  if (bytes.size() % 8 != 0) {
    throw DataError(path + ": raw key file size is not a multiple of 8");
  }
  std::vector<std::uint64_t> keys(bytes.size() / 8);
  for (std::size_t i = 0; i < keys.size(); i++) {
    std::uint64_t v = 0;
    for (int b = 0; b < 8; b++) {
      v |= std::uint64_t{static_cast<unsigned char>(bytes[8 * i + b])} << (8 * b);
    }
    keys[i] = v;
  }
  return keys;
}

std::vector<std::uint64_t> read_keys(const std::string& path, bool raw) {
  return raw ? read_raw_keys(path) : read_text_keys(path);
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::uint8_t* data,
                std::size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot create " + path);
  out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) throw DataError("write failed for " + path);
}

xf_kind parse_kind_flag(const std::string& name) {
  xf_kind kind;
  if (xf_kind_from_name(name.c_str(), &kind) != XF_OK) {
    throw UsageError("unknown filter kind '" + name + "'");
  }
  return kind;
}

FilterHandle load_filter(const std::string& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  xf_filter* filter = nullptr;
  check(xf_deserialize(bytes.data(), bytes.size(), &filter), path);
  return FilterHandle(filter);
}

int run_build(const std::string& kind_name, const std::string& keys_path,
              const std::string& out_path, std::uint64_t seed, bool raw) {
  const xf_kind kind = parse_kind_flag(kind_name);
  const std::vector<std::uint64_t> keys = read_keys(keys_path, raw);
  xf_filter* filter = nullptr;
  check(xf_build(kind, keys.data(), keys.size(), seed, &filter), "build");
  FilterHandle handle(filter);
  uint8_t* bytes = nullptr;
  size_t size = 0;
  check(xf_serialize(handle.get(), &bytes, &size), "serialize");
  try {
    write_file(out_path, bytes, size);
  } catch (...) {
    xf_bytes_free(bytes);
    throw;
  }
  xf_bytes_free(bytes);
  return 0;
}

int run_query(const std::string& filter_path, const std::string& keys_path,
              bool raw) {
  const FilterHandle filter = load_filter(filter_path);
  const std::vector<std::uint64_t> keys = read_keys(keys_path, raw);
  for (std::uint64_t key : keys) {
    std::printf("%llu\t%s\n", static_cast<unsigned long long>(key),
                xf_contains(filter.get(), key) ? "maybe" : "no");
  }
  return 0;
}

int run_inspect(const std::string& filter_path) {
  const FilterHandle filter = load_filter(filter_path);
  xf_filter_info info;
  check(xf_filter_get_info(filter.get(), &info), "inspect");
  const bool bloom = info.kind >= XF_KIND_BLOOM8;
  std::printf("kind: %s\n", xf_kind_name(info.kind));
  std::printf("format_version: %u\n", info.format_version);
  std::printf("%s: %u\n", bloom ? "hash_count" : "fingerprint_bits",
              info.hash_parameter);
  std::printf("seed: 0x%016llx\n", static_cast<unsigned long long>(info.seed));
  std::printf("keys: %llu\n", static_cast<unsigned long long>(info.key_count));
  std::printf("%s: %llu\n", bloom ? "bits" : "segment_length",
              static_cast<unsigned long long>(info.segment_length_or_bits));
  std::printf("payload_bytes: %llu\n",
              static_cast<unsigned long long>(info.payload_bytes));
  if (info.key_count > 0) {
    std::printf("bits_per_key: %.6g\n", info.bits_per_key);
  } else {
    std::printf("bits_per_key: n/a\n");
  }
  return 0;
}

std::vector<double> parse_fractions(const std::string& spec) {
  std::vector<double> fractions;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw UsageError("empty entry in --fractions");
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("bad fraction '" + item + "'");
    }
    if (used != item.size() || value < 0.0 || value > 1.0) {
      throw UsageError("bad fraction '" + item + "' (want a number in [0, 1])");
    }
    fractions.push_back(value);
  }
  if (fractions.empty()) throw UsageError("--fractions needs at least one value");
  return fractions;
}

int run_bench(const std::string& kind_name, std::uint64_t n,
              std::uint64_t queries, const std::string& fractions_spec,
              std::uint64_t seed, std::uint32_t reps,
              const std::string& csv_path) {
  const std::vector<double> fractions = parse_fractions(fractions_spec);
  xf_bench_config config;
  config.kind = parse_kind_flag(kind_name);
  config.key_count = n;
  config.query_count = queries;
  config.fractions = fractions.data();
  config.fraction_count = fractions.size();
  config.master_seed = seed;
  config.repetitions = reps;

  xf_bench_report* report = nullptr;
  check(xf_bench_run(&config, &report), "bench");
  std::unique_ptr<xf_bench_report, decltype(&xf_bench_report_free)> handle(
      report, &xf_bench_report_free);

  char* table = nullptr;
  check(xf_bench_report_table(handle.get(), &table), "bench table");
  std::fputs(table, stdout);
  xf_string_free(table);

  if (!csv_path.empty()) {
    char* csv = nullptr;
    check(xf_bench_report_csv(handle.get(), &csv), "bench csv");
    try {
      write_file(csv_path, reinterpret_cast<const std::uint8_t*>(csv),
                 std::strlen(csv));
    } catch (...) {
      xf_string_free(csv);
      throw;
    }
    xf_string_free(csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"xorfilt filter tool"};
  app.require_subcommand(1);

  std::string kind, keys_path, out_path, filter_path, csv_path;
  std::string fractions = "0,0.25,0.5,0.75,1";
  std::uint64_t seed = 1;
  std::uint64_t n = 1'000'000;
  std::uint64_t queries = 1'000'000;
  std::uint32_t reps = 3;
  bool raw = false;

  CLI::App* build = app.add_subcommand("build", "build a filter from a key file");
  build->add_option("--kind", kind)->required();
  build->add_option("--keys", keys_path)->required();
  build->add_option("--out", out_path)->required();
  build->add_option("--seed", seed);
  build->add_flag("--raw", raw, "keys are raw little-endian 8-byte records");

  CLI::App* query = app.add_subcommand("query", "test keys against a filter");
  query->add_option("--filter", filter_path)->required();
  query->add_option("--keys", keys_path)->required();
  query->add_flag("--raw", raw, "keys are raw little-endian 8-byte records");

  CLI::App* inspect = app.add_subcommand("inspect", "print filter header fields");
  inspect->add_option("--filter", filter_path)->required();

  CLI::App* bench = app.add_subcommand("bench", "measure space, FPP, and speed");
  bench->add_option("--kind", kind)->required();
  bench->add_option("--n", n, "number of keys");
  bench->add_option("--queries", queries, "queries per fraction");
  bench->add_option("--fractions", fractions, "comma-separated present fractions");
  bench->add_option("--seed", seed);
  bench->add_option("--reps", reps, "repetitions; timings report the median");
  bench->add_option("--csv", csv_path, "also write rows as CSV to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "xfilt: " << e.what() << "\n" << kSynopsis;
    return 1;
  }

  try {
    if (build->parsed()) return run_build(kind, keys_path, out_path, seed, raw);
    if (query->parsed()) return run_query(filter_path, keys_path, raw);
    if (inspect->parsed()) return run_inspect(filter_path);
    if (bench->parsed()) {
      return run_bench(kind, n, queries, fractions, seed, reps, csv_path);
    }
  } catch (const UsageError& e) {
    std::cerr << "xfilt: " << e.what() << "\n" << kSynopsis;
    return 1;
  } catch (const DataError& e) {
    std::cerr << "xfilt: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
