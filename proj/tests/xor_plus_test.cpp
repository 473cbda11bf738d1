#include "xor_plus_filter.hpp"

#include <random>

#include "doctest.h"

using namespace xorfilt;

namespace {

std::vector<std::uint64_t> random_keys(std::uint64_t n, std::uint64_t seed) {
  SeedSequence stream(seed);
  std::vector<std::uint64_t> keys(n);
  for (auto& k : keys) k = stream.next();
  return keys;
}

// Rebuilds the uncompressed last segment and answers the membership test
// against the flat slot array.
bool flat_contains(const XorPlusFilter& f, std::uint64_t key) {
  const std::uint64_t h = mix64(key, f.seed());
  const SegmentIndexes ix = segment_hashes(h, f.segment_length());
  const std::uint32_t j = ix.i2 - 2 * f.segment_length();
  std::uint16_t last = 0;
  if (f.occupancy().test(j)) {
    std::uint64_t position = 0;
    for (std::uint32_t b = 0; b < j; b++) position += f.occupancy().test(b);
    last = f.packed()[position];
  }
  const auto got = static_cast<std::uint16_t>(f.dense()[ix.i0] ^
                                              f.dense()[ix.i1] ^ last);
  return got == fingerprint(h, f.fingerprint_bits());
}

}  // namespace

TEST_CASE("space estimate formula") {
  CHECK(xor_plus_bits_per_key(8) == doctest::Approx(9.1717).epsilon(1e-9));
  CHECK(xor_plus_bits_per_key(16) == doctest::Approx(17.8309).epsilon(1e-9));
  CHECK(xor_plus_bits_per_key(0) == doctest::Approx(0.5125).epsilon(1e-9));
}

TEST_CASE("an empty xor+ filter is all zeros") {
  const XorPlusFilter f = XorPlusFilter::build({}, 8, 5);
  CHECK(f.key_count() == 0);
  CHECK(f.dense().size() == 22);
  for (std::uint16_t v : f.dense()) CHECK(v == 0);
  CHECK(f.occupancy().ones() == 0);
  CHECK(f.packed().empty());
}

TEST_CASE("every construction key queries positive") {
  const auto keys = random_keys(20000, 2);
  for (unsigned k : {8u, 16u}) {
    const XorPlusFilter f = XorPlusFilter::build(keys, k, 9);
    for (std::uint64_t key : keys) CHECK(f.contains(key));
  }
}

TEST_CASE("packed slots cover exactly the occupied last-segment positions") {
  const auto keys = random_keys(5000, 8);
  const XorPlusFilter f = XorPlusFilter::build(keys, 8, 1);
  CHECK(f.packed().size() == f.occupancy().ones());
  CHECK(f.occupancy().size() == f.segment_length());
  CHECK(f.dense().size() == 2 * std::size_t{f.segment_length()});
}

TEST_CASE("compressed queries agree with the flat reconstruction") {
  const auto keys = random_keys(3000, 12);
  const XorPlusFilter f = XorPlusFilter::build(keys, 8, 21);
  for (std::uint64_t key : keys) {
    CHECK(f.contains(key));
    CHECK(flat_contains(f, key));
  }
  std::mt19937_64 rng(55);
  for (int t = 0; t < 20000; t++) {
    const std::uint64_t probe = rng();
    CHECK(f.contains(probe) == flat_contains(f, probe));
  }
}

TEST_CASE("three-queue peeling biases empty slots into the last segment") {
  double total = 0;
  const int runs = 10;
  for (int r = 0; r < runs; r++) {
    const auto keys = random_keys(10000, 100 + r);
    const XorPlusFilter f = XorPlusFilter::build(keys, 8, 100 + r);
    total += f.last_segment_empty_fraction();
  }
  const double mean = total / runs;
  CHECK(mean > 0.28);
  CHECK(mean < 0.44);
}

TEST_CASE("construction is deterministic") {
  const auto keys = random_keys(4000, 77);
  const XorPlusFilter a = XorPlusFilter::build(keys, 16, 123);
  const XorPlusFilter b = XorPlusFilter::build(keys, 16, 123);
  CHECK(a.seed() == b.seed());
  CHECK(a.dense() == b.dense());
  CHECK(a.occupancy().words() == b.occupancy().words());
  CHECK(a.packed() == b.packed());
}

TEST_CASE("rejects unsupported fingerprint widths") {
  CHECK_THROWS_AS(XorPlusFilter::build({}, 9, 0), std::invalid_argument);
}
