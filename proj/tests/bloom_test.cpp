#include "bloom_filter.hpp"

#include <random>
#include <stdexcept>

#include "doctest.h"

using namespace xorfilt;

namespace {

std::vector<std::uint64_t> random_keys(std::uint64_t n, std::uint64_t seed) {
  SeedSequence stream(seed);
  std::vector<std::uint64_t> keys(n);
  for (auto& k : keys) k = stream.next();
  return keys;
}

bool bit_set(const std::vector<std::uint64_t>& words, std::uint64_t i) {
  return (words[i >> 6] >> (i & 63)) & 1;
}

}  // namespace

TEST_CASE("optimal hash count rounds bits-per-key times ln 2") {
  CHECK(optimal_hash_count(8) == 6);
  CHECK(optimal_hash_count(12) == 8);
  CHECK(optimal_hash_count(16) == 11);
  CHECK(optimal_hash_count(0.1) == 1);  // never below one probe
}

TEST_CASE("double hashing probes the expected bit positions") {
  // Golden vectors for the h1 + i*h2 probe sequence, computed with
  // arbitrary-precision arithmetic.
  const BloomFilter one = BloomFilter::build(std::vector<std::uint64_t>{1}, 8, 0);
  CHECK(one.bit_count() == 8);
  CHECK(one.hash_count() == 6);
  for (std::uint64_t pos : {1, 7, 4, 2, 0, 5}) CHECK(bit_set(one.words(), pos));
  CHECK_FALSE(bit_set(one.words(), 3));
  CHECK_FALSE(bit_set(one.words(), 6));

  const auto keys = random_keys(99, 1);
  std::vector<std::uint64_t> with_42(keys);
  with_42.push_back(42);
  const BloomFilter f = BloomFilter::build(with_42, 12, 7);
  CHECK(f.bit_count() == 1200);
  for (std::uint64_t pos : {255, 28, 1001, 774, 547, 320, 93, 1066}) {
    CHECK(bit_set(f.words(), pos));
  }
}

TEST_CASE("every inserted key queries positive") {
  const auto keys = random_keys(20000, 3);
  for (unsigned bpk : {8u, 12u, 16u}) {
    const BloomFilter f = BloomFilter::build(keys, bpk, 11);
    CHECK(f.key_count() == keys.size());
    for (std::uint64_t key : keys) CHECK(f.contains(key));
  }
}

TEST_CASE("an empty bloom filter rejects everything") {
  const BloomFilter f = BloomFilter::build({}, 8, 0);
  CHECK(f.bit_count() == 0);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 1000; t++) CHECK_FALSE(f.contains(rng()));
}

TEST_CASE("setting extra bits never turns a positive negative") {
  const auto keys = random_keys(500, 9);
  const BloomFilter f = BloomFilter::build(keys, 8, 2);
  std::vector<std::uint64_t> words = f.words();
  std::mt19937_64 rng(6);
  for (int t = 0; t < 200; t++) {
    words[rng() % words.size()] |= std::uint64_t{1} << (rng() % 64);
  }
  const BloomFilter grown =
      BloomFilter::from_parts(f.seed(), f.bits_per_key(), f.hash_count(),
                              static_cast<std::uint32_t>(f.bit_count()),
                              f.key_count(), std::move(words));
  for (std::uint64_t key : keys) CHECK(grown.contains(key));
}

TEST_CASE("false-positive rate sits near the 8 bits-per-key expectation") {
  const auto keys = random_keys(100000, 13);
  const BloomFilter f = BloomFilter::build(keys, 8, 13);
  SeedSequence absent(0xb100f11ULL);
  std::uint64_t positives = 0;
  const std::uint64_t trials = 1000000;
  for (std::uint64_t t = 0; t < trials; t++) positives += f.contains(absent.next());
  // expectation about 21610 (2.161%)
  CHECK(positives > 18000);
  CHECK(positives < 25500);
}

TEST_CASE("rejects a zero bit budget") {
  CHECK_THROWS_AS(BloomFilter::build({}, 0, 0), std::invalid_argument);
}
