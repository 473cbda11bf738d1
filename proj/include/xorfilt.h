/* xorfilt — immutable approximate-membership filters over 64-bit keys.
 *
 * C API of the shared library. Filters and benchmark reports are opaque
 * handles; every fallible call returns an xf_status, and xf_last_error()
 * gives a thread-local detail message for the most recent failure.
 */
#ifndef XORFILT_H
#define XORFILT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum xf_status {
  XF_OK = 0,
  XF_E_INVALID_ARGUMENT = 1,
  XF_E_CONSTRUCTION_FAILED = 2, /* mapping failed for 100 seeds in a row */
  XF_E_BAD_MAGIC = 3,
  XF_E_UNSUPPORTED_VERSION = 4,
  XF_E_TRUNCATED_PAYLOAD = 5,
  XF_E_INVALID_FIELD = 6,
  XF_E_NO_MEMORY = 7
} xf_status;

typedef enum xf_kind {
  XF_KIND_XOR8 = 0,
  XF_KIND_XOR16 = 1,
  XF_KIND_XORPLUS8 = 2,
  XF_KIND_XORPLUS16 = 3,
  XF_KIND_BLOOM8 = 4,
  XF_KIND_BLOOM12 = 5,
  XF_KIND_BLOOM16 = 6
} xf_kind;

typedef struct xf_filter xf_filter;

const char* xf_status_name(xf_status status);

/* Detail for the most recent failing call on this thread; empty string if
 * none. The pointer stays valid until the next failing call. */
const char* xf_last_error(void);

/* "xor8", "xorplus16", "bloom12", ... */
const char* xf_kind_name(xf_kind kind);
xf_status xf_kind_from_name(const char* name, xf_kind* out);

/* Builds a filter over the keys. Duplicate keys are allowed and collapse
 * to one. The master seed determines the construction deterministically:
 * identical (kind, keys, seed) give bit-identical filters. */
xf_status xf_build(xf_kind kind, const uint64_t* keys, size_t key_count,
                   uint64_t master_seed, xf_filter** out);

void xf_filter_free(xf_filter* filter);

/* 1 if the key is possibly in the set, 0 if definitely not. Never 0 for a
 * construction key. Safe to call concurrently from any number of
 * threads. */
int xf_contains(const xf_filter* filter, uint64_t key);

typedef struct xf_filter_info {
  xf_kind kind;
  uint16_t format_version;
  /* fingerprint bits (xor kinds) or hash count (bloom) */
  uint8_t hash_parameter;
  uint64_t seed;
  uint64_t key_count;
  /* segment length (xor kinds) or bit count m (bloom) */
  uint64_t segment_length_or_bits;
  uint64_t payload_bytes;
  double bits_per_key; /* payload bits / key count; 0 when key_count is 0 */
} xf_filter_info;

xf_status xf_filter_get_info(const xf_filter* filter, xf_filter_info* out);

/* Canonical envelope bytes; free with xf_bytes_free. */
xf_status xf_serialize(const xf_filter* filter, uint8_t** bytes, size_t* size);
void xf_bytes_free(uint8_t* bytes);

xf_status xf_deserialize(const uint8_t* bytes, size_t size, xf_filter** out);

/* ---- benchmark harness ---- */

typedef struct xf_bench_config {
  xf_kind kind;
  uint64_t key_count;
  uint64_t query_count;
  const double* fractions; /* fraction of queries drawn from the key set */
  size_t fraction_count;
  uint64_t master_seed;
  uint32_t repetitions; /* timings are medians over this many runs */
} xf_bench_config;

typedef struct xf_bench_row {
  xf_kind kind;
  uint64_t key_count;
  double fraction;
  double bits_per_key;
  double fpp; /* false-positive rate over the absent part of the mix */
  double construct_ns_per_key;
  double query_ns_per_key;
  uint64_t positives;
} xf_bench_row;

typedef struct xf_bench_report xf_bench_report;

xf_status xf_bench_run(const xf_bench_config* config, xf_bench_report** out);
size_t xf_bench_report_rows(const xf_bench_report* report);
xf_status xf_bench_report_row(const xf_bench_report* report, size_t index,
                              xf_bench_row* out);

/* CSV (fixed header kind,n,fraction,bits_per_key,fpp,construct_ns_per_key,
 * query_ns_per_key) or an aligned text table; free with xf_string_free. */
xf_status xf_bench_report_csv(const xf_bench_report* report, char** out);
xf_status xf_bench_report_table(const xf_bench_report* report, char** out);
void xf_string_free(char* str);
void xf_bench_report_free(xf_bench_report* report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* XORFILT_H */
