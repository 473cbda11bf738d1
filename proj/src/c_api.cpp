#include "xorfilt.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "bench.hpp"
#include "envelope.hpp"

using namespace xorfilt;

namespace {

thread_local std::string t_last_error;

xf_status fail(xf_status status, std::string message) {
  t_last_error = std::move(message);
  return status;
}

xf_status fail_invalid(const char* message) {
  return fail(XF_E_INVALID_ARGUMENT, message);
}

xf_status envelope_status(const EnvelopeError& e) {
  switch (e.code()) {
    case EnvelopeError::Code::bad_magic:
      return XF_E_BAD_MAGIC;
    case EnvelopeError::Code::unsupported_version:
      return XF_E_UNSUPPORTED_VERSION;
    case EnvelopeError::Code::truncated_payload:
      return XF_E_TRUNCATED_PAYLOAD;
    case EnvelopeError::Code::invalid_field:
      return XF_E_INVALID_FIELD;
  }
  return XF_E_INVALID_FIELD;
}

const AnyFilter& unwrap(const xf_filter* filter) {
  return *reinterpret_cast<const AnyFilter*>(filter);
}

xf_filter* wrap(AnyFilter&& filter) {
  return reinterpret_cast<xf_filter*>(new AnyFilter(std::move(filter)));
}

const BenchReport& unwrap(const xf_bench_report* report) {
  return *reinterpret_cast<const BenchReport*>(report);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* xf_status_name(xf_status status) {
  switch (status) {
    case XF_OK:
      return "ok";
    case XF_E_INVALID_ARGUMENT:
      return "invalid argument";
    case XF_E_CONSTRUCTION_FAILED:
      return "construction failed";
    case XF_E_BAD_MAGIC:
      return "bad magic";
    case XF_E_UNSUPPORTED_VERSION:
      return "unsupported version";
    case XF_E_TRUNCATED_PAYLOAD:
      return "truncated payload";
    case XF_E_INVALID_FIELD:
      return "invalid field";
    case XF_E_NO_MEMORY:
      return "out of memory";
  }
  return "unknown status";
}

const char* xf_last_error(void) { return t_last_error.c_str(); }

const char* xf_kind_name(xf_kind kind) {
  if (kind < XF_KIND_XOR8 || kind > XF_KIND_BLOOM16) return "unknown";
  return kind_name(static_cast<FilterKind>(kind)).data();
}

xf_status xf_kind_from_name(const char* name, xf_kind* out) {
  if (name == nullptr || out == nullptr) {
    return fail_invalid("xf_kind_from_name: null argument");
  }
  if (auto kind = parse_kind(name)) {
    *out = static_cast<xf_kind>(*kind);
    return XF_OK;
  }
  return fail(XF_E_INVALID_ARGUMENT,
              std::string("unknown filter kind '") + name + "'");
}

xf_status xf_build(xf_kind kind, const uint64_t* keys, size_t key_count,
                   uint64_t master_seed, xf_filter** out) {
  if (out == nullptr) return fail_invalid("xf_build: null output pointer");
  *out = nullptr;
  if (keys == nullptr && key_count > 0) {
    return fail_invalid("xf_build: null keys with nonzero count");
  }
  if (kind < XF_KIND_XOR8 || kind > XF_KIND_BLOOM16) {
    return fail_invalid("xf_build: unknown filter kind");
  }
  try {
    *out = wrap(build_filter(static_cast<FilterKind>(kind), {keys, key_count},
                             master_seed));
    return XF_OK;
  } catch (const ConstructionFailed& e) {
    return fail(XF_E_CONSTRUCTION_FAILED, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(XF_E_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(XF_E_NO_MEMORY, "xf_build: out of memory");
  }
}

void xf_filter_free(xf_filter* filter) {
  delete reinterpret_cast<AnyFilter*>(filter);
}

int xf_contains(const xf_filter* filter, uint64_t key) {
  if (filter == nullptr) return 0;
  return contains(unwrap(filter), key) ? 1 : 0;
}

xf_status xf_filter_get_info(const xf_filter* filter, xf_filter_info* out) {
  if (filter == nullptr || out == nullptr) {
    return fail_invalid("xf_filter_get_info: null argument");
  }
  const AnyFilter& f = unwrap(filter);
  out->kind = static_cast<xf_kind>(kind_of(f));
  out->format_version = kFormatVersion;
  out->key_count = key_count(f);
  out->payload_bytes = payload_bytes(f);
  out->bits_per_key =
      out->key_count == 0
          ? 0.0
          : static_cast<double>(out->payload_bytes) * 8.0 /
                static_cast<double>(out->key_count);
  if (const auto* xf = std::get_if<XorFilter>(&f)) {
    out->hash_parameter = static_cast<uint8_t>(xf->fingerprint_bits());
    out->seed = xf->seed();
    out->segment_length_or_bits = xf->segment_length();
  } else if (const auto* xp = std::get_if<XorPlusFilter>(&f)) {
    out->hash_parameter = static_cast<uint8_t>(xp->fingerprint_bits());
    out->seed = xp->seed();
    out->segment_length_or_bits = xp->segment_length();
  } else {
    const auto& bf = std::get<BloomFilter>(f);
    out->hash_parameter = static_cast<uint8_t>(bf.hash_count());
    out->seed = bf.seed();
    out->segment_length_or_bits = bf.bit_count();
  }
  return XF_OK;
}

xf_status xf_serialize(const xf_filter* filter, uint8_t** bytes, size_t* size) {
  if (filter == nullptr || bytes == nullptr || size == nullptr) {
    return fail_invalid("xf_serialize: null argument");
  }
  *bytes = nullptr;
  *size = 0;
  try {
    const std::vector<std::uint8_t> data = serialize(unwrap(filter));
    auto* out = static_cast<uint8_t*>(std::malloc(data.size()));
    if (out == nullptr) {
      return fail(XF_E_NO_MEMORY, "xf_serialize: out of memory");
    }
    std::memcpy(out, data.data(), data.size());
    *bytes = out;
    *size = data.size();
    return XF_OK;
  } catch (const std::bad_alloc&) {
    return fail(XF_E_NO_MEMORY, "xf_serialize: out of memory");
  }
}

void xf_bytes_free(uint8_t* bytes) { std::free(bytes); }

xf_status xf_deserialize(const uint8_t* bytes, size_t size, xf_filter** out) {
  if (out == nullptr) return fail_invalid("xf_deserialize: null output pointer");
  *out = nullptr;
  if (bytes == nullptr && size > 0) {
    return fail_invalid("xf_deserialize: null bytes with nonzero size");
  }
  try {
    *out = wrap(deserialize({bytes, size}));
    return XF_OK;
  } catch (const EnvelopeError& e) {
    return fail(envelope_status(e), e.what());
  } catch (const std::bad_alloc&) {
    return fail(XF_E_NO_MEMORY, "xf_deserialize: out of memory");
  }
}

xf_status xf_bench_run(const xf_bench_config* config, xf_bench_report** out) {
  if (config == nullptr || out == nullptr) {
    return fail_invalid("xf_bench_run: null argument");
  }
  *out = nullptr;
  if (config->fractions == nullptr && config->fraction_count > 0) {
    return fail_invalid("xf_bench_run: null fractions with nonzero count");
  }
  if (config->kind < XF_KIND_XOR8 || config->kind > XF_KIND_BLOOM16) {
    return fail_invalid("xf_bench_run: unknown filter kind");
  }
  try {
    BenchConfig cfg;
    cfg.kind = static_cast<FilterKind>(config->kind);
    cfg.key_count = config->key_count;
    cfg.query_count = config->query_count;
    cfg.present_fractions.assign(config->fractions,
                                 config->fractions + config->fraction_count);
    cfg.master_seed = config->master_seed;
    cfg.repetitions = config->repetitions;
    *out = reinterpret_cast<xf_bench_report*>(
        new BenchReport(run_benchmark(cfg)));
    return XF_OK;
  } catch (const ConstructionFailed& e) {
    return fail(XF_E_CONSTRUCTION_FAILED, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(XF_E_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(XF_E_NO_MEMORY, "xf_bench_run: out of memory");
  }
}

size_t xf_bench_report_rows(const xf_bench_report* report) {
  if (report == nullptr) return 0;
  return unwrap(report).rows.size();
}

xf_status xf_bench_report_row(const xf_bench_report* report, size_t index,
                              xf_bench_row* out) {
  if (report == nullptr || out == nullptr) {
    return fail_invalid("xf_bench_report_row: null argument");
  }
  const BenchReport& rep = unwrap(report);
  if (index >= rep.rows.size()) {
    return fail_invalid("xf_bench_report_row: index out of range");
  }
  const BenchRow& row = rep.rows[index];
  out->kind = static_cast<xf_kind>(row.kind);
  out->key_count = row.key_count;
  out->fraction = row.fraction;
  out->bits_per_key = row.bits_per_key;
  out->fpp = row.fpp;
  out->construct_ns_per_key = row.construct_ns_per_key;
  out->query_ns_per_key = row.query_ns_per_key;
  out->positives = row.positives;
  return XF_OK;
}

xf_status xf_bench_report_csv(const xf_bench_report* report, char** out) {
  if (report == nullptr || out == nullptr) {
    return fail_invalid("xf_bench_report_csv: null argument");
  }
  *out = copy_string(to_csv(unwrap(report)));
  return *out != nullptr ? XF_OK
                         : fail(XF_E_NO_MEMORY, "xf_bench_report_csv: out of memory");
}

xf_status xf_bench_report_table(const xf_bench_report* report, char** out) {
  if (report == nullptr || out == nullptr) {
    return fail_invalid("xf_bench_report_table: null argument");
  }
  *out = copy_string(to_table(unwrap(report)));
  return *out != nullptr
             ? XF_OK
             : fail(XF_E_NO_MEMORY, "xf_bench_report_table: out of memory");
}

void xf_string_free(char* str) { std::free(str); }

void xf_bench_report_free(xf_bench_report* report) {
  delete reinterpret_cast<BenchReport*>(report);
}

}  // extern "C"
