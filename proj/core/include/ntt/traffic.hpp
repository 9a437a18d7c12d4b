// Copyright 2026 The ntt-engine Authors
// SPDX-License-Identifier: Apache-2.0

// Analytic main-memory traffic model for the transform variants.
//
// Counting convention:
//  - every pass over the main buffer reads and writes each data word once;
//  - within a pass, each distinct twiddle word is loaded once (the pass-local
//    preload), two words per entry with Shoup companions;
//  - a pass that generates twiddles on the fly loads the whole OT schedule
//    (base + n/base entries) once instead of its covered stages' entries.
// Caches, coalescing and write-allocate effects are not modeled.

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ntt/transform.hpp"

namespace ntt {

struct StageTraffic {
  unsigned stage = 0;               // 1-based radix-2 stage; stage s has 2^(s-1) twiddles
  u64 distinct_twiddle_words = 0;   // table words this stage reads (0 when generated on the fly)
  u64 data_words = 0;               // main-buffer words moved by a pass starting at this stage
};

/// Byte counts for np transforms of degree n under one configuration.
struct TrafficReport {
  TransformConfig config;
  u64 n = 0;
  u64 np = 0;
  bool with_companions = true;
  u64 data_bytes = 0;
  u64 twiddle_bytes = 0;
  u64 table_resident_bytes = 0;
  std::vector<StageTraffic> per_stage;  // per prime
  double ot_reduction_pct = 0.0;

  u64 total_bytes() const noexcept { return data_bytes + twiddle_bytes; }
};

/// Per-prime word counts under the convention above; directly comparable
/// with TransformStats when with_companions is set.
struct WordCounts {
  u64 data_reads = 0;
  u64 data_writes = 0;
  u64 twiddle_words = 0;
};

WordCounts model_word_counts(const TransformConfig& config, u64 n, bool with_companions);

TrafficReport model_radix2(u64 n, u64 np, bool with_companions,
                           std::optional<OtConfig> ot = std::nullopt);

/// Throws Errc::config on an invalid split.
TrafficReport model_two_pass(u64 n, u64 n1, u64 n2, u64 np, std::optional<OtConfig> ot,
                             bool with_companions);

/// Any configuration (stockham, high radix included).
TrafficReport model_traffic(const TransformConfig& config, u64 n, u64 np, bool with_companions = true);

/// Resident precomputed storage. With OT, the forward table's entries for the
/// covered stages are replaced by the OT schedule; other directions are full.
u64 model_table_resident(u64 n, u64 np, unsigned directions, bool with_companions,
                         std::optional<OtConfig> ot = std::nullopt);

/// Runs one forward transform of `input` with counters enabled.
TransformStats instrument_counters(const TransformConfig& config, const TwiddleTable& table,
                                   std::span<const u64> input);

void write_traffic_csv_header(std::ostream& out);
void write_traffic_csv_row(std::ostream& out, const TrafficReport& report);

}  // namespace ntt
