// Copyright 2026 The ntt-engine Authors
// SPDX-License-Identifier: Apache-2.0

#include "ntt/traffic.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <vector>

#include "ntt/error.hpp"

namespace ntt {

namespace {

constexpr u64 kWordBytes = sizeof(u64);

struct Model {
  WordCounts words;
  std::vector<StageTraffic> stages;
};

/// Stage indices [first, last) grouped into one pass.
struct Pass {
  unsigned first;
  unsigned last;
};

std::vector<Pass> passes_for(const TransformConfig& cfg, unsigned log_n) {
  std::vector<Pass> passes;
  switch (cfg.algo) {
    case Algo::radix2_ct:
    case Algo::stockham:
      for (unsigned s = 0; s < log_n; ++s) passes.push_back({s, s + 1});
      break;
    case Algo::high_radix: {
      const unsigned chunk = log2_exact(cfg.radix);
      for (unsigned s = 0; s < log_n; s += chunk) passes.push_back({s, std::min(s + chunk, log_n)});
      break;
    }
    case Algo::two_pass: {
      const unsigned l1 = log2_exact(cfg.n1);
      passes.push_back({0, l1});
      passes.push_back({l1, log_n});
      break;
    }
  }
  return passes;
}

Model build_model(const TransformConfig& cfg, u64 n, bool with_companions) {
  const unsigned log_n = log2_exact(n);
  const u64 per_entry = with_companions ? 2 : 1;
  const unsigned ot_from =
      cfg.ot ? (cfg.ot->stages_covered >= log_n ? 0 : log_n - cfg.ot->stages_covered) : log_n;
  const u64 ot_words = cfg.ot ? per_entry * (cfg.ot->base + n / cfg.ot->base) : 0;

  Model model;
  for (unsigned s = 0; s < log_n; ++s) {
    const bool covered = s >= ot_from;
    model.stages.push_back({s + 1, covered ? 0 : per_entry * (u64{1} << s), 0});
  }
  for (const Pass& pass : passes_for(cfg, log_n)) {
    model.words.data_reads += n;
    model.words.data_writes += n;
    model.stages[pass.first].data_words += 2 * n;
    bool uses_ot = false;
    for (unsigned s = pass.first; s < pass.last; ++s) {
      model.words.twiddle_words += model.stages[s].distinct_twiddle_words;
      uses_ot = uses_ot || s >= ot_from;
    }
    if (uses_ot) model.words.twiddle_words += ot_words;
  }
  // Stockham ping-pongs; an odd stage count needs one copy back into the input.
  if (cfg.algo == Algo::stockham && log_n % 2 == 1) {
    model.words.data_reads += n;
    model.words.data_writes += n;
    model.stages.back().data_words += 2 * n;
  }
  return model;
}

TrafficReport report_for(const TransformConfig& config, u64 n, u64 np, bool with_companions) {
  const TransformConfig cfg = resolve(config, n);
  const Model model = build_model(cfg, n, with_companions);

  TrafficReport report;
  report.config = cfg;
  report.n = n;
  report.np = np;
  report.with_companions = with_companions;
  report.data_bytes = (model.words.data_reads + model.words.data_writes) * kWordBytes * np;
  report.twiddle_bytes = model.words.twiddle_words * kWordBytes * np;
  report.table_resident_bytes = model_table_resident(n, np, 2, with_companions, cfg.ot);
  report.per_stage = model.stages;
  if (cfg.ot) {
    TransformConfig plain = cfg;
    plain.ot.reset();
    const Model base = build_model(plain, n, with_companions);
    const double without =
        static_cast<double>(base.words.data_reads + base.words.data_writes + base.words.twiddle_words);
    const double with =
        static_cast<double>(model.words.data_reads + model.words.data_writes + model.words.twiddle_words);
    report.ot_reduction_pct = 100.0 * (without - with) / without;
  }
  return report;
}

const char* algo_name(Algo algo) {
  switch (algo) {
    case Algo::radix2_ct: return "radix2";
    case Algo::stockham: return "stockham";
    case Algo::high_radix: return "highradix";
    case Algo::two_pass: return "twopass";
  }
  return "unknown";
}

}  // namespace

WordCounts model_word_counts(const TransformConfig& config, u64 n, bool with_companions) {
  return build_model(resolve(config, n), n, with_companions).words;
}

TrafficReport model_radix2(u64 n, u64 np, bool with_companions, std::optional<OtConfig> ot) {
  TransformConfig cfg;
  cfg.algo = Algo::radix2_ct;
  cfg.ot = ot;
  return report_for(cfg, n, np, with_companions);
}

TrafficReport model_two_pass(u64 n, u64 n1, u64 n2, u64 np, std::optional<OtConfig> ot,
                             bool with_companions) {
  TransformConfig cfg;
  cfg.algo = Algo::two_pass;
  cfg.n1 = n1;
  cfg.n2 = n2;
  cfg.per_thread = 8;  // does not affect main-memory traffic
  cfg.ot = ot;
  return report_for(cfg, n, np, with_companions);
}

TrafficReport model_traffic(const TransformConfig& config, u64 n, u64 np, bool with_companions) {
  return report_for(config, n, np, with_companions);
}

u64 model_table_resident(u64 n, u64 np, unsigned directions, bool with_companions,
                         std::optional<OtConfig> ot) {
  if (directions == 0) return 0;
  if (!ot) return table_bytes(n, np, directions, with_companions);
  const unsigned log_n = log2_exact(n);
  const unsigned covered = std::min(ot->stages_covered, log_n);
  // Stages [log_n - covered, log_n) own table entries [n >> covered, n).
  const u64 forward_entries = (n >> covered) + ot->base + n / ot->base;
  const u64 per_entry = with_companions ? 2 : 1;
  return (forward_entries * np * per_entry * kWordBytes) +
         table_bytes(n, np, directions - 1, with_companions);
}

TransformStats instrument_counters(const TransformConfig& config, const TwiddleTable& table,
                                   std::span<const u64> input) {
  std::vector<u64> work(input.begin(), input.end());
  TransformStats stats;
  forward(work, table, config, nullptr, &stats);
  return stats;
}

void write_traffic_csv_header(std::ostream& out) {
  out << "config_id,algo,n,np,n1,n2,per_thread,ot_base,ot_stages,data_bytes,twiddle_bytes,"
         "table_resident_bytes,total_bytes,ot_reduction_pct\n";
}

void write_traffic_csv_row(std::ostream& out, const TrafficReport& r) {
  const TransformConfig& c = r.config;
  const bool two_pass = c.algo == Algo::two_pass;
  out << to_string(c) << ',' << algo_name(c.algo) << ',' << r.n << ',' << r.np << ',';
  if (two_pass) {
    out << c.n1 << ',' << c.n2 << ',' << c.per_thread << ',';
  } else {
    out << ",,,";
  }
  if (c.ot) {
    out << c.ot->base << ',' << c.ot->stages_covered << ',';
  } else {
    out << ",,";
  }
  out << r.data_bytes << ',' << r.twiddle_bytes << ',' << r.table_resident_bytes << ','
      << r.total_bytes() << ',';
  if (c.ot) {
    char pct[32];
    std::snprintf(pct, sizeof pct, "%.4f", r.ot_reduction_pct);
    out << pct;
  }
  out << '\n';
}

}  // namespace ntt
