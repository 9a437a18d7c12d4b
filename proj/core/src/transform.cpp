// Copyright 2026 The ntt-engine Authors
// SPDX-License-Identifier: Apache-2.0

#include "ntt/transform.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <string>
#include <utility>

#include "ntt/error.hpp"

namespace ntt {

namespace {

constexpr unsigned kMaxRadixLog = 7;
constexpr std::size_t kMaxRadix = std::size_t{1} << kMaxRadixLog;

/// A twiddle multiplier: one table pair, or two chained OT pairs.
struct Factor {
  ShoupPair first;
  ShoupPair second;
  bool chained = false;

  u64 mul_lazy(u64 x, u64 p) const noexcept {
    const u64 y = shoup_mulmod_lazy(x, first, p);
    return chained ? shoup_mulmod_lazy(y, second, p) : y;
  }
};

inline void butterfly(u64& a, u64& b, const Factor& w, u64 p) noexcept {
  const u64 two_p = 2 * p;
  if (a >= two_p) a -= two_p;
  const u64 t = w.mul_lazy(b, p);
  b = a - t + two_p;
  a += t;
}

Factor table_factor(const TwiddleTable& table, u64 index, TransformStats* stats) {
  if (stats) stats->twiddle_reads += 2;
  return {table.forward[index], {}, false};
}

Factor ot_factor(const OTSchedule& ot, u64 index, unsigned log_n) {
  const u64 e = bit_reverse(index, log_n);
  return {ot.fine[e % ot.base], ot.coarse[e / ot.base], true};
}

void count_ot_preload(const OTSchedule& ot, TransformStats* stats) {
  if (stats) stats->twiddle_reads += 2 * ot.entry_count();
}

void check_size(std::span<const u64> a, const TwiddleTable& table) {
  if (a.size() != table.n()) {
    throw Error(Errc::size_mismatch, "buffer length " + std::to_string(a.size()) +
                                         " does not match table degree " +
                                         std::to_string(table.n()));
  }
}

/// First stage index generated on the fly, or log_n when OT is off.
unsigned first_ot_stage(const OTSchedule* ot, unsigned log_n) {
  if (!ot) return log_n;
  return ot->stages_covered >= log_n ? 0 : log_n - ot->stages_covered;
}

/// Runs local stages [u0, u0 + r) of a Cooley-Tukey transform over `buf`,
/// 2^r points per work item. get(u, j) supplies the twiddle of block j at
/// local stage u; it is called once per (u, j) in the pass. When `stats` is
/// set, loads and stores of `buf` are counted as data traffic.
template <typename Provider>
void ct_pass(std::span<u64> buf, unsigned u0, unsigned r, u64 p, Provider&& get,
             TransformStats* stats) {
  const std::size_t m = buf.size();
  const std::size_t radix = std::size_t{1} << r;
  const std::size_t t_last = m >> (u0 + r);
  const std::size_t block_span = m >> u0;
  std::array<Factor, kMaxRadix> factors;
  std::array<u64, kMaxRadix> x;

  for (std::size_t j = 0; j < (std::size_t{1} << u0); ++j) {
    for (unsigned uu = 0; uu < r; ++uu) {
      const std::size_t width = std::size_t{1} << uu;
      for (std::size_t g = 0; g < width; ++g) {
        factors[width - 1 + g] = get(u0 + uu, (j << uu) + g);
      }
    }
    const std::size_t base0 = j * block_span;
    for (std::size_t o = 0; o < t_last; ++o) {
      const std::size_t base = base0 + o;
      for (std::size_t i = 0; i < radix; ++i) x[i] = buf[base + i * t_last];
      for (unsigned uu = 0; uu < r; ++uu) {
        const std::size_t width = std::size_t{1} << uu;
        const std::size_t half = radix >> (uu + 1);
        for (std::size_t g = 0; g < width; ++g) {
          const Factor& w = factors[width - 1 + g];
          const std::size_t start = g * 2 * half;
          for (std::size_t k = start; k < start + half; ++k) butterfly(x[k], x[k + half], w, p);
        }
      }
      for (std::size_t i = 0; i < radix; ++i) buf[base + i * t_last] = x[i];
    }
  }
  if (stats) {
    stats->data_reads += m;
    stats->data_writes += m;
    stats->passes += 1;
  }
}

/// Local stages [0, log2 buf.size()) in chunks of per_thread points, the last
/// chunk taking the residual radix.
template <typename Provider>
void staged_subtransform(std::span<u64> buf, unsigned chunk_log, u64 p, Provider&& get) {
  const unsigned stages = log2_exact(buf.size());
  for (unsigned u0 = 0; u0 < stages; u0 += chunk_log) {
    ct_pass(buf, u0, std::min(chunk_log, stages - u0), p, get, nullptr);
  }
}

bool overlaps(std::span<const u64> a, std::span<const u64> b) {
  const u64* a0 = a.data();
  const u64* b0 = b.data();
  return a0 < b0 + b.size() && b0 < a0 + a.size();
}

unsigned parse_unsigned(std::string_view s, std::string_view what) {
  unsigned value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw Error(Errc::config, "config: bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

TransformConfig parse_config(std::string_view token) {
  TransformConfig config;
  std::string_view head = token;
  if (const auto plus = token.find('+'); plus != std::string_view::npos) {
    head = token.substr(0, plus);
    const auto ot_parts = split(token.substr(plus + 1), ':');
    if (ot_parts.size() != 3 || ot_parts[0] != "ot") {
      throw Error(Errc::config, "config: expected +ot:BASE:STAGES in '" + std::string(token) + "'");
    }
    config.ot = OtConfig{parse_unsigned(ot_parts[1], "OT base"),
                         parse_unsigned(ot_parts[2], "OT stage count")};
  }

  const auto parts = split(head, ':');
  if (parts[0] == "radix2" && parts.size() == 1) {
    config.algo = Algo::radix2_ct;
  } else if (parts[0] == "stockham" && parts.size() == 1) {
    config.algo = Algo::stockham;
  } else if (parts[0] == "highradix" && parts.size() == 2) {
    config.algo = Algo::high_radix;
    config.radix = parse_unsigned(parts[1], "radix");
  } else if (parts[0] == "twopass" && parts.size() == 3) {
    config.algo = Algo::two_pass;
    const auto dims = split(parts[1], 'x');
    if (dims.size() != 2) throw Error(Errc::config, "config: expected N1xN2 in '" + std::string(token) + "'");
    config.n1 = parse_unsigned(dims[0], "N1");
    config.n2 = dims[1] == "*" ? 0 : parse_unsigned(dims[1], "N2");
    if (dims[1] != "*" && config.n2 == 0) throw Error(Errc::config, "config: N2 must be positive");
    config.per_thread = parse_unsigned(parts[2], "per-thread size");
  } else {
    throw Error(Errc::config, "config: unknown algorithm token '" + std::string(token) + "'");
  }

  if (config.ot && config.algo != Algo::radix2_ct && config.algo != Algo::two_pass) {
    throw Error(Errc::config, "config: OT is only valid with radix2 or twopass");
  }
  return config;
}

std::string to_string(const TransformConfig& config) {
  std::string s;
  switch (config.algo) {
    case Algo::radix2_ct: s = "radix2"; break;
    case Algo::stockham: s = "stockham"; break;
    case Algo::high_radix: s = "highradix:" + std::to_string(config.radix); break;
    case Algo::two_pass:
      s = "twopass:" + std::to_string(config.n1) + "x" +
          (config.n2 == 0 ? std::string("*") : std::to_string(config.n2)) + ":" +
          std::to_string(config.per_thread);
      break;
  }
  if (config.ot) {
    s += "+ot:" + std::to_string(config.ot->base) + ":" + std::to_string(config.ot->stages_covered);
  }
  return s;
}

TransformConfig resolve(const TransformConfig& config, u64 n) {
  auto fail = [&](const std::string& why) {
    throw Error(Errc::config, "config " + to_string(config) + " invalid for n=" + std::to_string(n) +
                                  ": " + why);
  };
  if (!is_power_of_two(n)) fail("degree is not a power of two");
  TransformConfig out = config;
  switch (config.algo) {
    case Algo::radix2_ct:
    case Algo::stockham:
      break;
    case Algo::high_radix:
      if (!is_power_of_two(config.radix) || config.radix < 4 || config.radix > kMaxRadix) {
        fail("radix must be one of 4, 8, ..., 128");
      }
      if (config.radix > n) fail("radix exceeds the transform size");
      break;
    case Algo::two_pass: {
      if (!is_power_of_two(config.n1)) fail("N1 must be a power of two");
      if (config.n2 == 0) {
        if (n % config.n1 != 0) fail("N1 does not divide n");
        out.n2 = n / config.n1;
      }
      if (!is_power_of_two(out.n2) || config.n1 * out.n2 != n) fail("N1 * N2 must equal n");
      const u64 min_side = n >= (u64{1} << 12) ? 64 : 2;
      if (config.n1 < min_side || out.n2 < min_side) {
        fail("N1 and N2 must both be at least " + std::to_string(min_side));
      }
      if (config.per_thread != 2 && config.per_thread != 4 && config.per_thread != 8) {
        fail("per-thread size must be 2, 4 or 8");
      }
      break;
    }
  }
  if (config.ot) {
    const OtConfig& ot = *config.ot;
    if (!is_power_of_two(ot.base) || ot.base > n) fail("OT base must be a power of two dividing n");
    if (ot.stages_covered < 1 || ot.stages_covered > 2) fail("OT must cover 1 or 2 stages");
    if (ot.stages_covered > log2_exact(n)) fail("OT covers more stages than the transform has");
  }
  return out;
}

Order output_order(const TransformConfig& config) noexcept {
  return config.algo == Algo::stockham ? Order::natural : Order::bit_reversed;
}

// ---------------------------------------------------------------------------
// Variants

void ntt_radix2_ct(std::span<u64> a, const TwiddleTable& table, const OTSchedule* ot,
                   TransformStats* stats) {
  check_size(a, table);
  const u64 n = a.size();
  const u64 p = table.prime.p;
  const unsigned log_n = table.log_n();
  const unsigned ot_from = first_ot_stage(ot, log_n);

  u64 t = n / 2;
  unsigned stage = 0;
  for (u64 m = 1; m < n; m *= 2, t /= 2, ++stage) {
    const bool on_the_fly = stage >= ot_from;
    if (on_the_fly) count_ot_preload(*ot, stats);
    for (u64 j = 0; j < m; ++j) {
      const Factor w = on_the_fly ? ot_factor(*ot, m + j, log_n) : table_factor(table, m + j, stats);
      const u64 start = j * 2 * t;
      for (u64 k = start; k < start + t; ++k) butterfly(a[k], a[k + t], w, p);
    }
    if (stats) {
      stats->data_reads += n;
      stats->data_writes += n;
      stats->passes += 1;
    }
  }
  normalize(a, p);
}

void intt_radix2_gs(std::span<u64> a, const TwiddleTable& table) {
  check_size(a, table);
  const u64 n = a.size();
  const u64 p = table.prime.p;
  u64 t = 1;
  for (u64 m = n / 2; m >= 1; m /= 2, t *= 2) {
    const ShoupPair* w = table.inverse.data() + (n - 2 * m);
    for (u64 j = 0; j < m; ++j) {
      const u64 start = j * 2 * t;
      for (u64 k = start; k < start + t; ++k) butterfly_gs(a[k], a[k + t], w[j], p);
    }
  }
  for (u64& v : a) v = shoup_mulmod(v, table.n_inv_pair, p);
}

void ntt_stockham(std::span<u64> a, std::span<u64> scratch, const TwiddleTable& table,
                  TransformStats* stats) {
  check_size(a, table);
  if (scratch.size() != a.size()) throw Error(Errc::size_mismatch, "stockham: scratch size differs");
  if (!a.empty() && overlaps(a, scratch)) throw Error(Errc::aliasing, "stockham: scratch overlaps input");

  const u64 n = a.size();
  const u64 p = table.prime.p;
  const u64 half = n / 2;
  std::span<u64> src = a;
  std::span<u64> dst = scratch;

  // Stage s (m = 2^s): block B of the Cooley-Tukey recursion lives at
  // physical column bitrev_s(B), offset o at row o. Reading columns j and
  // rows o, o + n/2 and writing interleaved keeps the final layout natural.
  unsigned stage = 0;
  for (u64 m = 1; m < n; m *= 2, ++stage) {
    for (u64 j = 0; j < m; ++j) {
      const Factor w = table_factor(table, m + bit_reverse(j, stage), stats);
      for (u64 o = 0; o < half / m; ++o) {
        u64 x = src[o * m + j];
        u64 y = src[o * m + j + half];
        butterfly(x, y, w, p);
        dst[2 * m * o + j] = x;
        dst[2 * m * o + j + m] = y;
      }
    }
    if (stats) {
      stats->data_reads += n;
      stats->data_writes += n;
      stats->passes += 1;
    }
    std::swap(src, dst);
  }
  if (src.data() != a.data()) {
    std::copy(src.begin(), src.end(), a.begin());
    if (stats) {
      stats->data_reads += n;
      stats->data_writes += n;
      stats->passes += 1;
    }
  }
  normalize(a, p);
}

void ntt_high_radix(std::span<u64> a, const TwiddleTable& table, unsigned radix,
                    TransformStats* stats) {
  check_size(a, table);
  TransformConfig config;
  config.algo = Algo::high_radix;
  config.radix = radix;
  resolve(config, a.size());

  const u64 p = table.prime.p;
  const unsigned log_n = table.log_n();
  const unsigned chunk = log2_exact(radix);
  auto get = [&](unsigned s, u64 j) { return table_factor(table, (u64{1} << s) + j, stats); };
  for (unsigned s0 = 0; s0 < log_n; s0 += chunk) {
    ct_pass(a, s0, std::min(chunk, log_n - s0), p, get, stats);
  }
  normalize(a, p);
}

void ntt_two_pass(std::span<u64> a, const TwiddleTable& table, u64 n1, u64 n2,
                  unsigned per_thread, const OTSchedule* ot, TransformStats* stats) {
  check_size(a, table);
  TransformConfig config;
  config.algo = Algo::two_pass;
  config.n1 = n1;
  config.n2 = n2;
  config.per_thread = per_thread;
  resolve(config, a.size());

  const u64 p = table.prime.p;
  const unsigned log_n = table.log_n();
  const unsigned log_n1 = log2_exact(n1);
  const unsigned log_n2 = log2_exact(n2);
  const unsigned chunk = log2_exact(per_thread);
  const unsigned ot_from = first_ot_stage(ot, log_n);

  std::vector<u64> staging(std::max(n1, n2));
  // Preloaded twiddles for one sub-transform, indexed 2^u - 1 + j.
  std::vector<Factor> preload(std::max(n1, n2));

  // Phase 1: every column shares global stages [0, log_n1) and the same
  // twiddles, so they are preloaded once for the pass.
  {
    if (ot_from < log_n1) count_ot_preload(*ot, stats);
    for (unsigned u = 0; u < log_n1; ++u) {
      const u64 width = u64{1} << u;
      for (u64 j = 0; j < width; ++j) {
        preload[width - 1 + j] = u >= ot_from ? ot_factor(*ot, width + j, log_n)
                                              : table_factor(table, width + j, stats);
      }
    }
    auto get = [&](unsigned u, u64 j) -> const Factor& { return preload[(u64{1} << u) - 1 + j]; };
    std::span<u64> column(staging.data(), n1);
    for (u64 c = 0; c < n2; ++c) {
      for (u64 i = 0; i < n1; ++i) column[i] = a[c + i * n2];
      staged_subtransform(column, chunk, p, get);
      for (u64 i = 0; i < n1; ++i) a[c + i * n2] = column[i];
    }
    if (stats) {
      stats->data_reads += a.size();
      stats->data_writes += a.size();
      stats->passes += 1;
    }
  }

  // Phase 2: block b owns global stages [log_n1, log_n) restricted to its
  // contiguous span, i.e. global block index (b << u) + j at local stage u.
  {
    if (ot_from < log_n) count_ot_preload(*ot, stats);
    auto get = [&](unsigned u, u64 j) -> const Factor& { return preload[(u64{1} << u) - 1 + j]; };
    for (u64 b = 0; b < n1; ++b) {
      for (unsigned u = 0; u < log_n2; ++u) {
        const unsigned s = log_n1 + u;
        const u64 width = u64{1} << u;
        for (u64 j = 0; j < width; ++j) {
          const u64 index = (u64{1} << s) + (b << u) + j;
          preload[width - 1 + j] =
              s >= ot_from ? ot_factor(*ot, index, log_n) : table_factor(table, index, stats);
        }
      }
      std::span<u64> block = a.subspan(b * n2, n2);
      std::copy(block.begin(), block.end(), staging.begin());
      staged_subtransform(std::span<u64>(staging.data(), n2), chunk, p, get);
      std::copy(staging.begin(), staging.begin() + n2, block.begin());
    }
    if (stats) {
      stats->data_reads += a.size();
      stats->data_writes += a.size();
      stats->passes += 1;
    }
  }
  normalize(a, p);
}

void forward(std::span<u64> a, const TwiddleTable& table, const TransformConfig& config,
             const OTSchedule* ot, TransformStats* stats) {
  const TransformConfig cfg = resolve(config, table.n());
  std::optional<OTSchedule> local;
  const OTSchedule* schedule = nullptr;
  if (cfg.ot) {
    if (ot && ot->base == cfg.ot->base && ot->stages_covered == cfg.ot->stages_covered &&
        ot->coarse.size() * ot->base == table.n()) {
      schedule = ot;
    } else {
      local = build_ot_schedule(table.prime, cfg.ot->base, cfg.ot->stages_covered);
      schedule = &*local;
    }
  }
  switch (cfg.algo) {
    case Algo::radix2_ct:
      ntt_radix2_ct(a, table, schedule, stats);
      break;
    case Algo::stockham: {
      std::vector<u64> scratch(a.size());
      ntt_stockham(a, scratch, table, stats);
      break;
    }
    case Algo::high_radix:
      ntt_high_radix(a, table, cfg.radix, stats);
      break;
    case Algo::two_pass:
      ntt_two_pass(a, table, cfg.n1, cfg.n2, cfg.per_thread, schedule, stats);
      break;
  }
}

void inverse(std::span<u64> a, const TwiddleTable& table, Order input_order) {
  check_size(a, table);
  if (input_order == Order::natural) bit_reverse_permute(a);
  intt_radix2_gs(a, table);
}

// ---------------------------------------------------------------------------
// Helpers

void bit_reverse_permute(std::span<u64> a) {
  const u64 n = a.size();
  if (!is_power_of_two(n)) throw Error(Errc::length, "bit_reverse_permute: length is not a power of two");
  const unsigned bits = log2_exact(n);
  for (u64 i = 0; i < n; ++i) {
    const u64 r = bit_reverse(i, bits);
    if (i < r) std::swap(a[i], a[r]);
  }
}

void pointwise_mul(std::span<const u64> a, std::span<const u64> b, std::span<u64> out, u64 p) {
  if (a.size() != b.size() || a.size() != out.size()) {
    throw Error(Errc::length, "pointwise_mul: length mismatch");
  }
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mulmod_native(a[i], b[i], p);
}

std::vector<u64> negacyclic_polymul(std::span<const u64> a, std::span<const u64> b,
                                    const TwiddleTable& table, const TransformConfig& config) {
  if (a.size() != b.size()) throw Error(Errc::length, "polymul: operand lengths differ");
  std::vector<u64> fa(a.begin(), a.end());
  std::vector<u64> fb(b.begin(), b.end());
  forward(fa, table, config);
  forward(fb, table, config);
  pointwise_mul(fa, fb, fa, table.prime.p);
  inverse(fa, table, output_order(config));
  return fa;
}

std::vector<u64> negacyclic_polymul(std::span<const u64> a, std::span<const u64> b,
                                    const Prime& prime, const TransformConfig& config) {
  return negacyclic_polymul(a, b, build_table(prime), config);
}

}  // namespace ntt
