// Copyright 2026 The ntt-engine Authors
// SPDX-License-Identifier: Apache-2.0

// Forward and inverse negacyclic NTTs.
//
// Every forward variant computes A_k = sum_n a_n psi^(n(2k+1)) mod p, i.e. the
// psi-twisted transform with the twist merged into the twiddles. Cooley-Tukey
// style variants leave A in bit-reversed order; Stockham produces natural
// order. All outputs are normalized to [0, p).

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ntt/modarith.hpp"
#include "ntt/twiddle.hpp"

namespace ntt {

enum class Algo { radix2_ct, stockham, high_radix, two_pass };

enum class Order : std::uint8_t { natural = 0, bit_reversed = 1 };

struct OtConfig {
  u64 base = 1024;
  unsigned stages_covered = 2;

  friend bool operator==(const OtConfig&, const OtConfig&) = default;
};

/// One execution strategy. Token grammar (see parse_config):
///   radix2[+ot:BASE:STAGES] | stockham | highradix:R | twopass:N1xN2:PT[+ot:BASE:STAGES]
/// N2 may be written as `*`, meaning n / N1 once the degree is known.
struct TransformConfig {
  Algo algo = Algo::radix2_ct;
  unsigned radix = 0;       // high_radix
  u64 n1 = 0;               // two_pass
  u64 n2 = 0;               // two_pass; 0 = n / n1
  unsigned per_thread = 0;  // two_pass
  std::optional<OtConfig> ot;

  friend bool operator==(const TransformConfig&, const TransformConfig&) = default;
};

/// Throws Errc::config on anything outside the grammar.
TransformConfig parse_config(std::string_view token);

std::string to_string(const TransformConfig& config);

/// Fills in a wildcard N2 and checks every constraint against degree n.
/// Throws Errc::config.
TransformConfig resolve(const TransformConfig& config, u64 n);

Order output_order(const TransformConfig& config) noexcept;

/// Word-touch counters. Data words are counted at main-buffer loads and
/// stores (staging-buffer traffic is free); twiddle words are counted when a
/// table entry or OT schedule is fetched into pass-local storage, two words
/// per ShoupPair.
struct TransformStats {
  u64 data_reads = 0;
  u64 data_writes = 0;
  u64 twiddle_reads = 0;
  u64 passes = 0;

  friend bool operator==(const TransformStats&, const TransformStats&) = default;
};

// ---------------------------------------------------------------------------
// Variants

/// In-place radix-2 Cooley-Tukey with Harvey butterflies; bit-reversed output.
/// With `ot`, the trailing ot->stages_covered stages generate their twiddles
/// on the fly. Throws Errc::size_mismatch if a.size() != table.n().
void ntt_radix2_ct(std::span<u64> a, const TwiddleTable& table, const OTSchedule* ot = nullptr,
                   TransformStats* stats = nullptr);

/// In-place Gentleman-Sande inverse: bit-reversed input, natural-order output,
/// N^-1 scaling folded into the final normalization pass.
void intt_radix2_gs(std::span<u64> a, const TwiddleTable& table);

/// Out-of-place radix-2 Stockham; natural-order result lands in `a`.
/// Throws Errc::aliasing if scratch overlaps a.
void ntt_stockham(std::span<u64> a, std::span<u64> scratch, const TwiddleTable& table,
                  TransformStats* stats = nullptr);

/// Radix-R passes over the whole buffer, R points per work item held in a
/// local block; the last pass uses the residual radix. Bit-reversed output.
void ntt_high_radix(std::span<u64> a, const TwiddleTable& table, unsigned radix,
                    TransformStats* stats = nullptr);

/// Two-pass decomposition N = N1 * N2.
///   phase 1: N2 independent N1-point sub-transforms over stride-N2 columns
///   phase 2: N1 contiguous N2-point sub-transforms
/// Each sub-transform runs in a staging buffer as a sequence of
/// `per_thread`-point radix passes. Bit-reversed output, identical to
/// ntt_radix2_ct.
void ntt_two_pass(std::span<u64> a, const TwiddleTable& table, u64 n1, u64 n2,
                  unsigned per_thread, const OTSchedule* ot = nullptr,
                  TransformStats* stats = nullptr);

/// Dispatches on config (resolved against table.n()). If config.ot is set and
/// `ot` is null or built for a different base/stage count, a schedule is
/// built locally.
void forward(std::span<u64> a, const TwiddleTable& table, const TransformConfig& config,
             const OTSchedule* ot = nullptr, TransformStats* stats = nullptr);

/// Inverse of forward() for a buffer in the given order.
void inverse(std::span<u64> a, const TwiddleTable& table, Order input_order);

// ---------------------------------------------------------------------------
// Helpers

/// out[i] = in[bitrev(i)], in place. Throws Errc::length unless size is a power of two.
void bit_reverse_permute(std::span<u64> a);

/// out[i] = a[i] * b[i] mod p. `out` may alias `a`. Throws Errc::length on size mismatch.
void pointwise_mul(std::span<const u64> a, std::span<const u64> b, std::span<u64> out, u64 p);

/// Coefficients of a(X) * b(X) mod (X^n + 1, p).
std::vector<u64> negacyclic_polymul(std::span<const u64> a, std::span<const u64> b,
                                    const TwiddleTable& table, const TransformConfig& config);

std::vector<u64> negacyclic_polymul(std::span<const u64> a, std::span<const u64> b,
                                    const Prime& prime, const TransformConfig& config);

}  // namespace ntt
