// Copyright 2026 The ntt-engine Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "ntt/modarith.hpp"

namespace ntt {

/// Width-`bits` bit reversal of i. Throws Errc::domain if i >= 2^bits.
u64 bit_reverse(u64 i, unsigned bits);

/// Precomputed twiddles for one prime.
///
/// forward[i] = psi^bitrev(i), the table consumed by the Cooley-Tukey forward
/// transform at index m + j.
///
/// inverse is laid out in the order the Gentleman-Sande inverse consumes it:
/// stage by stage starting from the widest (m = n/2 down to 1), entry
/// psi^-bitrev(m + j) at slot n - 2m + j. The last slot holds 1 and mirrors
/// forward[0]; see inverse_slot().
struct TwiddleTable {
  Prime prime;
  std::vector<ShoupPair> forward;
  std::vector<ShoupPair> inverse;
  ShoupPair n_inv_pair;

  u64 n() const noexcept { return prime.n; }
  unsigned log_n() const noexcept { return log2_exact(prime.n); }
};

/// Slot in TwiddleTable::inverse holding the inverse of forward[index].
std::size_t inverse_slot(std::size_t index, std::size_t n);

TwiddleTable build_table(const Prime& prime);

/// Two-level factorization of psi^e used for on-the-fly twiddling:
/// psi^e = coarse[e / base] * fine[e % base].
struct OTSchedule {
  u64 base = 0;
  unsigned stages_covered = 0;
  std::vector<ShoupPair> coarse;  // psi^(q * base), q < n / base
  std::vector<ShoupPair> fine;    // psi^r, r < base

  std::size_t entry_count() const noexcept { return coarse.size() + fine.size(); }
};

/// Throws Errc::domain unless base is a power of two dividing n and
/// stages_covered is 1 or 2.
OTSchedule build_ot_schedule(const Prime& prime, u64 base, unsigned stages_covered);

/// 1024 for n >= 2^11, otherwise sqrt(n) rounded up to a power of two.
u64 default_ot_base(u64 n) noexcept;

/// x * psi^e in [0, 2p): fine factor first, then coarse.
inline u64 ot_apply(u64 x, u64 e, const OTSchedule& schedule, u64 p) noexcept {
  const u64 q = e / schedule.base;
  const u64 r = e % schedule.base;
  return shoup_mulmod_lazy(shoup_mulmod_lazy(x, schedule.fine[r], p), schedule.coarse[q], p);
}

/// Bytes of precomputed twiddle storage: n * np * directions * (2 with companions) words.
u64 table_bytes(u64 n, u64 np, unsigned directions, bool with_companions) noexcept;

// Debug dump: 32-byte header ("NTTT", u32 version, u64 n, u64 p, 8 reserved)
// then forward w | forward w_bar | inverse w | inverse w_bar, all little-endian.
inline constexpr std::uint32_t kTableDumpVersion = 1;

void write_table_dump(std::ostream& out, const TwiddleTable& table);

/// Reads a dump back. The prime is re-derived from (p, n, forward[n/2]) where
/// available; throws Errc::malformed on a bad header or truncated payload.
TwiddleTable read_table_dump(std::istream& in);

}  // namespace ntt
