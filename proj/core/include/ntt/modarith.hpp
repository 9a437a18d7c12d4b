// Copyright 2026 The ntt-engine Authors
// SPDX-License-Identifier: Apache-2.0

// 64-bit modular arithmetic for NTT-friendly primes.
//
// All moduli satisfy p < 2^62 so that values in the lazy domain [0, 4p) fit
// in a machine word. The hot-path primitives (Shoup multiplication and the
// two butterflies) are inline; parameter generation lives in modarith.cpp.

#pragma once

#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

namespace ntt {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

/// An NTT-friendly prime p = k * 2n + 1 with its primitive 2n-th root of unity.
struct Prime {
  u64 p = 0;
  u64 k = 0;
  u64 n = 0;
  u64 psi = 0;
  u64 psi_inv = 0;
  u64 n_inv = 0;

  friend bool operator==(const Prime&, const Prime&) = default;
};

/// A fixed multiplicand w together with its Shoup companion floor(w * 2^64 / p).
struct ShoupPair {
  u64 w = 0;
  u64 w_bar = 0;

  friend bool operator==(const ShoupPair&, const ShoupPair&) = default;
};

inline constexpr u64 kMaxModulus = u64{1} << 62;

// ---------------------------------------------------------------------------
// Scalar helpers

constexpr bool is_power_of_two(u64 x) noexcept { return x != 0 && (x & (x - 1)) == 0; }

constexpr unsigned log2_exact(u64 x) noexcept {
  unsigned r = 0;
  while (x > 1) {
    x >>= 1;
    ++r;
  }
  return r;
}

/// (a * b) mod p through a 128-bit widening product. Throws Errc::domain if p < 2.
u64 mulmod_native(u64 a, u64 b, u64 p);

u64 powmod(u64 base, u64 exp, u64 p);

/// Inverse of a modulo prime p (Fermat). Throws Errc::domain if a == 0 mod p.
u64 invmod(u64 a, u64 p);

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(u64 n) noexcept;

// ---------------------------------------------------------------------------
// Shoup multiplication

/// Builds (w, floor(w * 2^64 / p)). Throws Errc::domain if w >= p.
ShoupPair shoup_precompute(u64 w, u64 p);

/// b * w mod p in [0, 2p) for any b < 2^64 (Harvey's bound, p < 2^63).
inline u64 shoup_mulmod_lazy(u64 b, const ShoupPair& pair, u64 p) noexcept {
  const u64 q = static_cast<u64>((static_cast<u128>(b) * pair.w_bar) >> 64);
  return b * pair.w - q * p;
}

/// b * w mod p in [0, p). Requires p < 2^62 and b < 4p.
inline u64 shoup_mulmod(u64 b, const ShoupPair& pair, u64 p) noexcept {
  assert(p < kMaxModulus && b < 4 * p && pair.w < p);
  const u64 r = shoup_mulmod_lazy(b, pair, p);
  return r >= p ? r - p : r;
}

// ---------------------------------------------------------------------------
// Butterflies

/// Harvey's lazy Cooley-Tukey butterfly.
///   in:  a, b in [0, 4p)
///   out: a' = a + b*w, b' = a - b*w (mod p), both in [0, 4p)
inline void butterfly_ct(u64& a, u64& b, const ShoupPair& w, u64 p) noexcept {
  const u64 two_p = 2 * p;
  if (a >= two_p) a -= two_p;
  const u64 t = shoup_mulmod_lazy(b, w, p);
  b = a - t + two_p;
  a += t;
}

/// Gentleman-Sande butterfly for the inverse transform.
///   in:  a, b in [0, 2p)
///   out: a' = a + b, b' = (a - b) * w_inv (mod p), both in [0, 2p)
inline void butterfly_gs(u64& a, u64& b, const ShoupPair& w_inv, u64 p) noexcept {
  const u64 two_p = 2 * p;
  const u64 diff = a - b + two_p;
  a += b;
  if (a >= two_p) a -= two_p;
  b = shoup_mulmod_lazy(diff, w_inv, p);
}

/// Reduces every entry from [0, 4p) into [0, p).
inline void normalize(std::span<u64> values, u64 p) noexcept {
  const u64 two_p = 2 * p;
  for (u64& v : values) {
    if (v >= two_p) v -= two_p;
    if (v >= p) v -= p;
  }
}

// ---------------------------------------------------------------------------
// Parameter generation

/// Smallest primitive 2n-th root of unity modulo the prime p.
///
/// Requires p prime and p = 1 (mod 2n). A generator candidate g yields
/// x = g^((p-1)/2n); when x^n = -1 the primitive 2n-th roots are exactly the
/// odd powers of x, and the smallest of those is returned.
u64 find_primitive_root_2n(u64 p, u64 n);

/// Builds a fully populated Prime for modulus p and ring degree n, picking the
/// smallest primitive 2n-th root. Throws Errc::domain if p is not a valid
/// NTT prime for n.
Prime make_prime(u64 p, u64 n);

/// As above but with an externally supplied root (e.g. from a parameter file),
/// which is validated.
Prime make_prime(u64 p, u64 n, u64 psi);

/// `count` distinct primes p = 1 (mod 2n) in [lo, hi), scanning downward from
/// the largest candidate below hi in steps of 2n. Descending order.
std::vector<Prime> find_ntt_primes_in_range(u64 n, std::size_t count, u64 lo, u64 hi);

/// `count` primes in [2^bit_lo, 2^bit_hi), bit_hi <= 62.
std::vector<Prime> find_ntt_primes(u64 n, std::size_t count, unsigned bit_lo = 59,
                                   unsigned bit_hi = 60);

}  // namespace ntt
