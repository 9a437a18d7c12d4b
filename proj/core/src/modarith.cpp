// Copyright 2026 The ntt-engine Authors
// SPDX-License-Identifier: Apache-2.0

#include "ntt/modarith.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "ntt/error.hpp"

namespace ntt {

u64 mulmod_native(u64 a, u64 b, u64 p) {
  if (p < 2) throw Error(Errc::domain, "mulmod_native: modulus must be >= 2");
  return static_cast<u64>((static_cast<u128>(a) * b) % p);
}

u64 powmod(u64 base, u64 exp, u64 p) {
  u64 result = 1 % p;
  base %= p;
  while (exp != 0) {
    if (exp & 1) result = mulmod_native(result, base, p);
    base = mulmod_native(base, base, p);
    exp >>= 1;
  }
  return result;
}

u64 invmod(u64 a, u64 p) {
  if (a % p == 0) throw Error(Errc::domain, "invmod: zero has no inverse");
  return powmod(a, p - 2, p);
}

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 w : kWitnesses) {
    if (n % w == 0) return n == w;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto mul = [n](u64 a, u64 b) { return static_cast<u64>((static_cast<u128>(a) * b) % n); };
  for (u64 a : kWitnesses) {
    u64 x = 1;
    u64 base = a;
    for (u64 e = d; e != 0; e >>= 1) {
      if (e & 1) x = mul(x, base);
      base = mul(base, base);
    }
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

ShoupPair shoup_precompute(u64 w, u64 p) {
  if (w >= p) throw Error(Errc::domain, "shoup_precompute: w must be < p");
  return {w, static_cast<u64>((static_cast<u128>(w) << 64) / p)};
}

u64 find_primitive_root_2n(u64 p, u64 n) {
  if (n == 0 || !is_power_of_two(n)) throw Error(Errc::domain, "ring degree must be a power of two");
  const u64 order = 2 * n;
  if (p < 3 || (p - 1) % order != 0) {
    throw Error(Errc::domain, "modulus is not 1 mod 2n");
  }
  const u64 cofactor = (p - 1) / order;
  for (u64 g = 2; g < p; ++g) {
    const u64 x = powmod(g, cofactor, p);
    if (powmod(x, n, p) != p - 1) continue;
    // Odd powers x^1, x^3, ..., x^(2n-1) are all primitive 2n-th roots.
    const u64 step = mulmod_native(x, x, p);
    u64 best = x;
    u64 cur = x;
    for (u64 j = 1; j < n; ++j) {
      cur = mulmod_native(cur, step, p);
      best = std::min(best, cur);
    }
    return best;
  }
  throw Error(Errc::internal, "no primitive 2n-th root found; modulus is not prime");
}

namespace {

void check_ntt_modulus(u64 p, u64 n) {
  if (n == 0 || !is_power_of_two(n)) throw Error(Errc::domain, "ring degree must be a power of two");
  if (p >= kMaxModulus) throw Error(Errc::domain, "modulus must be < 2^62");
  if (!is_prime(p)) throw Error(Errc::domain, "modulus " + std::to_string(p) + " is not prime");
  if ((p - 1) % (2 * n) != 0) {
    throw Error(Errc::domain, "modulus " + std::to_string(p) + " is not 1 mod 2n");
  }
}

Prime complete_prime(u64 p, u64 n, u64 psi) {
  Prime prime;
  prime.p = p;
  prime.n = n;
  prime.k = (p - 1) / (2 * n);
  prime.psi = psi;
  prime.psi_inv = invmod(psi, p);
  prime.n_inv = invmod(n % p, p);
  return prime;
}

}  // namespace

Prime make_prime(u64 p, u64 n) {
  check_ntt_modulus(p, n);
  return complete_prime(p, n, find_primitive_root_2n(p, n));
}

Prime make_prime(u64 p, u64 n, u64 psi) {
  check_ntt_modulus(p, n);
  if (psi == 0 || psi >= p || powmod(psi, n, p) != p - 1) {
    throw Error(Errc::domain, "psi is not a primitive 2n-th root of unity mod " + std::to_string(p));
  }
  return complete_prime(p, n, psi);
}

std::vector<Prime> find_ntt_primes_in_range(u64 n, std::size_t count, u64 lo, u64 hi) {
  if (n == 0 || !is_power_of_two(n) || n > (u64{1} << 17)) {
    throw Error(Errc::domain, "ring degree must be a power of two <= 2^17");
  }
  if (count == 0) throw Error(Errc::domain, "prime count must be >= 1");
  if (hi > kMaxModulus || lo >= hi) throw Error(Errc::domain, "invalid prime range");

  const u64 step = 2 * n;
  std::vector<Prime> primes;
  primes.reserve(count);
  if (hi >= 2) {
    // Largest candidate c < hi with c = 1 (mod 2n).
    u64 c = ((hi - 2) / step) * step + 1;
    while (c >= lo && c > 1) {
      if (is_prime(c)) {
        primes.push_back(make_prime(c, n));
        if (primes.size() == count) return primes;
      }
      if (c < step) break;
      c -= step;
    }
  }
  throw Error(Errc::range_exhausted, "only " + std::to_string(primes.size()) + " of " +
                                         std::to_string(count) + " primes found in range");
}

std::vector<Prime> find_ntt_primes(u64 n, std::size_t count, unsigned bit_lo, unsigned bit_hi) {
  if (bit_hi > 62 || bit_lo >= bit_hi) throw Error(Errc::domain, "invalid bit range");
  return find_ntt_primes_in_range(n, count, u64{1} << bit_lo, u64{1} << bit_hi);
}

}  // namespace ntt
