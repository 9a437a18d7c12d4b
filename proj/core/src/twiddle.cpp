// Copyright 2026 The ntt-engine Authors
// SPDX-License-Identifier: Apache-2.0

#include "ntt/twiddle.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "le_io.hpp"
#include "ntt/error.hpp"

namespace ntt {

u64 bit_reverse(u64 i, unsigned bits) {
  if (bits < 64 && (i >> bits) != 0) {
    throw Error(Errc::domain, "bit_reverse: index " + std::to_string(i) + " exceeds width");
  }
  u64 r = 0;
  for (unsigned b = 0; b < bits; ++b) {
    r = (r << 1) | (i & 1);
    i >>= 1;
  }
  return r;
}

std::size_t inverse_slot(std::size_t index, std::size_t n) {
  if (index >= n) throw Error(Errc::domain, "inverse_slot: index out of range");
  if (index == 0) return n - 1;
  std::size_t m = 1;
  while (2 * m <= index) m *= 2;
  return n - 2 * m + (index - m);
}

TwiddleTable build_table(const Prime& prime) {
  const u64 n = prime.n;
  const u64 p = prime.p;
  const unsigned bits = log2_exact(n);

  // Powers psi^e and psi^-e for e in [0, n), then scatter in bit-reversed order.
  std::vector<u64> pow_fwd(n);
  std::vector<u64> pow_inv(n);
  pow_fwd[0] = 1;
  pow_inv[0] = 1;
  for (u64 e = 1; e < n; ++e) {
    pow_fwd[e] = mulmod_native(pow_fwd[e - 1], prime.psi, p);
    pow_inv[e] = mulmod_native(pow_inv[e - 1], prime.psi_inv, p);
  }

  TwiddleTable table;
  table.prime = prime;
  table.forward.resize(n);
  table.inverse.resize(n);
  for (u64 i = 0; i < n; ++i) {
    const u64 e = bit_reverse(i, bits);
    table.forward[i] = shoup_precompute(pow_fwd[e], p);
    table.inverse[inverse_slot(i, n)] = shoup_precompute(pow_inv[e], p);
  }
  table.n_inv_pair = shoup_precompute(prime.n_inv, p);
  return table;
}

OTSchedule build_ot_schedule(const Prime& prime, u64 base, unsigned stages_covered) {
  const u64 n = prime.n;
  if (!is_power_of_two(base) || base > n) {
    throw Error(Errc::domain, "OT base must be a power of two dividing n");
  }
  if (stages_covered < 1 || stages_covered > 2) {
    throw Error(Errc::domain, "OT must cover 1 or 2 trailing stages");
  }
  const u64 p = prime.p;
  OTSchedule schedule;
  schedule.base = base;
  schedule.stages_covered = stages_covered;
  schedule.fine.reserve(base);
  u64 w = 1;
  for (u64 r = 0; r < base; ++r) {
    schedule.fine.push_back(shoup_precompute(w, p));
    w = mulmod_native(w, prime.psi, p);
  }
  // w == psi^base here.
  const u64 step = w;
  schedule.coarse.reserve(n / base);
  w = 1;
  for (u64 q = 0; q < n / base; ++q) {
    schedule.coarse.push_back(shoup_precompute(w, p));
    w = mulmod_native(w, step, p);
  }
  return schedule;
}

u64 default_ot_base(u64 n) noexcept {
  if (n >= (u64{1} << 11)) return 1024;
  const unsigned bits = log2_exact(n);
  return u64{1} << ((bits + 1) / 2);
}

u64 table_bytes(u64 n, u64 np, unsigned directions, bool with_companions) noexcept {
  return n * np * directions * (with_companions ? 2 : 1) * sizeof(u64);
}

void write_table_dump(std::ostream& out, const TwiddleTable& table) {
  out.write("NTTT", 4);
  detail::put_le<std::uint32_t>(out, kTableDumpVersion);
  detail::put_le<u64>(out, table.n());
  detail::put_le<u64>(out, table.prime.p);
  detail::put_le<u64>(out, 0);
  for (const auto* arr : {&table.forward, &table.inverse}) {
    for (const ShoupPair& e : *arr) detail::put_le(out, e.w);
    for (const ShoupPair& e : *arr) detail::put_le(out, e.w_bar);
  }
}

TwiddleTable read_table_dump(std::istream& in) {
  char magic[4] = {};
  std::uint32_t version = 0;
  u64 n = 0;
  u64 p = 0;
  u64 reserved = 0;
  if (!in.read(magic, 4) || std::string(magic, 4) != "NTTT") {
    throw Error(Errc::malformed, "table dump: bad magic");
  }
  if (!detail::get_le(in, version) || version != kTableDumpVersion) {
    throw Error(Errc::malformed, "table dump: unsupported version");
  }
  if (!detail::get_le(in, n) || !detail::get_le(in, p) || !detail::get_le(in, reserved)) {
    throw Error(Errc::malformed, "table dump: truncated header");
  }
  if (!is_power_of_two(n) || n > (u64{1} << 17)) throw Error(Errc::malformed, "table dump: bad n");

  std::vector<u64> words(4 * n);
  if (!detail::get_words(in, words)) throw Error(Errc::malformed, "table dump: truncated payload");

  TwiddleTable table;
  table.forward.resize(n);
  table.inverse.resize(n);
  for (u64 i = 0; i < n; ++i) {
    table.forward[i] = {words[i], words[n + i]};
    table.inverse[i] = {words[2 * n + i], words[3 * n + i]};
  }
  const u64 psi = n >= 2 ? table.forward[n / 2].w : p - 1;
  try {
    table.prime = make_prime(p, n, psi);
  } catch (const Error& e) {
    throw Error(Errc::malformed, std::string("table dump: ") + e.what());
  }
  table.n_inv_pair = shoup_precompute(table.prime.n_inv, p);
  return table;
}

}  // namespace ntt
