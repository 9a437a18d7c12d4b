// Copyright 2026 The ntt-engine Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>
#include <sstream>

#include "ntt/error.hpp"
#include "ntt/twiddle.hpp"
#include "oracles.hpp"

using namespace ntt;

TEST_CASE("bit_reverse") {
  CHECK(bit_reverse(0, 5) == 0);
  CHECK(bit_reverse(1, 3) == 4);
  CHECK(bit_reverse(6, 3) == 3);
  CHECK(bit_reverse(0, 0) == 0);
  CHECK_THROWS_AS(bit_reverse(8, 3), Error);
  for (unsigned bits = 0; bits <= 12; ++bits) {
    for (u64 i = 0; i < (u64{1} << bits); ++i) {
      REQUIRE(bit_reverse(bit_reverse(i, bits), bits) == i);
      REQUIRE(bit_reverse(i, bits) == oracle::bitrev(i, bits));
    }
  }
}

TEST_CASE("build_table: p = 17, n = 4") {
  const TwiddleTable t = build_table(make_prime(17, 4));
  std::vector<u64> w;
  for (const auto& e : t.forward) w.push_back(e.w);
  CHECK(w == std::vector<u64>{1, 4, 2, 8});
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(oracle::mulmod(t.forward[i].w, t.inverse[inverse_slot(i, 4)].w, 17) == 1);
  }
}

TEST_CASE("build_table: invariants against square-and-multiply") {
  for (auto [p, n] : std::vector<std::pair<u64, u64>>{{17, 1}, {17, 8}, {7681, 256}, {12289, 2048}}) {
    const Prime prime = make_prime(p, n);
    const TwiddleTable t = build_table(prime);
    const unsigned bits = log2_exact(n);
    REQUIRE(t.forward.size() == n);
    REQUIRE(t.inverse.size() == n);
    CHECK(t.forward[0].w == 1);
    if (n >= 2) CHECK(t.forward[1].w == oracle::powmod(prime.psi, n / 2, p));
    for (u64 i = 0; i < n; ++i) {
      const ShoupPair& f = t.forward[i];
      REQUIRE(f.w == oracle::powmod(prime.psi, oracle::bitrev(i, bits), p));
      REQUIRE(f.w_bar == static_cast<u64>((oracle::BigInt(f.w) << 64) / p));
      const ShoupPair& inv = t.inverse[inverse_slot(i, n)];
      REQUIRE(oracle::mulmod(f.w, inv.w, p) == 1);
      REQUIRE(inv.w_bar == static_cast<u64>((oracle::BigInt(inv.w) << 64) / p));
    }
    CHECK(oracle::mulmod(t.n_inv_pair.w, n, p) == 1 % p);
  }
}

TEST_CASE("inverse_slot is a bijection consumed stage by stage") {
  for (std::size_t n : {1u, 2u, 4u, 64u, 1024u}) {
    std::vector<int> hit(n, 0);
    for (std::size_t i = 0; i < n; ++i) hit[inverse_slot(i, n)]++;
    for (int h : hit) REQUIRE(h == 1);
  }
  // n = 8: widest stage (m = 4) first, then m = 2, then m = 1, then the unit.
  CHECK(inverse_slot(4, 8) == 0);
  CHECK(inverse_slot(7, 8) == 3);
  CHECK(inverse_slot(2, 8) == 4);
  CHECK(inverse_slot(1, 8) == 6);
  CHECK(inverse_slot(0, 8) == 7);
}

TEST_CASE("build_ot_schedule") {
  SUBCASE("entry count at HE scale") {
    const Prime prime = find_ntt_primes(u64{1} << 17, 1).front();
    const OTSchedule s = build_ot_schedule(prime, 1024, 2);
    CHECK(s.entry_count() == 1152);
    CHECK(s.coarse.size() == 128);
    CHECK(s.fine.size() == 1024);
  }
  SUBCASE("n = 16, base 4 over p = 97 (psi = 19)") {
    const Prime prime = make_prime(97, 16);
    REQUIRE(prime.psi == 19);
    const OTSchedule s = build_ot_schedule(prime, 4, 1);
    std::vector<u64> coarse, fine;
    for (const auto& e : s.coarse) coarse.push_back(e.w);
    for (const auto& e : s.fine) fine.push_back(e.w);
    CHECK(coarse == std::vector<u64>{1, 50, 75, 64});
    CHECK(fine == std::vector<u64>{1, 19, 70, 69});
    CHECK(ot_apply(1, 6, s, 97) % 97 == 8);
  }
  SUBCASE("degenerate base = n") {
    const OTSchedule s = build_ot_schedule(make_prime(97, 16), 16, 2);
    REQUIRE(s.coarse.size() == 1);
    CHECK(s.coarse[0].w == 1);
  }
  CHECK_THROWS_AS(build_ot_schedule(make_prime(97, 16), 3, 1), Error);
  CHECK_THROWS_AS(build_ot_schedule(make_prime(97, 16), 32, 1), Error);
  CHECK_THROWS_AS(build_ot_schedule(make_prime(97, 16), 4, 3), Error);
}

TEST_CASE("OT factorization covers every exponent") {
  const Prime prime = make_prime(12289, 2048);
  for (u64 base : {2ULL, 8ULL, 64ULL, 2048ULL}) {
    const OTSchedule s = build_ot_schedule(prime, base, 2);
    CHECK(s.entry_count() == base + 2048 / base);
    for (u64 e = 0; e < prime.n; ++e) {
      const u64 prod = oracle::mulmod(s.coarse[e / base].w, s.fine[e % base].w, prime.p);
      REQUIRE(prod == oracle::powmod(prime.psi, e, prime.p));
    }
  }
}

TEST_CASE("ot_apply equals table-based multiplication for all exponents (n = 2^10)") {
  const Prime prime = find_ntt_primes(1024, 1).front();
  const TwiddleTable t = build_table(prime);
  const OTSchedule s = build_ot_schedule(prime, default_ot_base(1024), 2);
  const u64 p = prime.p;
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<u64> xd(0, 4 * p - 1);
  for (u64 i = 0; i < 1024; ++i) {
    const u64 e = bit_reverse(i, 10);
    const u64 x = xd(rng);
    const u64 via_ot = ot_apply(x, e, s, p);
    REQUIRE(via_ot < 2 * p);
    REQUIRE(via_ot % p == shoup_mulmod(x, t.forward[i], p));
  }
  // e = 0 keeps the value's residue.
  const u64 x = 3 * p + 5;
  CHECK(ot_apply(x, 0, s, p) % p == 5);
  CHECK(ot_apply(x, 0, s, p) < 2 * p);
}

TEST_CASE("default_ot_base") {
  CHECK(default_ot_base(u64{1} << 17) == 1024);
  CHECK(default_ot_base(u64{1} << 11) == 1024);
  CHECK(default_ot_base(1024) == 32);
  CHECK(default_ot_base(512) == 32);
  CHECK(default_ot_base(16) == 4);
}

TEST_CASE("table_bytes") {
  CHECK(table_bytes(u64{1} << 17, 45, 1, true) == 94371840ULL);
  CHECK(table_bytes(u64{1} << 17, 21, 2, true) == 88080384ULL);
  CHECK(table_bytes(1, 1, 1, false) == 8);
}

TEST_CASE("table dump round trip") {
  const TwiddleTable t = build_table(make_prime(7681, 256));
  std::stringstream buf;
  write_table_dump(buf, t);
  const std::string bytes = buf.str();
  REQUIRE(bytes.size() == 32 + 4 * 256 * 8);
  CHECK(bytes.substr(0, 4) == "NTTT");

  const TwiddleTable back = read_table_dump(buf);
  CHECK(back.prime == t.prime);
  CHECK(back.forward == t.forward);
  CHECK(back.inverse == t.inverse);

  std::stringstream truncated(bytes.substr(0, bytes.size() - 1));
  CHECK_THROWS_AS(read_table_dump(truncated), Error);
  std::stringstream bad("XXXX");
  CHECK_THROWS_AS(read_table_dump(bad), Error);
}
