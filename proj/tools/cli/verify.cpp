// Copyright 2026 The ntt-engine Authors
// SPDX-License-Identifier: Apache-2.0

// Built-in invariant suites behind `ntt verify`. Each check compares the
// library against a slower, independent computation and reports the first
// disagreement it finds.

#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "ntt/modarith.hpp"
#include "ntt/rns.hpp"
#include "ntt/traffic.hpp"
#include "ntt/transform.hpp"
#include "ntt/twiddle.hpp"

namespace ntt::cli {

namespace {

using Rng = std::mt19937_64;

/// A failed expectation inside a check; the message becomes the report detail.
struct Mismatch {
  std::string what;
};

void expect(bool ok, const std::function<std::string()>& describe) {
  if (!ok) throw Mismatch{describe()};
}

std::vector<u64> random_residues(Rng& rng, u64 n, u64 p) {
  std::uniform_int_distribution<u64> dist(0, p - 1);
  std::vector<u64> v(n);
  for (u64& x : v) x = dist(rng);
  return v;
}

std::vector<u64> schoolbook(const std::vector<u64>& a, const std::vector<u64>& b, u64 p) {
  const std::size_t n = a.size();
  std::vector<u64> c(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const u64 prod = static_cast<u64>(static_cast<u128>(a[i]) * b[j] % p);
      const std::size_t k = (i + j) % n;
      c[k] = i + j < n ? (c[k] + prod) % p : (c[k] + p - prod) % p;
    }
  }
  return c;
}

std::vector<TransformConfig> configs_for(u64 n, bool with_ot) {
  std::vector<std::string> tokens = {"radix2", "stockham"};
  for (unsigned r : {4u, 8u, 16u, 32u}) {
    if (r <= n) tokens.push_back("highradix:" + std::to_string(r));
  }
  const u64 min_side = n >= 4096 ? 64 : 2;
  for (u64 n1 = min_side; n1 * min_side <= n; n1 *= 4) {
    for (unsigned pt : {2u, 4u, 8u}) {
      tokens.push_back("twopass:" + std::to_string(n1) + "x*:" + std::to_string(pt));
    }
  }
  if (n == (u64{1} << 17)) tokens.push_back("twopass:128x1024:8");
  std::vector<TransformConfig> out;
  for (const auto& t : tokens) out.push_back(parse_config(t));
  if (with_ot && n >= 4) {
    const std::string ot = "+ot:" + std::to_string(default_ot_base(n)) + ":2";
    out.push_back(parse_config("radix2" + ot));
    for (const auto& t : tokens) {
      if (t.rfind("twopass", 0) == 0) out.push_back(parse_config(t + ot));
    }
  }
  return out;
}

struct Suite {
  const VerifyOptions& opt;
  std::ostream& progress;
  std::vector<CheckResult> results;

  void run(const std::string& name, const std::function<std::string()>& body) {
    CheckResult r{name, true, ""};
    try {
      r.detail = body();
    } catch (const Mismatch& m) {
      r.passed = false;
      r.detail = m.what;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    progress << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) progress << (r.passed ? " (" : ": ") << r.detail << (r.passed ? ")" : "");
    progress << "\n";
    results.push_back(std::move(r));
  }
};

// ---------------------------------------------------------------------------
// Checks

std::string check_primes(u64 n, std::size_t count) {
  const auto primes = find_ntt_primes(n, count);
  for (const Prime& p : primes) {
    expect(p.p >= (u64{1} << 59) && p.p < (u64{1} << 60), [&] { return std::to_string(p.p) + " outside [2^59, 2^60)"; });
    expect(p.p % (2 * n) == 1, [&] { return std::to_string(p.p) + " is not 1 mod 2n"; });
    expect(is_prime(p.p), [&] { return std::to_string(p.p) + " is composite"; });
    expect(powmod(p.psi, n, p.p) == p.p - 1, [&] { return "psi^n != -1 for " + std::to_string(p.p); });
    expect(mulmod_native(p.psi, p.psi_inv, p.p) == 1, [&] { return "psi_inv wrong for " + std::to_string(p.p); });
    expect(mulmod_native(n % p.p, p.n_inv, p.p) == 1, [&] { return "n_inv wrong for " + std::to_string(p.p); });
  }
  expect(find_ntt_primes(n, count) == primes, [] { return "prime scan is not deterministic"; });
  return std::to_string(count) + " primes at n=" + std::to_string(n);
}

std::string check_shoup(Rng& rng, std::size_t trials) {
  for (u64 w = 0; w < 17; ++w) {
    const ShoupPair pair = shoup_precompute(w, 17);
    for (u64 b = 0; b < 68; ++b) {
      expect(shoup_mulmod(b, pair, 17) == b * w % 17, [&] {
        return "p=17 w=" + std::to_string(w) + " b=" + std::to_string(b);
      });
    }
  }
  for (const Prime& prime : find_ntt_primes(u64{1} << 17, 3)) {
    const u64 p = prime.p;
    std::uniform_int_distribution<u64> wd(0, p - 1), bd(0, 4 * p - 1);
    for (std::size_t i = 0; i < trials; ++i) {
      const u64 w = wd(rng), b = bd(rng);
      expect(shoup_mulmod(b, shoup_precompute(w, p), p) == mulmod_native(b, w, p),
             [&] { return "p=" + std::to_string(p) + " w=" + std::to_string(w) + " b=" + std::to_string(b); });
    }
  }
  return "exhaustive p=17, " + std::to_string(trials) + " random per 60-bit prime";
}

std::string check_butterflies(Rng& rng, std::size_t trials) {
  const u64 p = find_ntt_primes(1024, 1).front().p;
  std::uniform_int_distribution<u64> in4(0, 4 * p - 1), in2(0, 2 * p - 1), wd(0, p - 1);
  for (std::size_t i = 0; i < trials; ++i) {
    const u64 w = wd(rng);
    const ShoupPair pair = shoup_precompute(w, p);
    const u64 a0 = in4(rng), b0 = in4(rng);
    u64 a = a0, b = b0;
    butterfly_ct(a, b, pair, p);
    const u64 bw = mulmod_native(b0, w, p);
    expect(a < 4 * p && b < 4 * p && a % p == (a0 % p + bw) % p && b % p == (a0 % p + p - bw) % p,
           [] { return "CT butterfly out of bounds or incongruent"; });
    const u64 c0 = in2(rng), d0 = in2(rng);
    u64 c = c0, d = d0;
    butterfly_gs(c, d, pair, p);
    expect(c < 2 * p && d < 2 * p && c % p == (c0 + d0) % p &&
               d % p == mulmod_native((c0 % p + p - d0 % p) % p, w, p),
           [] { return "GS butterfly out of bounds or incongruent"; });
  }
  return std::to_string(trials) + " trials";
}

/// Every variant agrees with radix-2 CT (Stockham after permutation) and inverts.
std::string check_transforms(Rng& rng, const std::vector<Prime>& primes, std::size_t vectors,
                             bool with_ot) {
  std::size_t runs = 0;
  for (const Prime& prime : primes) {
    const TwiddleTable table = build_table(prime);
    const auto configs = configs_for(prime.n, with_ot);
    for (std::size_t v = 0; v < vectors; ++v) {
      const auto a = random_residues(rng, prime.n, prime.p);
      std::vector<u64> ref = a;
      ntt_radix2_ct(ref, table);
      for (const TransformConfig& cfg : configs) {
        std::vector<u64> x = a;
        forward(x, table, cfg);
        if (output_order(cfg) == Order::natural) bit_reverse_permute(x);
        expect(x == ref, [&] { return to_string(cfg) + " differs from radix2 at n=" + std::to_string(prime.n); });
        if (output_order(cfg) == Order::natural) bit_reverse_permute(x);
        inverse(x, table, output_order(cfg));
        expect(x == a, [&] { return to_string(cfg) + " roundtrip failed at n=" + std::to_string(prime.n); });
        ++runs;
      }
    }
  }
  return std::to_string(runs) + " transform pairs";
}

/// OT-generated twiddles equal table entries for every (sampled) index, and
/// transforms with OT equal transforms without.
std::string check_ot(Rng& rng, u64 n, std::size_t samples, bool inject_fault) {
  const Prime prime = find_ntt_primes(n, 1).front();
  TwiddleTable table = build_table(prime);
  const unsigned log_n = table.log_n();
  const OTSchedule ot = build_ot_schedule(prime, default_ot_base(n), 2);
  if (inject_fault) table.forward[n - 1].w_bar ^= u64{1} << 62;

  const u64 p = prime.p;
  std::uniform_int_distribution<u64> xd(0, 4 * p - 1), id(0, n - 1);
  const bool exhaustive = samples == 0;
  const u64 count = exhaustive ? n : samples;
  for (u64 k = 0; k < count; ++k) {
    const u64 i = exhaustive ? k : id(rng);
    const u64 x = xd(rng);
    const u64 via_table = shoup_mulmod(x, table.forward[i], p);
    const u64 via_ot = ot_apply(x, bit_reverse(i, log_n), ot, p) % p;
    expect(via_table == via_ot, [&] { return "index " + std::to_string(i) + " at n=" + std::to_string(n); });
  }
  const auto a = random_residues(rng, n, p);
  const std::string split = n >= 4096 ? "twopass:64x*:8" : "twopass:2x*:8";
  for (const std::string& tok : {std::string("radix2"), split}) {
    const TransformConfig plain = parse_config(tok);
    TransformConfig with = plain;
    with.ot = OtConfig{ot.base, ot.stages_covered};
    std::vector<u64> x = a, y = a;
    forward(x, table, plain);
    forward(y, table, with, &ot);
    expect(x == y, [&] { return to_string(with) + " differs from the table-based transform"; });
  }
  return (exhaustive ? "all " : "") + std::to_string(count) + " indices at n=" + std::to_string(n);
}

std::string check_polymul(Rng& rng, u64 max_n, std::size_t pairs) {
  for (u64 n = 2; n <= max_n; n *= 2) {
    const Prime prime = find_ntt_primes(n, 1).front();
    const TwiddleTable table = build_table(prime);
    const auto configs = configs_for(n, true);
    for (std::size_t k = 0; k < pairs; ++k) {
      const auto a = random_residues(rng, n, prime.p);
      const auto b = random_residues(rng, n, prime.p);
      const TransformConfig& cfg = configs[k % configs.size()];
      expect(negacyclic_polymul(a, b, table, cfg) == schoolbook(a, b, prime.p),
             [&] { return to_string(cfg) + " at n=" + std::to_string(n); });
    }
  }
  return "n=2.." + std::to_string(max_n) + ", " + std::to_string(pairs) + " pairs each";
}

std::string check_crt(Rng& rng, const ModulusChain& chain, std::size_t values, unsigned threads) {
  const u64 n = chain.n();
  std::size_t done = 0;
  while (done < values) {
    RnsPolynomial poly(n, chain.size());
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const auto row = random_residues(rng, n, chain.prime(i).p);
      std::copy(row.begin(), row.end(), poly.row(i).begin());
    }
    const auto ints = from_rns(poly, chain);
    for (const BigInt& v : ints) expect(v >= 0 && v < chain.q_product(), [] { return "value outside [0, Q)"; });
    expect(to_rns(ints, chain) == poly, [] { return "to_rns(from_rns(r)) != r"; });
    // Batch roundtrip on the same data.
    const RnsPolynomial f = batch_ntt_forward(poly, chain, parse_config("radix2"), threads);
    expect(batch_ntt_inverse(f, chain, threads) == poly, [] { return "batch roundtrip failed"; });
    done += n;
  }
  return std::to_string(done) + " values over np=" + std::to_string(chain.size());
}

std::string check_rns_polymul(Rng& rng, u64 n, std::size_t np, unsigned threads) {
  const ModulusChain chain(find_ntt_primes(n, np));
  // Small coefficients so the integer product is exact and below Q.
  std::uniform_int_distribution<u64> dist(0, 1000);
  std::vector<BigInt> x(n), y(n);
  for (auto& v : x) v = dist(rng);
  for (auto& v : y) v = dist(rng);
  std::vector<BigInt> expected(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i + j < n) {
        expected[i + j] += x[i] * y[j];
      } else {
        expected[i + j - n] -= x[i] * y[j];
      }
    }
  }
  for (auto& v : expected) {
    v %= chain.q_product();
    if (v < 0) v += chain.q_product();
  }
  const RnsPolynomial c =
      rns_polymul(to_rns(x, chain), to_rns(y, chain), chain, parse_config("stockham"), threads);
  expect(from_rns(c, chain) == expected, [] { return "CRT of the RNS product differs from the integer product"; });
  return "n=" + std::to_string(n) + " np=" + std::to_string(np);
}

std::string check_traffic(Rng& rng) {
  expect(model_table_resident(u64{1} << 17, 45, 2, true) == 188743680ULL, [] { return "(2^17, 45, 2 dir)"; });
  expect(model_table_resident(u64{1} << 17, 21, 2, true) == 88080384ULL, [] { return "(2^17, 21, 2 dir)"; });
  expect(model_table_resident(u64{1} << 14, 21, 1, true) == 5505024ULL, [] { return "(2^14, 21, 1 dir)"; });
  expect(build_ot_schedule(find_ntt_primes(u64{1} << 17, 1).front(), 1024, 2).entry_count() == 1152,
         [] { return "OT entry count at 2^17"; });
  std::size_t compared = 0;
  for (u64 n = 4; n <= 1024; n *= 2) {
    const TwiddleTable table = build_table(find_ntt_primes(n, 1).front());
    const auto input = random_residues(rng, n, table.prime.p);
    for (const TransformConfig& cfg : configs_for(n, true)) {
      const TransformStats measured = instrument_counters(cfg, table, input);
      const WordCounts model = model_word_counts(cfg, n, true);
      expect(measured.data_reads == model.data_reads && measured.data_writes == model.data_writes &&
                 measured.twiddle_reads == model.twiddle_words,
             [&] { return "model != counters for " + to_string(cfg) + " at n=" + std::to_string(n); });
      ++compared;
    }
  }
  return std::to_string(compared) + " configs compared with counters";
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& opt, std::ostream& progress) {
  Suite suite{opt, progress, {}};
  Rng rng(opt.seed);
  progress << "verify: level " << (opt.full ? "full" : "quick") << ", seed " << opt.seed << "\n";

  suite.run("prime_generation", [&] { return check_primes(1024, 8); });
  suite.run("shoup_equivalence", [&] { return check_shoup(rng, opt.full ? 1000000 : 20000); });
  suite.run("butterfly_bounds", [&] { return check_butterflies(rng, opt.full ? 1000000 : 20000); });
  suite.run("cross_algorithm_roundtrip", [&] {
    std::vector<Prime> primes;
    for (u64 n = 4; n <= 1024; n *= 2) primes.push_back(find_ntt_primes(n, 1).front());
    return check_transforms(rng, primes, 4, true);
  });
  suite.run("ot_table_equivalence", [&] {
    std::string detail;
    for (u64 n = 4; n <= 1024; n *= 2) detail = check_ot(rng, n, 0, opt.inject_fault);
    return detail;
  });
  suite.run("negacyclic_schoolbook", [&] { return check_polymul(rng, opt.full ? 1024 : 256, opt.full ? 20 : 5); });
  suite.run("crt_roundtrip", [&] {
    return check_crt(rng, ModulusChain(find_ntt_primes(256, 8)), 4096, opt.threads);
  });
  suite.run("rns_polymul", [&] { return check_rns_polymul(rng, 64, 3, opt.threads); });
  suite.run("traffic_model", [&] { return check_traffic(rng); });

  if (opt.full) {
    const u64 n = u64{1} << opt.logn;
    suite.run("prime_generation_full", [&] { return check_primes(n, opt.np); });
    suite.run("cross_algorithm_roundtrip_full", [&] {
      const auto primes = find_ntt_primes(n, opt.np);
      return check_transforms(rng, primes, 1, true);
    });
    suite.run("ot_table_equivalence_full", [&] { return check_ot(rng, n, 1 << 14, opt.inject_fault); });
    suite.run("crt_roundtrip_full", [&] {
      return check_crt(rng, ModulusChain(find_ntt_primes(n, opt.np)), n, opt.threads);
    });
  }
  return suite.results;
}

}  // namespace ntt::cli
