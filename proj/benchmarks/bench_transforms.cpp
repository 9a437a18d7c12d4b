// Copyright 2026 The ntt-engine Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "ntt/modarith.hpp"
#include "ntt/rns.hpp"
#include "ntt/transform.hpp"

namespace {

using ntt::u64;

std::vector<u64> seeded_input(u64 n, u64 p) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<u64> dist(0, p - 1);
  std::vector<u64> v(n);
  for (u64& x : v) x = dist(rng);
  return v;
}

// Shoup against a widening multiply followed by a 128-bit remainder.
void BM_ShoupMulmod(benchmark::State& state) {
  const u64 p = ntt::find_ntt_primes(1024, 1).front().p;
  const auto xs = seeded_input(4096, p);
  const ntt::ShoupPair w = ntt::shoup_precompute(xs[7], p);
  for (auto _ : state) {
    u64 acc = 0;
    for (u64 x : xs) acc += ntt::shoup_mulmod(x, w, p);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(xs.size()));
}
BENCHMARK(BM_ShoupMulmod);

void BM_NativeMulmod(benchmark::State& state) {
  const u64 p = ntt::find_ntt_primes(1024, 1).front().p;
  const auto xs = seeded_input(4096, p);
  const u64 w = xs[7];
  for (auto _ : state) {
    u64 acc = 0;
    for (u64 x : xs) acc += ntt::mulmod_native(x, w, p);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(xs.size()));
}
BENCHMARK(BM_NativeMulmod);

void run_forward(benchmark::State& state, const char* token) {
  const u64 n = u64{1} << state.range(0);
  const ntt::Prime prime = ntt::find_ntt_primes(n, 1).front();
  const ntt::TwiddleTable table = ntt::build_table(prime);
  const ntt::TransformConfig cfg = ntt::resolve(ntt::parse_config(token), n);
  std::optional<ntt::OTSchedule> ot;
  if (cfg.ot) ot = ntt::build_ot_schedule(prime, cfg.ot->base, cfg.ot->stages_covered);
  const auto input = seeded_input(n, prime.p);
  std::vector<u64> work(n);
  for (auto _ : state) {
    work = input;
    ntt::forward(work, table, cfg, ot ? &*ot : nullptr);
    benchmark::DoNotOptimize(work.data());
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_Radix2(benchmark::State& s) { run_forward(s, "radix2"); }
void BM_Stockham(benchmark::State& s) { run_forward(s, "stockham"); }
void BM_HighRadix16(benchmark::State& s) { run_forward(s, "highradix:16"); }
void BM_TwoPass(benchmark::State& s) { run_forward(s, "twopass:128x*:8"); }
void BM_TwoPassOT(benchmark::State& s) { run_forward(s, "twopass:128x*:8+ot:1024:2"); }
BENCHMARK(BM_Radix2)->DenseRange(14, 17);
BENCHMARK(BM_Stockham)->DenseRange(14, 17);
BENCHMARK(BM_HighRadix16)->DenseRange(14, 17);
BENCHMARK(BM_TwoPass)->DenseRange(14, 17);
BENCHMARK(BM_TwoPassOT)->DenseRange(14, 17);

// np independent transforms, one per prime (the batched RNS workload).
void BM_BatchForward(benchmark::State& state) {
  const u64 n = u64{1} << 16;
  const ntt::ModulusChain chain(ntt::find_ntt_primes(n, 21));
  ntt::RnsPolynomial poly(n, chain.size());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto row = seeded_input(n, chain.prime(i).p);
    std::copy(row.begin(), row.end(), poly.row(i).begin());
  }
  const auto cfg = ntt::parse_config("twopass:128x*:8");
  const auto workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    auto out = ntt::batch_ntt_forward(poly, chain, cfg, workers);
    benchmark::DoNotOptimize(out.residues.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(chain.size()));
}
BENCHMARK(BM_BatchForward)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
