// Copyright 2026 The ntt-engine Authors
// SPDX-License-Identifier: Apache-2.0

#include "ntt/rns.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <set>
#include <string>
#include <thread>

#include "ntt/error.hpp"

namespace ntt {

namespace {

u64 mod_small(const BigInt& x, u64 p) { return static_cast<u64>(x % p); }

/// Runs fn(row) for every row, partitioning rows into contiguous ranges.
template <typename Fn>
void for_each_row(std::size_t rows, unsigned workers, Fn&& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(rows)));
  if (workers == 1) {
    for (std::size_t i = 0; i < rows; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = rows * w / workers;
    const std::size_t end = rows * (w + 1) / workers;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

ModulusChain::ModulusChain(std::vector<Prime> primes) : primes_(std::move(primes)) {
  if (primes_.empty()) throw Error(Errc::domain, "modulus chain needs at least one prime");
  std::set<u64> seen;
  for (const Prime& p : primes_) {
    if (p.n != primes_.front().n) throw Error(Errc::domain, "modulus chain mixes ring degrees");
    if (!seen.insert(p.p).second) {
      throw Error(Errc::domain, "modulus chain repeats prime " + std::to_string(p.p));
    }
  }
  tables_.reserve(primes_.size());
  for (const Prime& p : primes_) tables_.push_back(build_table(p));

  q_ = 1;
  for (const Prime& p : primes_) q_ *= p.p;
  for (const Prime& p : primes_) {
    BigInt hat = q_ / p.p;
    q_hat_inv_.push_back(invmod(mod_small(hat, p.p), p.p));
    q_hat_.push_back(std::move(hat));
  }
}

ModulusChain::ModulusChain(std::vector<Prime> primes, OtConfig ot) : ModulusChain(std::move(primes)) {
  for (const Prime& p : primes_) {
    ot_schedules_.push_back(build_ot_schedule(p, ot.base, ot.stages_covered));
  }
}

const OTSchedule* ModulusChain::ot_schedule(std::size_t i) const {
  return ot_schedules_.empty() ? nullptr : &ot_schedules_.at(i);
}

void check_belongs(const RnsPolynomial& poly, const ModulusChain& chain) {
  if (poly.n != chain.n() || poly.np != chain.size() || poly.residues.size() != poly.n * poly.np) {
    throw Error(Errc::chain_mismatch, "polynomial shape (n=" + std::to_string(poly.n) +
                                          ", np=" + std::to_string(poly.np) +
                                          ") does not match the modulus chain");
  }
  for (std::size_t i = 0; i < poly.np; ++i) {
    const u64 p = chain.prime(i).p;
    for (u64 v : poly.row(i)) {
      if (v >= p) throw Error(Errc::chain_mismatch, "residue not reduced modulo its prime");
    }
  }
}

RnsPolynomial to_rns(std::span<const BigInt> coeffs, const ModulusChain& chain) {
  if (coeffs.size() != chain.n()) throw Error(Errc::length, "to_rns: expected n coefficients");
  RnsPolynomial poly(chain.n(), chain.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const BigInt& c = coeffs[j];
    if (c < 0 || c >= chain.q_product()) {
      throw Error(Errc::domain, "to_rns: coefficient " + std::to_string(j) + " outside [0, Q)");
    }
    for (std::size_t i = 0; i < chain.size(); ++i) poly.row(i)[j] = mod_small(c, chain.prime(i).p);
  }
  return poly;
}

std::vector<BigInt> from_rns(const RnsPolynomial& poly, const ModulusChain& chain) {
  if (poly.domain != Domain::coefficient) {
    throw Error(Errc::domain, "from_rns: polynomial is in the NTT domain");
  }
  check_belongs(poly, chain);
  std::vector<BigInt> out(poly.n);
  for (u64 j = 0; j < poly.n; ++j) {
    BigInt acc = 0;
    for (std::size_t i = 0; i < poly.np; ++i) {
      const u64 p = chain.prime(i).p;
      const u64 scaled = mulmod_native(poly.row(i)[j], chain.q_hat_inv(i), p);
      acc += chain.q_hat(i) * scaled;
    }
    out[j] = acc % chain.q_product();
  }
  return out;
}

RnsPolynomial batch_ntt_forward(const RnsPolynomial& poly, const ModulusChain& chain,
                                const TransformConfig& config, unsigned workers) {
  if (poly.domain != Domain::coefficient) {
    throw Error(Errc::domain, "batch_ntt_forward: polynomial already in the NTT domain");
  }
  check_belongs(poly, chain);
  const TransformConfig cfg = resolve(config, chain.n());
  RnsPolynomial out = poly;
  for_each_row(out.np, workers, [&](std::size_t i) {
    forward(out.row(i), chain.table(i), cfg, chain.ot_schedule(i));
  });
  out.domain = Domain::ntt;
  out.order = output_order(cfg);
  return out;
}

RnsPolynomial batch_ntt_inverse(const RnsPolynomial& poly, const ModulusChain& chain,
                                unsigned workers) {
  if (poly.domain != Domain::ntt) {
    throw Error(Errc::domain, "batch_ntt_inverse: polynomial is in the coefficient domain");
  }
  check_belongs(poly, chain);
  RnsPolynomial out = poly;
  for_each_row(out.np, workers, [&](std::size_t i) { inverse(out.row(i), chain.table(i), out.order); });
  out.domain = Domain::coefficient;
  out.order = Order::natural;
  return out;
}

RnsPolynomial rns_polymul(const RnsPolynomial& a, const RnsPolynomial& b, const ModulusChain& chain,
                          const TransformConfig& config, unsigned workers) {
  if (a.domain != Domain::coefficient || b.domain != Domain::coefficient) {
    throw Error(Errc::domain, "rns_polymul: operands must be in the coefficient domain");
  }
  check_belongs(a, chain);
  check_belongs(b, chain);
  RnsPolynomial fa = batch_ntt_forward(a, chain, config, workers);
  const RnsPolynomial fb = batch_ntt_forward(b, chain, config, workers);
  for_each_row(fa.np, workers, [&](std::size_t i) {
    pointwise_mul(fa.row(i), fb.row(i), fa.row(i), chain.prime(i).p);
  });
  return batch_ntt_inverse(fa, chain, workers);
}

}  // namespace ntt
