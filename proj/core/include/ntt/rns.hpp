// Copyright 2026 The ntt-engine Authors
// SPDX-License-Identifier: Apache-2.0

// Residue number system over a chain of NTT primes sharing one ring degree.
// Arbitrary-precision integers appear only here; transforms stay 64-bit.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ntt/modarith.hpp"
#include "ntt/transform.hpp"
#include "ntt/twiddle.hpp"

namespace ntt {

using BigInt = boost::multiprecision::cpp_int;

enum class Domain : std::uint8_t { coefficient = 0, ntt = 1 };

/// Immutable set of distinct primes with their tables and CRT constants.
class ModulusChain {
 public:
  /// Throws Errc::domain if primes is empty, has duplicates, or mixes degrees.
  explicit ModulusChain(std::vector<Prime> primes);

  /// Also builds one OT schedule per prime.
  ModulusChain(std::vector<Prime> primes, OtConfig ot);

  u64 n() const noexcept { return primes_.front().n; }
  std::size_t size() const noexcept { return primes_.size(); }
  const std::vector<Prime>& primes() const noexcept { return primes_; }
  const Prime& prime(std::size_t i) const { return primes_.at(i); }
  const TwiddleTable& table(std::size_t i) const { return tables_.at(i); }
  const OTSchedule* ot_schedule(std::size_t i) const;
  const BigInt& q_product() const noexcept { return q_; }

  /// Q / p_i and ((Q / p_i)^-1 mod p_i).
  const BigInt& q_hat(std::size_t i) const { return q_hat_.at(i); }
  u64 q_hat_inv(std::size_t i) const { return q_hat_inv_.at(i); }

  friend bool operator==(const ModulusChain& a, const ModulusChain& b) {
    return a.primes_ == b.primes_;
  }

 private:
  std::vector<Prime> primes_;
  std::vector<TwiddleTable> tables_;
  std::vector<OTSchedule> ot_schedules_;
  BigInt q_;
  std::vector<BigInt> q_hat_;
  std::vector<u64> q_hat_inv_;
};

/// np x n residue matrix, row i reduced mod p_i, row-major.
struct RnsPolynomial {
  u64 n = 0;
  std::size_t np = 0;
  std::vector<u64> residues;
  Domain domain = Domain::coefficient;
  Order order = Order::natural;

  RnsPolynomial() = default;
  RnsPolynomial(u64 degree, std::size_t prime_count)
      : n(degree), np(prime_count), residues(degree * prime_count, 0) {}

  std::span<u64> row(std::size_t i) { return {residues.data() + i * n, n}; }
  std::span<const u64> row(std::size_t i) const { return {residues.data() + i * n, n}; }

  friend bool operator==(const RnsPolynomial&, const RnsPolynomial&) = default;
};

/// Throws Errc::chain_mismatch unless poly has the chain's shape and every
/// residue is below its prime.
void check_belongs(const RnsPolynomial& poly, const ModulusChain& chain);

/// residues[i][j] = coeffs[j] mod p_i. Throws Errc::domain if any coefficient
/// is negative or >= Q, Errc::length if coeffs.size() != n.
RnsPolynomial to_rns(std::span<const BigInt> coeffs, const ModulusChain& chain);

/// CRT reconstruction sum_i r_i * q_hat_i * q_hat_inv_i mod Q.
/// Throws Errc::domain if poly is in the NTT domain.
std::vector<BigInt> from_rns(const RnsPolynomial& poly, const ModulusChain& chain);

/// Transforms every row with its own table. Rows are split across `workers`
/// threads; the result does not depend on the worker count.
RnsPolynomial batch_ntt_forward(const RnsPolynomial& poly, const ModulusChain& chain,
                                const TransformConfig& config, unsigned workers = 1);

RnsPolynomial batch_ntt_inverse(const RnsPolynomial& poly, const ModulusChain& chain,
                                unsigned workers = 1);

/// a * b in Z_Q[X]/(X^n + 1), computed row-wise. Both operands must be in the
/// coefficient domain on `chain`.
RnsPolynomial rns_polymul(const RnsPolynomial& a, const RnsPolynomial& b,
                          const ModulusChain& chain, const TransformConfig& config,
                          unsigned workers = 1);

}  // namespace ntt
