// Copyright 2026 The ntt-engine Authors
// SPDX-License-Identifier: Apache-2.0

// On-disk formats for RNS polynomials ("NTTP" binary) and parameter sets (JSON).
//
// NTTP layout, all little-endian:
//   0   4  magic "NTTP"
//   4   4  u32 version (1)
//   8   8  u64 n
//   16  8  u64 np
//   24  1  domain (0 = coefficient, 1 = ntt)
//   25  1  order  (0 = natural, 1 = bit-reversed)
//   26  6  reserved, zero
//   32     np * n u64 residues, row-major by prime index
//
// Parameter file: {"n": N, "primes": [p_0, ...], "psi": [psi_0, ...]}.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ntt/rns.hpp"

namespace ntt {

inline constexpr std::uint32_t kPolyFormatVersion = 1;
inline constexpr std::size_t kPolyHeaderBytes = 32;

void write_polynomial(std::ostream& out, const RnsPolynomial& poly);

/// Throws Errc::malformed on a bad header, truncated payload or trailing bytes.
RnsPolynomial read_polynomial(std::istream& in);

void save_polynomial(const std::filesystem::path& path, const RnsPolynomial& poly);
RnsPolynomial load_polynomial(const std::filesystem::path& path);

std::string params_to_json(const std::vector<Prime>& primes);

/// Parses and validates every (prime, psi) pair. Throws Errc::malformed.
std::vector<Prime> params_from_json(std::string_view text);

void save_params(const std::filesystem::path& path, const std::vector<Prime>& primes);
std::vector<Prime> load_params(const std::filesystem::path& path);

}  // namespace ntt
