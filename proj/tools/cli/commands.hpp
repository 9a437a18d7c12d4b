// Copyright 2026 The ntt-engine Authors
// SPDX-License-Identifier: Apache-2.0

// The `ntt` command-line front end, as a library so tests can drive it
// without spawning processes.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ntt/error.hpp"

namespace ntt::cli {

/// Process exit codes, one per error class.
enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kUsage = 2,          // bad flag, value out of range, wrong domain
  kExhausted = 3,      // not enough primes in the scan range
  kMalformed = 4,      // unreadable or malformed polynomial / parameter file
  kConfig = 5,         // transform configuration token rejected
  kParamMismatch = 6,  // files disagree with each other or with the parameters
  kInternal = 7,       // broken internal invariant
};

int exit_code_for(Errc code) noexcept;

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count: the flag if given (> 0), else NTT_THREADS, else 1.
/// Throws Errc::domain on an invalid value.
unsigned resolve_threads(unsigned flag_value);

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  bool full = false;
  unsigned logn = 17;       // full level only
  std::size_t np = 21;      // full level only
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool inject_fault = false;  // flips bit 62 of one w_bar before the OT check
};

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

std::vector<CheckResult> run_verify(const VerifyOptions& options, std::ostream& progress);

// ---------------------------------------------------------------------------
// bench

/// FNV-1a over the little-endian bytes of the words.
std::uint64_t checksum(const std::vector<std::uint64_t>& words) noexcept;

}  // namespace ntt::cli
