// Copyright 2026 The ntt-engine Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace ntt {

/// Error classes raised by the library. The CLI maps each to a distinct exit code.
enum class Errc {
  domain,           // argument outside its mathematical domain
  range_exhausted,  // not enough qualifying primes in the scan range
  size_mismatch,    // buffer length does not match the table degree
  aliasing,         // out-of-place buffers overlap
  config,           // invalid transform configuration
  length,           // buffer length not a power of two, or unequal lengths
  chain_mismatch,   // polynomial does not belong to the modulus chain
  malformed,        // malformed file or parameter text
  internal,         // broken internal invariant (e.g. composite modulus)
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace ntt
