// Copyright 2026 The ntt-engine Authors
// SPDX-License-Identifier: Apache-2.0

#include "ntt/error.hpp"

namespace ntt {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::domain: return "domain-error";
    case Errc::range_exhausted: return "range-exhausted";
    case Errc::size_mismatch: return "size-mismatch";
    case Errc::aliasing: return "aliasing-error";
    case Errc::config: return "config-error";
    case Errc::length: return "length-error";
    case Errc::chain_mismatch: return "chain-mismatch";
    case Errc::malformed: return "malformed";
    case Errc::internal: return "internal-error";
  }
  return "unknown";
}

}  // namespace ntt
