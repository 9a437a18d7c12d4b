// Copyright 2026 The ntt-engine Authors
// SPDX-License-Identifier: Apache-2.0

// Little-endian word I/O shared by the binary formats.

#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>

namespace ntt::detail {

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename T>
bool get_le(std::istream& in, T& value) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) return false;
  value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    value |= static_cast<T>(bytes[i]) << (8 * i);
  }
  return true;
}

inline void put_words(std::ostream& out, std::span<const std::uint64_t> words) {
  for (std::uint64_t w : words) put_le(out, w);
}

inline bool get_words(std::istream& in, std::span<std::uint64_t> words) {
  for (std::uint64_t& w : words) {
    if (!get_le(in, w)) return false;
  }
  return true;
}

}  // namespace ntt::detail
