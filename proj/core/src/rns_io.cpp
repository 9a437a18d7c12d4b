// Copyright 2026 The ntt-engine Authors
// SPDX-License-Identifier: Apache-2.0

#include "ntt/rns_io.hpp"

#include <fstream>
#include <iterator>
#include <json.hpp>

#include "le_io.hpp"
#include "ntt/error.hpp"

namespace ntt {

namespace {

constexpr u64 kMaxDegree = u64{1} << 17;
constexpr u64 kMaxPrimes = 1024;

[[noreturn]] void malformed(const std::string& what) { throw Error(Errc::malformed, what); }

}  // namespace

void write_polynomial(std::ostream& out, const RnsPolynomial& poly) {
  out.write("NTTP", 4);
  detail::put_le<std::uint32_t>(out, kPolyFormatVersion);
  detail::put_le<u64>(out, poly.n);
  detail::put_le<u64>(out, poly.np);
  detail::put_le<std::uint8_t>(out, static_cast<std::uint8_t>(poly.domain));
  detail::put_le<std::uint8_t>(out, static_cast<std::uint8_t>(poly.order));
  const char reserved[6] = {};
  out.write(reserved, sizeof reserved);
  detail::put_words(out, poly.residues);
}

RnsPolynomial read_polynomial(std::istream& in) {
  char magic[4] = {};
  if (!in.read(magic, 4) || std::string_view(magic, 4) != "NTTP") malformed("NTTP: bad magic");
  std::uint32_t version = 0;
  u64 n = 0;
  u64 np = 0;
  std::uint8_t domain = 0;
  std::uint8_t order = 0;
  char reserved[6] = {};
  if (!detail::get_le(in, version)) malformed("NTTP: truncated header");
  if (version != kPolyFormatVersion) malformed("NTTP: unsupported version " + std::to_string(version));
  if (!detail::get_le(in, n) || !detail::get_le(in, np) || !detail::get_le(in, domain) ||
      !detail::get_le(in, order) || !in.read(reserved, sizeof reserved)) {
    malformed("NTTP: truncated header");
  }
  if (!is_power_of_two(n) || n > kMaxDegree) malformed("NTTP: n must be a power of two <= 2^17");
  if (np == 0 || np > kMaxPrimes) malformed("NTTP: bad prime count");
  if (domain > 1 || order > 1) malformed("NTTP: bad domain/order flag");
  for (char c : reserved) {
    if (c != 0) malformed("NTTP: reserved bytes must be zero");
  }

  RnsPolynomial poly(n, static_cast<std::size_t>(np));
  poly.domain = static_cast<Domain>(domain);
  poly.order = static_cast<Order>(order);
  if (!detail::get_words(in, poly.residues)) malformed("NTTP: truncated payload");
  if (in.peek() != std::char_traits<char>::eof()) malformed("NTTP: trailing bytes after payload");
  return poly;
}

void save_polynomial(const std::filesystem::path& path, const RnsPolynomial& poly) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) malformed("cannot open " + path.string() + " for writing");
  write_polynomial(out, poly);
  if (!out) malformed("write failed: " + path.string());
}

RnsPolynomial load_polynomial(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) malformed("cannot open " + path.string());
  return read_polynomial(in);
}

std::string params_to_json(const std::vector<Prime>& primes) {
  nlohmann::ordered_json doc;
  doc["n"] = primes.empty() ? u64{0} : primes.front().n;
  doc["primes"] = nlohmann::ordered_json::array();
  doc["psi"] = nlohmann::ordered_json::array();
  for (const Prime& p : primes) {
    doc["primes"].push_back(p.p);
    doc["psi"].push_back(p.psi);
  }
  return doc.dump(2) + "\n";
}

std::vector<Prime> params_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    malformed(std::string("parameter file: ") + e.what());
  }
  auto is_u64 = [](const nlohmann::json& v) { return v.is_number_unsigned(); };
  if (!doc.is_object() || !doc.contains("n") || !is_u64(doc["n"]) || !doc.contains("primes") ||
      !doc["primes"].is_array() || !doc.contains("psi") || !doc["psi"].is_array()) {
    malformed("parameter file: expected {n, primes[], psi[]}");
  }
  const u64 n = doc["n"].get<u64>();
  const auto& ps = doc["primes"];
  const auto& roots = doc["psi"];
  if (ps.empty() || ps.size() != roots.size()) malformed("parameter file: primes/psi length mismatch");

  std::vector<Prime> primes;
  primes.reserve(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (!is_u64(ps[i]) || !is_u64(roots[i])) malformed("parameter file: non-integer entry");
    try {
      primes.push_back(make_prime(ps[i].get<u64>(), n, roots[i].get<u64>()));
    } catch (const Error& e) {
      malformed(std::string("parameter file: ") + e.what());
    }
  }
  return primes;
}

void save_params(const std::filesystem::path& path, const std::vector<Prime>& primes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) malformed("cannot open " + path.string() + " for writing");
  out << params_to_json(primes);
  if (!out) malformed("write failed: " + path.string());
}

std::vector<Prime> load_params(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) malformed("cannot open " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return params_from_json(text);
}

}  // namespace ntt
