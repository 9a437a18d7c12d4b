// Copyright 2026 The ntt-engine Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "cli/commands.hpp"
#include "ntt/rns_io.hpp"
#include "oracles.hpp"

using namespace ntt;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result ntt_cmd(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

/// Fresh scratch directory per test case.
struct Scratch {
  fs::path dir;
  Scratch() {
    static int counter = 0;
    dir = fs::temp_directory_path() / ("ntt_cli_test_" + std::to_string(::getpid()) + "_" +
                                       std::to_string(counter++));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

RnsPolynomial random_poly(const std::vector<Prime>& primes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RnsPolynomial poly(primes.front().n, primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const auto row = oracle::random_vector(rng, poly.n, primes[i].p);
    std::copy(row.begin(), row.end(), poly.row(i).begin());
  }
  return poly;
}

}  // namespace

TEST_CASE("gen-params") {
  Scratch s;
  CHECK(ntt_cmd({"gen-params", "--logn", "14", "--np", "21", "--out", s / "a.json"}).code == 0);
  CHECK(ntt_cmd({"gen-params", "--logn", "14", "--np", "21", "--out", s / "b.json"}).code == 0);
  CHECK(slurp(s / "a.json") == slurp(s / "b.json"));
  const auto primes = load_params(s / "a.json");
  CHECK(primes.size() == 21);
  CHECK(primes.front().n == 16384);

  CHECK(ntt_cmd({"gen-params", "--logn", "1", "--np", "4", "--out", s / "x.json"}).code == 2);
  CHECK(ntt_cmd({"gen-params", "--logn", "18", "--np", "4", "--out", s / "x.json"}).code == 2);
  CHECK(ntt_cmd({"gen-params", "--logn", "4", "--np", "0", "--out", s / "x.json"}).code == 2);
  CHECK(ntt_cmd({"gen-params", "--logn", "4", "--np", "65", "--out", s / "x.json"}).code == 2);
  CHECK(ntt_cmd({"gen-params", "--logn", "4"}).code == 2);
  CHECK(ntt_cmd({}).code == 2);
  CHECK(ntt_cmd({"bogus"}).code == 2);
  CHECK(ntt_cmd({"--help"}).code == 0);
}

TEST_CASE("exit codes are distinct per error class") {
  std::set<int> codes;
  for (Errc e : {Errc::domain, Errc::range_exhausted, Errc::malformed, Errc::config,
                 Errc::chain_mismatch, Errc::internal}) {
    codes.insert(cli::exit_code_for(e));
  }
  CHECK(codes.size() == 6);
  CHECK(cli::exit_code_for(Errc::range_exhausted) == 3);
  CHECK(codes.count(1) == 0);  // reserved for verification failures
}

TEST_CASE("ntt: roundtrip, cross-algorithm bytes and Stockham permutation") {
  Scratch s;
  REQUIRE(ntt_cmd({"gen-params", "--logn", "17", "--np", "2", "--out", s / "p.json"}).code == 0);
  const auto primes = load_params(s / "p.json");
  save_polynomial(s / "in.nttp", random_poly(primes, 5));

  REQUIRE(ntt_cmd({"ntt", "--params", s / "p.json", "--in", s / "in.nttp", "--out", s / "r2.nttp"}).code == 0);
  REQUIRE(ntt_cmd({"ntt", "--params", s / "p.json", "--in", s / "r2.nttp", "--out", s / "back.nttp",
                   "--inverse"}).code == 0);
  CHECK(slurp(s / "back.nttp") == slurp(s / "in.nttp"));

  REQUIRE(ntt_cmd({"ntt", "--params", s / "p.json", "--in", s / "in.nttp", "--out", s / "tp.nttp",
                   "--algo", "twopass:128x1024:8", "--threads", "2"}).code == 0);
  CHECK(slurp(s / "tp.nttp") == slurp(s / "r2.nttp"));

  REQUIRE(ntt_cmd({"ntt", "--params", s / "p.json", "--in", s / "in.nttp", "--out", s / "ot.nttp",
                   "--algo", "twopass:128x1024:8", "--ot", "1024:2"}).code == 0);
  CHECK(slurp(s / "ot.nttp") == slurp(s / "r2.nttp"));

  REQUIRE(ntt_cmd({"ntt", "--params", s / "p.json", "--in", s / "in.nttp", "--out", s / "st.nttp",
                   "--algo", "stockham"}).code == 0);
  RnsPolynomial st = load_polynomial(s / "st.nttp");
  const RnsPolynomial r2 = load_polynomial(s / "r2.nttp");
  CHECK(st.order == Order::natural);
  CHECK(r2.order == Order::bit_reversed);
  for (std::size_t i = 0; i < st.np; ++i) bit_reverse_permute(st.row(i));
  CHECK(st.residues == r2.residues);

  REQUIRE(ntt_cmd({"ntt", "--params", s / "p.json", "--in", s / "st.nttp", "--out", s / "back2.nttp",
                   "--inverse"}).code == 0);
  CHECK(slurp(s / "back2.nttp") == slurp(s / "in.nttp"));
}

TEST_CASE("ntt: error exits") {
  Scratch s;
  REQUIRE(ntt_cmd({"gen-params", "--logn", "4", "--np", "2", "--out", s / "p.json"}).code == 0);
  const auto primes = load_params(s / "p.json");
  save_polynomial(s / "in.nttp", random_poly(primes, 1));
  const std::vector<std::string> base = {"ntt", "--params", s / "p.json", "--out", s / "o.nttp"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> a = base;
    a.insert(a.end(), extra.begin(), extra.end());
    return ntt_cmd(a).code;
  };

  std::ofstream(s / "junk.nttp") << "not a polynomial";
  CHECK(with({"--in", s / "junk.nttp"}) == 4);
  CHECK(with({"--in", s / "missing.nttp"}) == 4);
  CHECK(with({"--in", s / "in.nttp", "--algo", "radix3"}) == 5);
  CHECK(with({"--in", s / "in.nttp", "--algo", "twopass:8x8:2"}) == 5);  // 64 != 16
  CHECK(with({"--in", s / "in.nttp", "--algo", "stockham", "--ot", "4:1"}) == 5);

  std::ofstream(s / "bad.json") << "{\"n\": 4}";
  CHECK(ntt_cmd({"ntt", "--params", s / "bad.json", "--in", s / "in.nttp", "--out", s / "o.nttp"}).code == 4);

  // A polynomial over a different prime count.
  save_polynomial(s / "one.nttp", RnsPolynomial(16, 1));
  CHECK(with({"--in", s / "one.nttp"}) == 6);

  ::setenv("NTT_THREADS", "zero", 1);
  CHECK(with({"--in", s / "in.nttp"}) == 2);
  ::setenv("NTT_THREADS", "3", 1);
  CHECK(with({"--in", s / "in.nttp"}) == 0);
  ::unsetenv("NTT_THREADS");
}

TEST_CASE("polymul") {
  Scratch s;
  REQUIRE(ntt_cmd({"gen-params", "--logn", "8", "--np", "3", "--out", s / "p.json"}).code == 0);
  const auto primes = load_params(s / "p.json");
  const RnsPolynomial a = random_poly(primes, 2);
  save_polynomial(s / "a.nttp", a);
  RnsPolynomial one(256, 3);
  for (std::size_t i = 0; i < 3; ++i) one.row(i)[0] = 1;
  save_polynomial(s / "one.nttp", one);

  REQUIRE(ntt_cmd({"polymul", "--params", s / "p.json", "--a", s / "a.nttp", "--b", s / "one.nttp",
                   "--out", s / "c.nttp", "--algo", "stockham"}).code == 0);
  CHECK(load_polynomial(s / "c.nttp") == a);

  save_polynomial(s / "short.nttp", RnsPolynomial(256, 2));
  CHECK(ntt_cmd({"polymul", "--params", s / "p.json", "--a", s / "a.nttp", "--b", s / "short.nttp",
                 "--out", s / "c.nttp"}).code == 6);

  // (1 + X)^2 at N = 4, the smallest degree gen-params accepts.
  REQUIRE(ntt_cmd({"gen-params", "--logn", "2", "--np", "2", "--out", s / "q.json"}).code == 0);
  RnsPolynomial small(4, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    small.row(i)[0] = 1;
    small.row(i)[1] = 1;
  }
  save_polynomial(s / "s.nttp", small);
  REQUIRE(ntt_cmd({"polymul", "--params", s / "q.json", "--a", s / "s.nttp", "--b", s / "s.nttp",
                   "--out", s / "s2.nttp"}).code == 0);
  const RnsPolynomial sq = load_polynomial(s / "s2.nttp");
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(std::vector<u64>(sq.row(i).begin(), sq.row(i).end()) == std::vector<u64>{1, 2, 1, 0});
  }
}

TEST_CASE("verify") {
  const Result quick = ntt_cmd({"verify", "--level", "quick"});
  CHECK(quick.code == 0);
  CHECK(quick.out.find("FAIL") == std::string::npos);

  const Result faulty = ntt_cmd({"verify", "--inject-fault"});
  CHECK(faulty.code == 1);
  CHECK(faulty.out.find("FAIL ot_table_equivalence") != std::string::npos);

  CHECK(ntt_cmd({"verify", "--level", "medium"}).code == 2);
}

TEST_CASE("bench") {
  Scratch s;
  REQUIRE(ntt_cmd({"gen-params", "--logn", "10", "--np", "2", "--out", s / "p.json"}).code == 0);
  const std::vector<std::string> cmd = {"bench", "--params", s / "p.json", "--algos",
                                        "radix2,stockham,twopass:32x32:4+ot:32:2", "--reps", "3"};
  const Result first = ntt_cmd(cmd);
  REQUIRE(first.code == 0);
  auto w = cmd;
  w.insert(w.end(), {"--threads", "2"});
  const Result second = ntt_cmd(w);
  REQUIRE(second.code == 0);

  auto column = [](const std::string& csv, std::size_t col) {
    std::vector<std::string> out;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      std::istringstream cells(line);
      std::string cell;
      for (std::size_t c = 0; c <= col; ++c) std::getline(cells, cell, ',');
      out.push_back(cell);
    }
    return out;
  };
  CHECK(first.out.rfind("config_id,algo,n,np,repetitions,wall_nanoseconds_total,"
                        "nanoseconds_per_transform,checksum,seed\n", 0) == 0);
  CHECK(column(first.out, 7).size() == 3);
  CHECK(column(first.out, 7) == column(second.out, 7));
  CHECK(column(first.out, 1) == std::vector<std::string>{"radix2", "stockham", "twopass"});
  // Both bit-reversed variants produce the same bytes.
  CHECK(column(first.out, 7)[0] == column(first.out, 7)[2]);

  CHECK(ntt_cmd({"bench", "--params", s / "p.json", "--reps", "0"}).code == 2);
  CHECK(ntt_cmd({"bench", "--params", s / "p.json", "--algos", "radix5"}).code == 5);

  REQUIRE(ntt_cmd({"bench", "--params", s / "p.json", "--reps", "1", "--csv", s / "b.csv"}).code == 0);
  CHECK(slurp(s / "b.csv").find("radix2,radix2,1024,2,1,") != std::string::npos);
}

TEST_CASE("traffic") {
  const Result r = ntt_cmd({"traffic", "--logn", "17", "--np", "45", "--config",
                            "twopass:128x*:8,twopass:128x*:8+ot:1024:2"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header, off, on;
  std::getline(in, header);
  std::getline(in, off);
  std::getline(in, on);
  CHECK(off.find(",188743680,") != std::string::npos);
  CHECK(off.back() == ',');
  CHECK(on.back() != ',');

  const Result sweep = ntt_cmd({"traffic", "--logn", "14..17", "--config", "twopass:128x*:8+ot:1024:2"});
  REQUIRE(sweep.code == 0);
  CHECK(std::count(sweep.out.begin(), sweep.out.end(), '\n') == 5);

  CHECK(ntt_cmd({"traffic", "--config", "twopass:oops"}).code == 5);
  CHECK(ntt_cmd({"traffic", "--logn", "12", "--config", "twopass:64x*:8"}).code == 0);
  CHECK(ntt_cmd({"traffic", "--logn", "12", "--config", "twopass:32x*:8"}).code == 5);
  CHECK(ntt_cmd({"traffic", "--logn", "20"}).code == 2);
  CHECK(ntt_cmd({"traffic", "--logn", "x"}).code == 2);
}
