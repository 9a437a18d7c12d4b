// Copyright 2026 The ntt-engine Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "ntt/modarith.hpp"
#include "ntt/rns.hpp"
#include "ntt/rns_io.hpp"
#include "ntt/traffic.hpp"
#include "ntt/transform.hpp"

namespace ntt::cli {

namespace {

/// Raised for flag values that parse but fall outside their allowed range.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned parse_unsigned(std::string_view text, const char* what) {
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError(std::string(what) + ": expected an unsigned integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

/// "17", "14,15,17" or "14..17".
std::vector<unsigned> parse_logn_list(const std::string& text) {
  std::vector<unsigned> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const unsigned lo = parse_unsigned(std::string_view(text).substr(0, dots), "--logn");
    const unsigned hi = parse_unsigned(std::string_view(text).substr(dots + 2), "--logn");
    if (lo > hi) throw UsageError("--logn: empty range " + text);
    for (unsigned v = lo; v <= hi; ++v) out.push_back(v);
  } else {
    for (const auto& part : split(text, ',')) out.push_back(parse_unsigned(part, "--logn"));
  }
  if (out.empty()) throw UsageError("--logn: no values");
  return out;
}

/// A config token plus an optional "--ot BASE:STAGES" override.
TransformConfig parse_algo(const std::string& algo, const std::string& ot) {
  TransformConfig cfg = parse_config(algo);
  if (!ot.empty()) {
    const auto parts = split(ot, ':');
    if (parts.size() != 2 || cfg.ot) throw Error(Errc::config, "--ot expects BASE:STAGES on a config without +ot");
    std::string token = algo + "+ot:" + ot;
    cfg = parse_config(token);
  }
  return cfg;
}

/// Loads the parameter file and checks `cfg` against its degree before any
/// tables are built, so a bad split reports as a config error.
ModulusChain load_chain(const std::string& params, const TransformConfig& cfg) {
  auto primes = load_params(params);
  resolve(cfg, primes.front().n);
  return cfg.ot ? ModulusChain(std::move(primes), *cfg.ot) : ModulusChain(std::move(primes));
}

void require_shape(const RnsPolynomial& poly, const ModulusChain& chain, const std::string& what) {
  if (poly.n != chain.n() || poly.np != chain.size()) {
    throw Error(Errc::chain_mismatch, what + ": shape (n=" + std::to_string(poly.n) +
                                          ", np=" + std::to_string(poly.np) +
                                          ") does not match the parameter file (n=" +
                                          std::to_string(chain.n()) + ", np=" +
                                          std::to_string(chain.size()) + ")");
  }
}

// ---------------------------------------------------------------------------
// Commands

int cmd_gen_params(unsigned logn, unsigned np, const std::string& out_path, std::ostream& out) {
  if (logn < 2 || logn > 17) throw UsageError("--logn must be in [2, 17]");
  if (np < 1 || np > 64) throw UsageError("--np must be in [1, 64]");
  const auto primes = find_ntt_primes(u64{1} << logn, np);
  save_params(out_path, primes);
  out << "wrote " << primes.size() << " primes for n = 2^" << logn << " to " << out_path << "\n";
  return kOk;
}

int cmd_ntt(const std::string& params, const std::string& in_path, const std::string& out_path,
            const std::string& algo, const std::string& ot, bool inverse, unsigned threads) {
  const TransformConfig cfg = parse_algo(algo, ot);
  const ModulusChain chain = load_chain(params, cfg);
  const RnsPolynomial poly = load_polynomial(in_path);
  require_shape(poly, chain, in_path);
  const RnsPolynomial result =
      inverse ? batch_ntt_inverse(poly, chain, threads) : batch_ntt_forward(poly, chain, cfg, threads);
  save_polynomial(out_path, result);
  return kOk;
}

int cmd_polymul(const std::string& params, const std::string& a_path, const std::string& b_path,
                const std::string& out_path, const std::string& algo, unsigned threads) {
  const TransformConfig cfg = parse_config(algo);
  const ModulusChain chain = load_chain(params, cfg);
  const RnsPolynomial a = load_polynomial(a_path);
  const RnsPolynomial b = load_polynomial(b_path);
  if (a.n != b.n || a.np != b.np) {
    throw Error(Errc::chain_mismatch, "operands have different shapes");
  }
  require_shape(a, chain, a_path);
  require_shape(b, chain, b_path);
  save_polynomial(out_path, rns_polymul(a, b, chain, cfg, threads));
  return kOk;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out) {
  if (options.full && (options.logn < 2 || options.logn > 17)) throw UsageError("--logn must be in [2, 17]");
  if (options.full && (options.np < 1 || options.np > 64)) throw UsageError("--np must be in [1, 64]");
  const auto results = run_verify(options, out);
  std::size_t failed = 0;
  for (const auto& r : results) {
    if (!r.passed) ++failed;
  }
  out << "\n" << (results.size() - failed) << "/" << results.size() << " checks passed";
  if (failed) {
    out << "; failing:";
    for (const auto& r : results) {
      if (!r.passed) out << " " << r.name;
    }
  }
  out << "\n";
  return failed ? kVerifyFailed : kOk;
}

struct BenchArgs {
  std::string params;
  std::string algos = "radix2";
  unsigned reps = 10;
  std::string csv;
  std::uint64_t seed = 42;
  unsigned threads = 1;
};

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  if (args.reps < 1) throw UsageError("--reps must be at least 1");
  std::vector<TransformConfig> configs;
  for (const auto& tok : split(args.algos, ',')) configs.push_back(parse_config(tok));
  if (configs.empty()) throw Error(Errc::config, "--algos is empty");

  const auto primes = load_params(args.params);
  const u64 n = primes.front().n;
  for (auto& c : configs) c = resolve(c, n);

  // One seeded input shared by every configuration.
  std::mt19937_64 rng(args.seed);
  RnsPolynomial input(n, primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    std::uniform_int_distribution<u64> dist(0, primes[i].p - 1);
    for (u64& v : input.row(i)) v = dist(rng);
  }

  std::ofstream file;
  std::ostream* csv = &out;
  if (!args.csv.empty()) {
    file.open(args.csv, std::ios::binary);
    if (!file) throw Error(Errc::malformed, "cannot open " + args.csv + " for writing");
    csv = &file;
  }
  *csv << "config_id,algo,n,np,repetitions,wall_nanoseconds_total,nanoseconds_per_transform,"
          "checksum,seed\n";

  for (const TransformConfig& cfg : configs) {
    const ModulusChain chain = cfg.ot ? ModulusChain(primes, *cfg.ot) : ModulusChain(primes);
    std::optional<std::uint64_t> sum;
    std::chrono::nanoseconds total{0};
    for (unsigned r = 0; r < args.reps; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      const RnsPolynomial result = batch_ntt_forward(input, chain, cfg, args.threads);
      total += std::chrono::steady_clock::now() - t0;
      const std::uint64_t s = checksum(result.residues);
      if (sum && *sum != s) throw Error(Errc::internal, "checksum changed between repetitions");
      sum = s;
    }
    const auto ns = static_cast<std::uint64_t>(total.count());
    const std::string id = to_string(cfg);
    *csv << id << ',' << id.substr(0, id.find_first_of(":+")) << ',' << n << ',' << primes.size()
         << ',' << args.reps << ',' << ns << ','
         << ns / (static_cast<std::uint64_t>(args.reps) * primes.size()) << ",0x" << std::hex
         << std::setw(16) << std::setfill('0') << *sum << std::dec << std::setfill(' ') << ','
         << args.seed << '\n';
  }
  return kOk;
}

struct TrafficArgs {
  std::string logn = "17";
  unsigned np = 21;
  std::string configs = "radix2,twopass:128x*:8,twopass:128x*:8+ot:1024:2";
  std::string csv;
  bool no_companions = false;
};

int cmd_traffic(const TrafficArgs& args, std::ostream& out) {
  const auto logns = parse_logn_list(args.logn);
  for (unsigned l : logns) {
    if (l < 1 || l > 17) throw UsageError("--logn values must be in [1, 17]");
  }
  std::vector<TransformConfig> configs;
  for (const auto& tok : split(args.configs, ',')) configs.push_back(parse_config(tok));
  if (configs.empty()) throw Error(Errc::config, "--config is empty");

  // Build every row before writing so a bad split does not leave a partial file.
  std::ostringstream rows;
  write_traffic_csv_header(rows);
  for (const TransformConfig& cfg : configs) {
    for (unsigned l : logns) {
      write_traffic_csv_row(rows, model_traffic(cfg, u64{1} << l, args.np, !args.no_companions));
    }
  }
  if (args.csv.empty()) {
    out << rows.str();
  } else {
    std::ofstream file(args.csv, std::ios::binary);
    if (!file || !(file << rows.str())) throw Error(Errc::malformed, "cannot write " + args.csv);
  }
  return kOk;
}

}  // namespace

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::domain:
    case Errc::length:
    case Errc::size_mismatch:
      return kUsage;
    case Errc::range_exhausted: return kExhausted;
    case Errc::malformed: return kMalformed;
    case Errc::config: return kConfig;
    case Errc::chain_mismatch: return kParamMismatch;
    case Errc::aliasing:
    case Errc::internal:
      return kInternal;
  }
  return kInternal;
}

unsigned resolve_threads(unsigned flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("NTT_THREADS"); env && *env) {
    unsigned v = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || v == 0) {
      throw Error(Errc::domain, "NTT_THREADS must be a positive integer");
    }
    return v;
  }
  return 1;
}

std::uint64_t checksum(const std::vector<std::uint64_t>& words) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint64_t w : words) {
    for (int b = 0; b < 8; ++b) {
      h ^= (w >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Number theoretic transforms and RNS polynomial arithmetic", "ntt"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  unsigned threads = 0;
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", threads, "Worker threads (default: NTT_THREADS, else 1)");
  };

  // gen-params
  unsigned gp_logn = 0, gp_np = 0;
  std::string gp_out;
  auto* gen = app.add_subcommand("gen-params", "Generate an NTT prime chain");
  gen->add_option("--logn", gp_logn, "log2 of the ring degree, 2..17")->required();
  gen->add_option("--np", gp_np, "number of primes, 1..64")->required();
  gen->add_option("--out", gp_out, "output parameter file (JSON)")->required();

  // ntt
  std::string n_params, n_in, n_out, n_algo = "radix2", n_ot;
  bool n_inverse = false;
  auto* nttc = app.add_subcommand("ntt", "Transform a polynomial file");
  nttc->add_option("--params", n_params, "parameter file")->required();
  nttc->add_option("--in", n_in, "input NTTP file")->required();
  nttc->add_option("--out", n_out, "output NTTP file")->required();
  nttc->add_option("--algo", n_algo, "configuration token")->capture_default_str();
  nttc->add_flag("--inverse", n_inverse, "inverse transform (input order read from the file)");
  nttc->add_option("--ot", n_ot, "on-the-fly twiddling as BASE:STAGES");
  add_threads(nttc);

  // polymul
  std::string m_params, m_a, m_b, m_out, m_algo = "radix2";
  auto* mul = app.add_subcommand("polymul", "Multiply two polynomials in Z_Q[X]/(X^N+1)");
  mul->add_option("--params", m_params, "parameter file")->required();
  mul->add_option("--a", m_a, "first operand (NTTP)")->required();
  mul->add_option("--b", m_b, "second operand (NTTP)")->required();
  mul->add_option("--out", m_out, "product (NTTP)")->required();
  mul->add_option("--algo", m_algo, "configuration token")->capture_default_str();
  add_threads(mul);

  // verify
  VerifyOptions vopt;
  std::string level = "quick";
  auto* ver = app.add_subcommand("verify", "Run the built-in invariant suites");
  ver->add_option("--level", level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}))
      ->capture_default_str();
  ver->add_option("--logn", vopt.logn, "degree for the full level")->capture_default_str();
  ver->add_option("--np", vopt.np, "prime count for the full level")->capture_default_str();
  ver->add_option("--seed", vopt.seed, "random seed")->capture_default_str();
  ver->add_flag("--inject-fault", vopt.inject_fault)->group("");
  add_threads(ver);

  // bench
  BenchArgs bargs;
  auto* bench = app.add_subcommand("bench", "Time forward transforms");
  bench->add_option("--params", bargs.params, "parameter file")->required();
  bench->add_option("--algos", bargs.algos, "comma-separated configuration tokens")->capture_default_str();
  bench->add_option("--reps", bargs.reps, "repetitions per configuration")->capture_default_str();
  bench->add_option("--csv", bargs.csv, "output CSV (default: stdout)");
  bench->add_option("--seed", bargs.seed, "input seed")->capture_default_str();
  add_threads(bench);

  // traffic
  TrafficArgs targs;
  auto* traffic = app.add_subcommand("traffic", "Analytic memory-traffic report");
  traffic->add_option("--logn", targs.logn, "degree list: 17, 14,15 or 14..17")->capture_default_str();
  traffic->add_option("--np", targs.np, "number of primes")->capture_default_str();
  traffic->add_option("--config", targs.configs, "comma-separated configuration tokens")
      ->capture_default_str();
  traffic->add_option("--csv", targs.csv, "output CSV (default: stdout)");
  traffic->add_flag("--no-companions", targs.no_companions, "count twiddles without Shoup companions");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "ntt: " << e.what() << "\n";
    return kUsage;
  }

  try {
    const unsigned workers = resolve_threads(threads);
    if (*gen) return cmd_gen_params(gp_logn, gp_np, gp_out, out);
    if (*nttc) return cmd_ntt(n_params, n_in, n_out, n_algo, n_ot, n_inverse, workers);
    if (*mul) return cmd_polymul(m_params, m_a, m_b, m_out, m_algo, workers);
    if (*ver) {
      vopt.full = level == "full";
      vopt.threads = workers;
      return cmd_verify(vopt, out);
    }
    if (*bench) {
      bargs.threads = workers;
      return cmd_bench(bargs, out);
    }
    if (*traffic) return cmd_traffic(targs, out);
  } catch (const UsageError& e) {
    err << "ntt: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "ntt: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "ntt: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace ntt::cli
