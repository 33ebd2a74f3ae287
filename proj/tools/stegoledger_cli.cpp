// Copyright 2026 The stegoledger Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// stegoledger: command-line front end for the simulated chain, the two
// covert channels and the evaluation harness.
//
// Exit codes: 0 success, 2 validation error, 3 extraction or authentication
// failure, 1 anything else.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stegoledger/errors.hpp"
#include "stegoledger/evaluation.hpp"
#include "stegoledger/hdw.hpp"
#include "stegoledger/ledger.hpp"
#include "stegoledger/session.hpp"
#include "stegoledger/stego_medium.hpp"

namespace fs = std::filesystem;
using namespace stegoledger;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitExtraction = 3;

struct Globals {
  std::string chain = "chain.bin";
  std::string session;
  std::string config;
  std::string key;
  std::uint64_t seed = 1;
  bool json = false;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kValidation:
    case ErrorCode::kRejected:
    case ErrorCode::kRangeError:
    case ErrorCode::kNonceReuse:
    case ErrorCode::kInsufficientSample:
      return kExitValidation;
    case ErrorCode::kAuthError:
    case ErrorCode::kTagCorruption:
    case ErrorCode::kPermutationMismatch:
    case ErrorCode::kIncomplete:
    case ErrorCode::kChainCorruption:
      return kExitExtraction;
    default:
      return 1;
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_bytes(const std::string& path, ByteView data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

ProtocolConfig load_config(const Globals& g) {
  if (g.config.empty()) return {};
  ProtocolConfig cfg = parse_config(read_text(g.config));
  cfg.validate();
  return cfg;
}

hdw::KeyMaterial load_key(const Globals& g) {
  if (g.key.empty()) throw Error(ErrorCode::kValidation, "--key is required");
  return hdw::read_key_file(g.key);
}

// Loads the session file, creating it from --key, --config and --seed when
// it does not exist yet. An existing session keeps the config it was created
// with; a --config that disagrees is refused rather than ignored.
session::Session open_session(const Globals& g) {
  if (g.session.empty()) throw Error(ErrorCode::kValidation, "--session is required");
  if (!fs::exists(g.session)) return session::Session::create(load_key(g), load_config(g), g.seed);
  session::Session s = session::Session::load(g.session);
  if (!g.config.empty() && load_config(g) != s.config()) {
    throw Error(ErrorCode::kValidation, g.session + " was created with a different channel config:\n" +
                                            format_config(s.config()));
  }
  return s;
}

ledger::Ledger open_chain(const Globals& g) {
  ledger::LedgerOptions opts;
  opts.seed = g.seed;
  return ledger::Ledger::open(g.chain, opts);
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::kValidation, "bad range '" + text + "', expected A..B");
  }
}

const char* channel_name(hdw::Channel c) { return hdw::to_string(c); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blockchain steganography over HDW addresses on a simulated ledger"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--chain", g.chain, "chain file")->capture_default_str();
  app.add_option("--session", g.session, "session state file");
  app.add_option("--config", g.config, "channel config file");
  app.add_option("--key", g.key, "key file");
  app.add_option("--seed", g.seed, "deterministic seed")->capture_default_str();
  app.add_flag("--json", g.json, "machine-readable output");

  auto* keygen = app.add_subcommand("keygen", "generate shared key material");
  std::string public_out;
  keygen->add_option("--public", public_out, "also write the public half here");

  auto* send = app.add_subcommand("send", "send a message");
  std::string channel_arg;
  std::string in_path;
  send->add_option("--channel", channel_arg, "high or med")->required()->check(CLI::IsMember({"high", "med"}));
  send->add_option("--in", in_path, "message file")->required();

  auto* scan = app.add_subcommand("scan", "list stego transactions without consuming them");

  auto* extract = app.add_subcommand("extract", "receive completed messages");
  std::string out_path;
  extract->add_option("--out", out_path, "output file; later messages get .2, .3, ...")->required();

  auto* mine = app.add_subcommand("mine", "mine blocks with decoy traffic");
  double decoy_rate = 4.0;
  int block_count = 1;
  bool fund = false;
  mine->add_option("--decoys", decoy_rate, "decoy transactions per block")->check(CLI::NonNegativeNumber);
  mine->add_option("--blocks", block_count, "number of blocks")->check(CLI::PositiveNumber);
  mine->add_flag("--fund", fund, "pay the first coinbase to the session wallet");

  auto* capacity = app.add_subcommand("capacity", "capacity table");
  std::string n_range = "5";
  std::string m_range = "15";
  capacity->add_option("--n", n_range, "outputs per transaction, A..B");
  capacity->add_option("--m", m_range, "bits per address, C..D");

  auto* bench = app.add_subcommand("bench", "grinding effort benchmark");
  std::vector<int> bench_m{4, 8, 10};
  int bench_runs = 1000;
  bool bench_serial = false;
  bench->add_option("--m", bench_m, "comma-separated m values")->delimiter(',');
  bench->add_option("--runs", bench_runs, "grinds per m");
  bench->add_flag("--serial", bench_serial, "use the serial reference kernel");

  auto* stats_cmd = app.add_subcommand("stats", "A/B statistics of stego outputs against decoys");

  auto* export_cmd = app.add_subcommand("export", "human-readable chain dump");
  std::string export_out;
  export_cmd->add_option("--out", export_out, "write here instead of stdout");

  auto* verify = app.add_subcommand("verify", "re-hash every block of the chain file");
  auto* rotate = app.add_subcommand("rotate", "rotate keys over the high channel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    if (*keygen) {
      if (g.key.empty()) throw Error(ErrorCode::kValidation, "--key names the output file");
      Drbg rng = Drbg::from_label("keygen", g.seed);
      const auto km = hdw::KeyMaterial::generate(rng);
      hdw::write_key_file(g.key, km, true);
      if (!public_out.empty()) hdw::write_key_file(public_out, km, false);
      std::printf("wrote %s\n", g.key.c_str());
      return 0;
    }

    if (*capacity) {
      const auto [n_lo, n_hi] = parse_range(n_range);
      const auto [m_lo, m_hi] = parse_range(m_range);
      const auto rows = eval::capacity_table(n_lo, n_hi, m_lo, m_hi);
      std::fputs((g.json ? eval::to_json(rows) : eval::to_text(rows)).c_str(), stdout);
      return 0;
    }

    if (*bench) {
      const auto report = eval::bench_grind(bench_m, bench_runs, g.seed, bench_serial);
      std::fputs((g.json ? eval::to_json(report) : eval::to_text(report)).c_str(), stdout);
      return 0;
    }

    if (*verify) {
      const auto blocks = ledger::Ledger::read_chain_file(g.chain);
      std::printf("ok: %zu blocks verified\n", blocks.size());
      return 0;
    }

    if (*export_cmd) {
      const std::string text = open_chain(g).export_text();
      if (export_out.empty()) {
        std::fputs(text.c_str(), stdout);
      } else {
        write_bytes(export_out, ByteView(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
      }
      return 0;
    }

    if (*mine) {
      auto chain = open_chain(g);
      std::optional<session::Session> sess;
      std::optional<hdw::Address> payee;
      if (fund) {
        sess = open_session(g);
        payee = sess->funding_address();
      }
      ledger::NoiseProfile noise;
      noise.rate = decoy_rate;
      for (int i = 0; i < block_count; ++i) {
        const auto& b = chain.mine_block(noise, g.seed + static_cast<std::uint64_t>(i), i == 0 ? payee : std::nullopt);
        std::printf("block %llu %s txs=%zu\n", static_cast<unsigned long long>(b.height), to_hex(b.hash).c_str(),
                    b.txs.size());
      }
      if (sess) {
        sess->sync_wallet(chain);
        sess->save(g.session);
        std::printf("wallet balance %llu\n", static_cast<unsigned long long>(sess->balance()));
      }
      return 0;
    }

    if (*send) {
      auto chain = open_chain(g);
      auto sess = open_session(g);
      sess.sync_wallet(chain);
      const std::string msg = read_text(in_path);
      const auto channel = channel_arg == "high" ? hdw::Channel::kHigh : hdw::Channel::kMed;
      std::vector<Hash256> ids;
      try {
        ids = sess.send_message(chain, ByteView(reinterpret_cast<const std::uint8_t*>(msg.data()), msg.size()), channel);
      } catch (...) {
        sess.save(g.session);  // counters already spent must stay spent
        throw;
      }
      sess.save(g.session);
      for (const auto& id : ids) std::printf("%s\n", to_hex(id).c_str());
      return 0;
    }

    if (*rotate) {
      auto chain = open_chain(g);
      auto sess = open_session(g);
      sess.sync_wallet(chain);
      sess.rotate_keys(chain);
      sess.save(g.session);
      std::printf("rotated to epoch %zu\n", sess.epochs().size() - 1);
      return 0;
    }

    if (*scan || *extract) {
      auto chain = open_chain(g);
      auto sess = open_session(g);
      const std::size_t quarantined = sess.quarantine().size();
      const auto got = sess.detect_and_receive(chain);
      const auto& q = sess.quarantine();
      for (std::size_t i = quarantined; i < q.size(); ++i) {
        std::fprintf(stderr, "quarantined %s tx %s at height %llu: %s\n", channel_name(q[i].channel),
                     to_hex(q[i].txid).c_str(), static_cast<unsigned long long>(q[i].height), q[i].detail.c_str());
      }
      for (std::size_t i = 0; i < got.size(); ++i) {
        std::printf("%s message of %zu bytes at height %llu (epoch %u)\n", channel_name(got[i].channel),
                    got[i].message.size(), static_cast<unsigned long long>(got[i].height), got[i].epoch);
      }
      if (*extract) {
        for (std::size_t i = 0; i < got.size(); ++i) {
          write_bytes(i == 0 ? out_path : out_path + "." + std::to_string(i + 1), got[i].message);
        }
        sess.save(g.session);
      }
      if (got.empty()) std::printf("no complete messages\n");
      return q.size() > quarantined ? kExitExtraction : 0;
    }

    if (*stats_cmd) {
      const auto chain = open_chain(g);
      const auto cfg = load_config(g);
      const auto report = eval::stat_suite(chain, load_key(g), cfg.med, {0.01, 100, cfg.scan_window});
      std::fputs((g.json ? eval::to_json(report) : eval::to_text(report)).c_str(), stdout);
      return report.pass ? 0 : kExitExtraction;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
