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
#ifndef STEGOLEDGER_SESSION_HPP_
#define STEGOLEDGER_SESSION_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "stegoledger/bits.hpp"
#include "stegoledger/channel_config.hpp"
#include "stegoledger/errors.hpp"
#include "stegoledger/hdw.hpp"
#include "stegoledger/ledger.hpp"
#include "stegoledger/random.hpp"
#include "stegoledger/stego_high.hpp"
#include "stegoledger/stego_medium.hpp"

// Sender and receiver state machines. A session plays one role: the sender
// funds, frames and submits; the receiver scans the chain from its cursor and
// reassembles. The two share nothing but the chain and the initial key.
namespace stegoledger::session {

// One key generation. Rotation appends a new epoch whose counters restart at 1.
struct Epoch {
  explicit Epoch(hdw::KeyMaterial key, const ProtocolConfig& cfg)
      : km(std::move(key)), reassembler(cfg.high) {
    med_configs.emplace_back(1, cfg.med);
  }

  hdw::KeyMaterial km;
  // Sender side.
  std::uint64_t next_high = 1;
  std::uint64_t next_med = 1;
  std::uint64_t next_grind = 1;
  std::uint16_t next_msg_id = 0;
  high::NonceLedger nonces;
  // Receiver side.
  std::uint64_t expect_high = 1;
  std::uint64_t expect_med = 1;
  BitString med_bits;
  high::Reassembler reassembler;
  // (first MED counter, config), ascending.
  std::vector<std::pair<std::uint64_t, ChannelConfig>> med_configs;

  const ChannelConfig& med_config_at(std::uint64_t counter) const;
};

struct Coin {
  ledger::OutPoint op;
  std::uint64_t amount = 0;
  hdw::Address address;
};

struct BurnRecord {
  Hash256 txid{};
  std::uint32_t index = 0;
  std::uint64_t amount = 0;
};

// Everything needed to re-derive a sent transaction's outputs.
struct SentTx {
  Hash256 txid{};
  hdw::Channel channel = hdw::Channel::kMed;
  std::uint32_t epoch = 0;
  std::uint64_t signal_counter = 0;
  std::vector<std::uint64_t> grind_counters;  // MED only, in output order
};

struct QuarantineRecord {
  std::uint64_t height = 0;
  Hash256 txid{};
  hdw::Channel channel = hdw::Channel::kMed;
  std::uint32_t epoch = 0;
  std::uint64_t counter = 0;
  ErrorCode code = ErrorCode::kValidation;
  std::string detail;
};

struct Received {
  hdw::Channel channel = hdw::Channel::kMed;
  Bytes message;
  std::uint32_t epoch = 0;
  std::uint64_t height = 0;  // block holding the final piece
};

struct SendOptions {
  // Confirm-gated sending: called after each stego transaction is submitted
  // and expected to get it mined. Empty means eager sending.
  std::function<void(const Hash256& txid)> confirm;
};

inline constexpr std::uint64_t kStegoFee = 1000;
inline constexpr std::uint64_t kPrefundFee = 500;
inline constexpr std::size_t kMaxMedMessage = 0xFFFF;

class Session {
 public:
  static Session create(const hdw::KeyMaterial& km, const ProtocolConfig& cfg, std::uint64_t seed);

  // Session file: "SSBS" || u16 format version || CBOR document.
  Bytes serialize() const;
  static Session parse(ByteView data);
  void save(const std::filesystem::path& path) const;
  static Session load(const std::filesystem::path& path);

  // Fresh GRIND address that sync_wallet() watches for incoming funds.
  hdw::Address funding_address();
  // Picks up confirmed outputs paying watched addresses and forgets coins the
  // chain no longer lists as unspent.
  void sync_wallet(const ledger::Ledger& chain);
  std::uint64_t balance() const;

  // Returns the stego txids in send order. MED messages are framed as a
  // 16-bit length, the bytes, then random padding to a whole transaction.
  std::vector<Hash256> send_message(ledger::Ledger& chain, ByteView message, hdw::Channel channel,
                                    const SendOptions& opts = {});

  // Scans blocks from the cursor to the tip and returns completed messages.
  std::vector<Received> detect_and_receive(const ledger::Ledger& chain);

  // Sends a fresh key in a rotation frame under the current key and switches
  // to it once the frame is submitted (confirmed, when gated).
  hdw::KeyMaterial rotate_keys(ledger::Ledger& chain, const SendOptions& opts = {});
  // Announces new MED parameters, effective from the next MED counter.
  void switch_params(ledger::Ledger& chain, const ChannelConfig& cfg, const SendOptions& opts = {});

  const ProtocolConfig& config() const { return cfg_; }
  const std::vector<Epoch>& epochs() const { return epochs_; }
  const Epoch& current() const { return epochs_.back(); }
  const ChannelConfig& med_config() const;
  std::uint64_t cursor() const { return cursor_; }
  const std::vector<SentTx>& sent() const { return sent_; }
  const std::vector<BurnRecord>& burns() const { return burns_; }
  const std::vector<QuarantineRecord>& quarantine() const { return quarantine_; }

  // Negative control for the statistics suite only.
  void set_tag_masking(medium::TagMasking m) { masking_ = m; }
  medium::TagMasking tag_masking() const { return masking_; }

 private:
  Session(const hdw::KeyMaterial& km, const ProtocolConfig& cfg, std::uint64_t seed);

  struct Funding {
    ledger::Transaction prefund;
    std::vector<Coin> spent;
    std::optional<Coin> change;
  };
  Funding fund(Epoch& e, const hdw::Address& signal, std::uint64_t amount);
  Hash256 submit_pair(ledger::Ledger& chain, Funding& f, ledger::Transaction& stego, const SendOptions& opts);
  std::vector<Hash256> send_high_frames(ledger::Ledger& chain, high::FrameType type, ByteView body,
                                        const SendOptions& opts);
  Hash256 send_med_tx(ledger::Ledger& chain, const BitString& payload, const SendOptions& opts);
  hdw::Address next_grind_address(Epoch& e);

  void refresh_watch();
  void process_med(const ledger::Transaction& tx, std::uint64_t height, std::uint32_t epoch, std::uint64_t counter,
                   std::vector<Received>& out);
  void process_high(const ledger::Transaction& tx, std::uint64_t height, std::uint32_t epoch, std::uint64_t counter,
                    std::vector<Received>& out);
  void apply_control(const high::Message& m, std::uint32_t epoch);
  void add_coin(const Coin& c);
  void remove_coin(const ledger::OutPoint& op);

  ProtocolConfig cfg_;
  std::vector<Epoch> epochs_;
  Drbg rng_;
  medium::TagMasking masking_ = medium::TagMasking::kMasked;

  std::map<ledger::OutPoint, Coin> coins_;
  std::set<std::pair<std::uint64_t, ledger::OutPoint>> coins_by_amount_;
  std::set<hdw::Address> watched_;
  std::uint64_t wallet_cursor_ = 0;

  std::uint64_t cursor_ = 0;
  std::vector<SentTx> sent_;
  std::vector<BurnRecord> burns_;
  std::vector<QuarantineRecord> quarantine_;

  // Signal address -> (epoch, channel, counter) for the receiver's window.
  struct WatchSlot {
    std::uint32_t epoch;
    hdw::Channel channel;
    std::uint64_t counter;
  };
  std::map<hdw::Address, WatchSlot> watch_;
  std::map<std::tuple<std::uint32_t, int, std::uint64_t>, hdw::Address> watch_keys_;
};

// Per-transaction keystream XORed over MED payload bits so the carried bits
// look uniform whatever the message.
BitString med_whitening(const Hash256& k, std::uint64_t signal_counter, std::size_t bits);

}  // namespace stegoledger::session

#endif  // STEGOLEDGER_SESSION_HPP_
