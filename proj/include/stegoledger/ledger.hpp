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
#ifndef STEGOLEDGER_LEDGER_HPP_
#define STEGOLEDGER_LEDGER_HPP_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stegoledger/bytes.hpp"
#include "stegoledger/hdw.hpp"
#include "stegoledger/random.hpp"

// A deterministic single-writer chain: transaction submission, block assembly
// with seeded decoy traffic, and verified reads. There is no proof of work;
// mining a block is a function call.
namespace stegoledger::ledger {

inline constexpr std::uint64_t kDefaultDust = 546;

enum class OutputKind : std::uint8_t { kP2pkh = 0, kP2sh = 1 };

OutputKind kind_for_version(std::uint8_t address_version);
std::uint8_t version_for_kind(OutputKind kind);

struct OutPoint {
  Hash256 txid{};
  std::uint32_t index = 0;
  friend auto operator<=>(const OutPoint&, const OutPoint&) = default;
};

struct TxInput {
  OutPoint prev;
  hdw::Address address;  // must equal the address of the spent output
  friend bool operator==(const TxInput&, const TxInput&) = default;
};

struct TxOutput {
  OutputKind kind = OutputKind::kP2pkh;
  Hash160 field{};  // an address digest, or raw high-channel bytes
  std::uint64_t amount = 0;

  hdw::Address address() const { return {field, version_for_kind(kind)}; }
  friend bool operator==(const TxOutput&, const TxOutput&) = default;
};

struct Transaction {
  std::uint8_t version = 1;
  std::vector<TxInput> inputs;
  std::vector<TxOutput> outputs;  // order is significant and preserved
  std::uint64_t fee = 0;

  Bytes serialize() const;
  // Throws Error(kValidation) on malformed bytes.
  static Transaction parse(ByteView data);
  Hash256 txid() const;  // sha256d(serialize())
  bool is_coinbase() const;
  std::uint64_t output_total() const;
  friend bool operator==(const Transaction&, const Transaction&) = default;
};

struct Block {
  std::uint64_t height = 0;
  Hash256 prev{};
  std::uint64_t timestamp = 0;
  std::vector<Transaction> txs;
  Hash256 hash{};

  Hash256 compute_hash() const;
  Bytes serialize() const;
  // Throws Error(kChainCorruption) when the bytes do not parse or the stored
  // hash does not match the contents.
  static Block parse(ByteView data);
  friend bool operator==(const Block&, const Block&) = default;
};

// Cover traffic mined alongside submitted transactions.
struct NoiseProfile {
  double rate = 4.0;  // decoy transactions per block
  double mean_outputs = 3.45;
  double sd_outputs = 1.2;
  int min_outputs = 1;
  int max_outputs = 30;
  double p2sh_fraction = 0.1;

  // Rounded normal draw, redrawn until it lands in [min_outputs, max_outputs].
  int sample_outputs(Drbg& rng) const;
};

struct LedgerOptions {
  std::uint64_t seed = 1;  // decoy wallet key and genesis
  std::uint64_t dust = kDefaultDust;
  std::uint64_t block_reward = 5'000'000'000;
  std::uint64_t genesis_pool = 2'100'000'000'000'000;
};

struct ScanHit {
  std::uint64_t height = 0;
  Transaction tx;
};

struct Conservation {
  std::uint64_t issued = 0;
  std::uint64_t unspent = 0;
  std::uint64_t fees = 0;
  bool holds() const { return issued == unspent + fees; }
};

class Ledger {
 public:
  explicit Ledger(LedgerOptions opts = {});

  // Opens a chain file, creating it (with genesis) when missing. Every block
  // record is re-hashed while loading. Mined blocks are appended to the file
  // and the mempool plus decoy wallet state go to "<path>.state".
  static Ledger open(const std::filesystem::path& path, LedgerOptions opts = {});
  // Reads and re-verifies a chain file without touching its state file.
  // Throws Error(kChainCorruption).
  static std::vector<Block> read_chain_file(const std::filesystem::path& path);
  // Same checks over the raw bytes of a chain file.
  static std::vector<Block> parse_chain(ByteView data);
  // The chain-file encoding of every block: u32 record length, then the block.
  Bytes chain_bytes() const;
  void save(const std::filesystem::path& path) const;

  // Validates and queues a transaction; identical resubmission returns the
  // same txid. Throws Error(kRejected).
  Hash256 submit(const Transaction& tx);

  // Drains the mempool into a new block with decoys interleaved at seeded
  // random positions. The coinbase pays reward_to, or the decoy wallet.
  const Block& mine_block(const NoiseProfile& noise, std::uint64_t seed,
                          const std::optional<hdw::Address>& reward_to = std::nullopt);

  // Confirmed non-coinbase transactions with an input address matching pred,
  // in chain order. Blocks are re-verified as they are read.
  std::vector<ScanHit> scan(std::uint64_t from_height, const std::function<bool(const hdw::Address&)>& pred) const;

  // Verified read of one block. Throws Error(kChainCorruption).
  const Block& block(std::uint64_t height) const;
  std::uint64_t tip_height() const { return blocks_.size() - 1; }
  std::size_t block_count() const { return blocks_.size(); }
  // Re-hashes every block and checks the links.
  void verify() const;

  const std::vector<Transaction>& mempool() const { return mempool_; }
  bool in_mempool(const Hash256& txid) const { return mempool_ids_.count(txid) != 0; }
  bool is_confirmed(const Hash256& txid) const { return confirmed_.count(txid) != 0; }
  // Unspent output, confirmed or created by a mempool transaction.
  std::optional<TxOutput> unspent(const OutPoint& op) const;
  bool is_decoy(const Transaction& tx) const;
  std::uint64_t dust() const { return opts_.dust; }
  Conservation conservation() const;

  // Canonical human-readable dump of every block.
  std::string export_text() const;

 private:
  void validate(const Transaction& tx) const;
  void apply_confirmed(const Transaction& tx);
  std::optional<Transaction> make_decoy(const NoiseProfile& noise, Drbg& rng);
  hdw::Address fresh_decoy_address(std::uint8_t version);
  void append_to_file(const std::filesystem::path& path, const Block& b) const;
  void write_state(const std::filesystem::path& chain) const;
  void load_state();

  LedgerOptions opts_;
  std::optional<hdw::KeyMaterial> decoy_key_;
  std::uint64_t decoy_counter_ = 1;
  std::set<Hash160> decoy_fields_;
  std::set<std::pair<std::uint64_t, OutPoint>> decoy_pool_;  // (amount, outpoint)

  std::vector<Block> blocks_;
  std::map<OutPoint, TxOutput> utxos_;
  std::map<Hash256, std::uint64_t> confirmed_;  // txid -> height
  std::vector<Transaction> mempool_;
  std::set<Hash256> mempool_ids_;
  std::map<OutPoint, TxOutput> pending_outputs_;
  std::set<OutPoint> pending_spent_;
  std::uint64_t issued_ = 0;
  std::uint64_t fees_ = 0;
  std::optional<std::filesystem::path> path_;
};

}  // namespace stegoledger::ledger

#endif  // STEGOLEDGER_LEDGER_HPP_
