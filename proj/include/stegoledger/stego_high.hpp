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
#ifndef STEGOLEDGER_STEGO_HIGH_HPP_
#define STEGOLEDGER_STEGO_HIGH_HPP_

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "stegoledger/aead.hpp"
#include "stegoledger/bytes.hpp"
#include "stegoledger/channel_config.hpp"
#include "stegoledger/random.hpp"
#include "stegoledger/stats.hpp"

// High-capacity channel: AES-GCM sealed frames cut into 160-bit fields, each
// placed verbatim where an output's hash160 would go.
//
// Frame plaintext, big-endian bit packing:
//   version:4 | total_len:16 | msg_id:12 | fragment_index:16 | body | padding
// The sealed frame (plaintext plus 16-byte tag) fills a whole number of
// 20-byte fields. Key and nonce come from the signal counter of the carrying
// transaction, so every fragment opens on its own.
namespace stegoledger::high {

inline constexpr std::size_t kFieldBytes = 20;
inline constexpr std::size_t kHeaderBytes = 6;
inline constexpr std::size_t kMaxMessageBytes = 8192;

enum class FrameType : std::uint8_t {
  kData = 1,
  kKeyRotation = 2,  // body: k' (32) || y' (32)
  kParamSwitch = 3,  // body: first MED counter (8) || channel config
};

struct FrameHeader {
  FrameType type = FrameType::kData;  // the 4-bit version field
  std::uint16_t total_len = 0;
  std::uint16_t msg_id = 0;  // 12 bits
  std::uint16_t fragment_index = 0;

  std::array<std::uint8_t, kHeaderBytes> pack() const;
  // Throws Error(kValidation) on an unknown version.
  static FrameHeader unpack(ByteView six);
  friend bool operator==(const FrameHeader&, const FrameHeader&) = default;
};

struct HighFrame {
  FrameHeader header;
  Bytes body;
  friend bool operator==(const HighFrame&, const HighFrame&) = default;
};

// Body bytes per fragment for cfg.max_outputs fields.
std::size_t fragment_capacity(const HighConfig& cfg);
// Fields used by a fragment with this many body bytes.
std::size_t fields_for_body(std::size_t body_bytes);

// Splits a message into frames; every fragment but the last is full. Throws
// Error(kValidation) above kMaxMessageBytes or for msg_id >= 4096.
std::vector<HighFrame> fragment(FrameType type, std::uint16_t msg_id, ByteView message, const HighConfig& cfg);

Hash256 frame_key(const Hash256& k, std::uint64_t signal_counter);
crypto::GcmNonce frame_nonce(std::uint64_t signal_counter);

// Refuses to hand out a (key, nonce) pair twice.
class NonceLedger {
 public:
  // Throws Error(kNonceReuse) when the counter was already claimed.
  void claim(std::uint64_t signal_counter);
  bool used(std::uint64_t signal_counter) const { return used_.count(signal_counter) != 0; }
  const std::set<std::uint64_t>& counters() const { return used_; }
  void restore(std::set<std::uint64_t> used) { used_ = std::move(used); }

 private:
  std::set<std::uint64_t> used_;
};

// Seals one frame for the transaction at signal_counter. Padding bytes come
// from pad_rng and sit inside the authenticated plaintext.
std::vector<Hash160> seal_frame(const Hash256& k, std::uint64_t signal_counter, const HighFrame& frame,
                                Drbg& pad_rng, NonceLedger& nonces);

// Throws Error(kAuthError) when the fields do not authenticate under the key
// for signal_counter, Error(kValidation) on a frame that authenticates but is
// malformed.
HighFrame open_frame(const Hash256& k, std::uint64_t signal_counter, std::span<const Hash160> fields,
                     const HighConfig& cfg);

struct Message {
  FrameType type = FrameType::kData;
  std::uint16_t msg_id = 0;
  Bytes payload;
};

// Collects fragments by msg_id in any order.
class Reassembler {
 public:
  explicit Reassembler(HighConfig cfg) : cfg_(cfg) {}

  // Returns the message once its last missing fragment arrives. Fragments of
  // recently completed messages are ignored.
  std::optional<Message> add(const HighFrame& frame);
  bool pending() const { return !partial_.empty(); }
  std::size_t pending_count() const { return partial_.size(); }

  struct Partial {
    FrameHeader first;
    std::map<std::uint16_t, Bytes> bodies;
  };
  const std::map<std::uint16_t, Partial>& partials() const { return partial_; }
  const std::deque<std::uint16_t>& completed() const { return completed_; }
  void restore(std::map<std::uint16_t, Partial> partial, std::deque<std::uint16_t> completed) {
    partial_ = std::move(partial);
    completed_ = std::move(completed);
  }

 private:
  HighConfig cfg_;
  std::map<std::uint16_t, Partial> partial_;
  std::deque<std::uint16_t> completed_;  // most recent last
};

// Encodes a message as consecutive transactions starting at first_counter.
struct SealedTx {
  std::uint64_t signal_counter = 0;
  std::vector<Hash160> fields;
};
std::vector<SealedTx> encode_high(const Hash256& k, ByteView message, std::uint16_t msg_id,
                                  std::uint64_t first_counter, const HighConfig& cfg, Drbg& pad_rng,
                                  NonceLedger& nonces);

// Opens and reassembles a data message. Throws Error(kAuthError) on any
// failing transaction, Error(kIncomplete) when fragments are missing.
Bytes decode_high(std::span<const SealedTx> txs, const Hash256& k, const HighConfig& cfg);

struct RandomnessReport {
  stats::TestResult monobit;
  stats::TestResult chi_square;
  double alpha = 0.01;
  bool pass = false;  // both p-values above alpha / 2
};

// Throws Error(kInsufficientSample) below 30 fields.
RandomnessReport randomness_check(std::span<const Hash160> fields, double alpha = 0.01);

}  // namespace stegoledger::high

#endif  // STEGOLEDGER_STEGO_HIGH_HPP_
