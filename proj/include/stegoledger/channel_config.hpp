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
#ifndef STEGOLEDGER_CHANNEL_CONFIG_HPP_
#define STEGOLEDGER_CHANNEL_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stegoledger/bytes.hpp"
#include "stegoledger/hdw.hpp"

namespace stegoledger {

// Which digest bits carry payload. Positions count from the least significant
// bit of the digest read as a 160-bit big-endian integer; the first listed
// position becomes the most significant bit of the extracted chunk.
class BitSelector {
 public:
  BitSelector() = default;
  // Throws Error(kValidation) on duplicates or positions >= 160.
  explicit BitSelector(std::vector<std::uint8_t> positions);
  // The m least significant digest bits: chunk == digest mod 2^m.
  static BitSelector lsb(int m);

  int width() const { return static_cast<int>(positions_.size()); }
  const std::vector<std::uint8_t>& positions() const { return positions_; }
  std::uint64_t extract(const Hash160& digest) const;
  // Copy of digest with every selected bit cleared.
  Hash160 clear_selected(const Hash160& digest) const;

  friend bool operator==(const BitSelector&, const BitSelector&) = default;

 private:
  std::vector<std::uint8_t> positions_;
};

enum class EmbedMode : std::uint8_t { kOrdered, kPermuted };

const char* to_string(EmbedMode mode);

// Medium-capacity channel parameters agreed out of band.
struct ChannelConfig {
  int n = 5;  // outputs per transaction, 2..20
  int m = 8;  // payload bits per address, 1..24
  EmbedMode mode = EmbedMode::kOrdered;
  std::vector<std::uint8_t> selector_positions;  // empty: the m LSBs
  std::uint64_t grind_cap = 0;                   // 0: 2^(m+8)

  // ceil(log2 n): slot tag width in permuted mode.
  int tag_bits() const;
  BitSelector selector() const;
  std::uint64_t effective_grind_cap() const;
  // Payload bits per transaction in the configured mode.
  int payload_bits() const;
  // Throws Error(kValidation).
  void validate() const;

  friend bool operator==(const ChannelConfig&, const ChannelConfig&) = default;
};

// High-capacity channel parameters.
struct HighConfig {
  int max_outputs = 6;                    // stego outputs per transaction
  std::uint8_t version = hdw::kP2pkhVersion;  // p2pkh or p2sh flavour of the outputs

  void validate() const;
  friend bool operator==(const HighConfig&, const HighConfig&) = default;
};

struct ProtocolConfig {
  ChannelConfig med;
  HighConfig high;
  int scan_window = 16;

  void validate() const;
  friend bool operator==(const ProtocolConfig&, const ProtocolConfig&) = default;
};

// Text key/value form, one `key = value` per line, '#' comments:
//   n, m, mode (ordered|permuted), bit_selector (lsb | comma list),
//   grind_cap, high_max_outputs, high_kind (p2pkh|p2sh), scan_window
ProtocolConfig parse_config(std::string_view text);
std::string format_config(const ProtocolConfig& cfg);

// Compact binary form of a ChannelConfig, used inside control frames.
Bytes serialize_channel_config(const ChannelConfig& cfg);
ChannelConfig parse_channel_config(ByteView data);

}  // namespace stegoledger

#endif  // STEGOLEDGER_CHANNEL_CONFIG_HPP_
