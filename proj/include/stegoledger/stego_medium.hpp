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
#ifndef STEGOLEDGER_STEGO_MEDIUM_HPP_
#define STEGOLEDGER_STEGO_MEDIUM_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "stegoledger/bits.hpp"
#include "stegoledger/channel_config.hpp"
#include "stegoledger/grind.hpp"
#include "stegoledger/hdw.hpp"

// Medium-capacity channel: payload chunks are carried in selected digest bits
// of ground HDW addresses.
//
// Ordered mode transmits n chunks of m bits in generation order.
//
// Permuted mode spends the top t = ceil(log2 n) chunk bits on a masked slot
// tag so the receiver can restore chunk order after the outputs are shuffled,
// then encodes floor(log2 n!) more bits in that shuffle.
namespace stegoledger::medium {

struct Capacity {
  double paper = 0.0;  // n*m + log2(n!)
  int ordered = 0;     // n*m
  int permuted = 0;    // n*(m-t) + floor(log2(n!)); 0 when m <= t
};

Capacity effective_capacity(const ChannelConfig& cfg);

// Unmasked tags exist only as a negative control for the statistics suite:
// they leave the slot numbers visible in the clear.
enum class TagMasking : std::uint8_t { kMasked, kUnmasked };

// First t bits of SHA-256(k || "tagmask" || signal counter || digest with the
// selected bits cleared).
std::uint64_t tag_mask(const Hash256& k, std::uint64_t signal_counter, const Hash160& cleared_digest, int t);

struct EmbedResult {
  std::vector<hdw::Address> outputs;       // transmission order
  std::vector<grind::GrindResult> grinds;  // parallel to outputs
  std::uint64_t next_grind = 1;            // first unused GRIND counter
  std::uint64_t attempts = 0;
};

// payload.size() must equal cfg.payload_bits(). Grinding starts at
// grind_start and only needs the public half of km.
EmbedResult embed(const hdw::KeyMaterial& km, const BitString& payload, const ChannelConfig& cfg,
                  std::uint64_t signal_counter, std::uint64_t grind_start,
                  TagMasking masking = TagMasking::kMasked);

// Inverse of embed. Throws Error(kTagCorruption) when permuted tags do not
// decode to a permutation, Error(kPermutationMismatch) on duplicate outputs or
// an order the encoder never produces, Error(kValidation) on a wrong count.
BitString extract(std::span<const hdw::Address> outputs, const hdw::KeyMaterial& km, const ChannelConfig& cfg,
                  std::uint64_t signal_counter, TagMasking masking = TagMasking::kMasked);

}  // namespace stegoledger::medium

#endif  // STEGOLEDGER_STEGO_MEDIUM_HPP_
