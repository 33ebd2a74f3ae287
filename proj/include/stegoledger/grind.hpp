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
#ifndef STEGOLEDGER_GRIND_HPP_
#define STEGOLEDGER_GRIND_HPP_

#include <cstdint>
#include <functional>

#include "stegoledger/channel_config.hpp"
#include "stegoledger/hdw.hpp"

// Address grinding: walk GRIND-domain derivation counters upward until the
// derived address satisfies a predicate. Nothing is ever written into a
// digest; every accepted address is a genuine HDW address.
namespace stegoledger::grind {

using DigestPredicate = std::function<bool(const Hash160&)>;

struct Chunk {
  std::uint64_t bits = 0;  // < 2^m
  int slot = 0;
};

struct GrindResult {
  hdw::Address address;
  hdw::DerivationIndex index;  // GRIND domain
  std::uint64_t attempts = 0;  // index.counter - start + 1
};

// Reference kernel: one derivation at a time through the public hdw API.
// Counters [start, start + cap) are tried; throws Error(kGrindExhausted) past that.
GrindResult grind_serial(const hdw::KeyMaterial& km, const DigestPredicate& match, std::uint64_t start,
                         std::uint64_t cap);

// OpenMP kernel: threads take disjoint counter blocks, derive them in batches
// with a shared field inversion, and the smallest matching counter wins. The
// result is identical to grind_serial for every input.
GrindResult grind_parallel(const hdw::KeyMaterial& km, const DigestPredicate& match, std::uint64_t start,
                           std::uint64_t cap);

// Smallest counter >= start whose selected bits equal target.bits, searched
// within cfg.effective_grind_cap() attempts.
GrindResult grind(const hdw::KeyMaterial& km, const Chunk& target, const ChannelConfig& cfg, std::uint64_t start);

}  // namespace stegoledger::grind

#endif  // STEGOLEDGER_GRIND_HPP_
