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
#include "stegoledger/stego_medium.hpp"

#include <algorithm>
#include <set>

#include "stegoledger/errors.hpp"
#include "stegoledger/hash.hpp"
#include "stegoledger/permutation.hpp"

namespace stegoledger::medium {

namespace {

std::uint64_t low_mask(int bits) { return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1; }

void check_outputs(std::span<const hdw::Address> outputs, const ChannelConfig& cfg) {
  if (static_cast<int>(outputs.size()) != cfg.n) {
    throw Error(ErrorCode::kValidation,
                "expected " + std::to_string(cfg.n) + " outputs, got " + std::to_string(outputs.size()));
  }
}

}  // namespace

Capacity effective_capacity(const ChannelConfig& cfg) {
  Capacity c;
  c.paper = cfg.n * cfg.m + perm::perm_capacity_exact(cfg.n);
  c.ordered = cfg.n * cfg.m;
  const int t = cfg.tag_bits();
  c.permuted = cfg.m > t ? cfg.n * (cfg.m - t) + perm::perm_capacity_bits(cfg.n) : 0;
  return c;
}

std::uint64_t tag_mask(const Hash256& k, std::uint64_t signal_counter, const Hash160& cleared_digest, int t) {
  Writer w;
  w.bytes(k);
  w.bytes(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>("tagmask"), 7));
  w.u64(signal_counter);
  w.bytes(cleared_digest);
  Hash256 h = crypto::sha256(w.data());
  std::uint64_t top = 0;
  for (int i = 0; i < 8; ++i) top = (top << 8) | h[static_cast<std::size_t>(i)];
  return t == 0 ? 0 : top >> (64 - t);
}

EmbedResult embed(const hdw::KeyMaterial& km, const BitString& payload, const ChannelConfig& cfg,
                  std::uint64_t signal_counter, std::uint64_t grind_start, TagMasking masking) {
  cfg.validate();
  if (static_cast<int>(payload.size()) != cfg.payload_bits()) {
    throw Error(ErrorCode::kValidation, "payload must be exactly " + std::to_string(cfg.payload_bits()) + " bits");
  }
  const BitSelector selector = cfg.selector();
  const std::uint64_t cap = cfg.effective_grind_cap();
  const bool permuted = cfg.mode == EmbedMode::kPermuted;
  const int t = permuted ? cfg.tag_bits() : 0;
  const int data_bits = cfg.m - t;

  EmbedResult out;
  out.next_grind = grind_start;
  std::set<Hash160> seen;
  std::vector<grind::GrindResult> by_slot;
  for (int slot = 0; slot < cfg.n; ++slot) {
    const std::uint64_t want = payload.read(static_cast<std::size_t>(slot * data_bits), data_bits);
    grind::DigestPredicate match;
    if (permuted) {
      const Hash256 k = km.k();
      const bool masked = masking == TagMasking::kMasked;
      match = [&selector, want, slot, t, data_bits, k, masked, signal_counter](const Hash160& d) {
        const std::uint64_t chunk = selector.extract(d);
        if ((chunk & low_mask(data_bits)) != want) return false;
        std::uint64_t tag = chunk >> data_bits;
        if (masked) tag ^= tag_mask(k, signal_counter, selector.clear_selected(d), t);
        return tag == static_cast<std::uint64_t>(slot);
      };
    } else {
      match = [&selector, want](const Hash160& d) { return selector.extract(d) == want; };
    }
    // A repeated digest would break the canonical ordering; grind past it.
    for (;;) {
      grind::GrindResult r = grind::grind_parallel(km, match, out.next_grind, cap);
      out.attempts += r.attempts;
      out.next_grind = r.index.counter + 1;
      if (seen.insert(r.address.digest).second) {
        by_slot.push_back(r);
        break;
      }
    }
  }

  if (!permuted) {
    for (const auto& g : by_slot) out.outputs.push_back(g.address);
    out.grinds = std::move(by_slot);
    return out;
  }

  std::vector<hdw::Address> addrs;
  for (const auto& g : by_slot) addrs.push_back(g.address);
  const auto canon = perm::CanonicalSet::from(addrs);
  const int rank_bits = perm::perm_capacity_bits(cfg.n);
  const std::uint64_t v = payload.read(static_cast<std::size_t>(cfg.n * data_bits), rank_bits);
  out.outputs = perm::unrank(v, canon);
  for (const auto& a : out.outputs) {
    auto it = std::find_if(by_slot.begin(), by_slot.end(), [&a](const auto& g) { return g.address == a; });
    out.grinds.push_back(*it);
  }
  return out;
}

BitString extract(std::span<const hdw::Address> outputs, const hdw::KeyMaterial& km, const ChannelConfig& cfg,
                  std::uint64_t signal_counter, TagMasking masking) {
  cfg.validate();
  check_outputs(outputs, cfg);
  const BitSelector selector = cfg.selector();
  BitString bits;

  if (cfg.mode == EmbedMode::kOrdered) {
    std::set<Hash160> seen;
    for (const auto& a : outputs) {
      if (!seen.insert(a.digest).second) throw Error(ErrorCode::kPermutationMismatch, "duplicate output");
      bits.push(selector.extract(a.digest), cfg.m);
    }
    return bits;
  }

  const auto canon = perm::CanonicalSet::from(outputs);  // throws on duplicates
  const int t = cfg.tag_bits();
  const int data_bits = cfg.m - t;
  std::vector<std::int64_t> slot_payload(static_cast<std::size_t>(cfg.n), -1);
  for (const auto& a : outputs) {
    const std::uint64_t chunk = selector.extract(a.digest);
    std::uint64_t tag = chunk >> data_bits;
    if (masking == TagMasking::kMasked) tag ^= tag_mask(km.k(), signal_counter, selector.clear_selected(a.digest), t);
    if (tag >= static_cast<std::uint64_t>(cfg.n) || slot_payload[tag] >= 0) {
      throw Error(ErrorCode::kTagCorruption, "slot tags do not form a permutation");
    }
    slot_payload[tag] = static_cast<std::int64_t>(chunk & low_mask(data_bits));
  }
  for (auto p : slot_payload) bits.push(static_cast<std::uint64_t>(p), data_bits);

  const int rank_bits = perm::perm_capacity_bits(cfg.n);
  const perm::PermRank r = perm::rank(outputs, canon);
  if (r.value >> rank_bits) throw Error(ErrorCode::kPermutationMismatch, "output order outside the coded range");
  bits.push(r.value, rank_bits);
  return bits;
}

}  // namespace stegoledger::medium
