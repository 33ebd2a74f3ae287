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
#include "stegoledger/grind.hpp"

#include <omp.h>

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

#include "stegoledger/errors.hpp"
#include "stegoledger/hash.hpp"

namespace stegoledger::grind {

namespace {

// Per-thread batch: starts small so cheap targets do not pay for a full batch,
// then doubles. Each batch shares one field inversion.
constexpr std::uint64_t kFirstBatch = 8;
constexpr std::uint64_t kMaxBatch = 64;
constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

std::uint64_t search_end(std::uint64_t start, std::uint64_t cap) {
  return cap > kNone - start ? kNone : start + cap;
}

[[noreturn]] void exhausted(std::uint64_t cap) {
  throw Error(ErrorCode::kGrindExhausted, "no match within " + std::to_string(cap) + " attempts");
}

// First matching counter in [lo, hi), or kNone.
std::uint64_t scan_block(const hdw::KeyMaterial& km, const DigestPredicate& match, std::uint64_t lo,
                         std::uint64_t hi, hdw::Address& found) {
  const std::size_t count = static_cast<std::size_t>(hi - lo);
  std::vector<secp256k1::JacobianPoint> points(count);
  std::vector<std::optional<secp256k1::AffinePoint>> affine(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto h = hdw::index_scalar(km.k(), {hdw::Domain::kGrind, lo + i});
    points[i] = secp256k1::mul_generator(h).add_affine(km.gy());
  }
  secp256k1::batch_to_affine(points, affine);
  for (std::size_t i = 0; i < count; ++i) {
    if (!affine[i]) continue;  // degenerate index, skipped
    auto ser = affine[i]->serialize_compressed();
    Hash160 digest = crypto::hash160(ser);
    if (match(digest)) {
      found = hdw::Address{digest, hdw::kP2pkhVersion};
      return lo + i;
    }
  }
  return kNone;
}

}  // namespace

GrindResult grind_serial(const hdw::KeyMaterial& km, const DigestPredicate& match, std::uint64_t start,
                         std::uint64_t cap) {
  if (start == 0) throw Error(ErrorCode::kValidation, "grind counters start at 1");
  const std::uint64_t end = search_end(start, cap);
  for (std::uint64_t c = start; c < end; ++c) {
    hdw::DerivationIndex idx{hdw::Domain::kGrind, c};
    auto pub = hdw::try_derive_public(km, idx);
    if (!pub) continue;
    hdw::Address a = hdw::to_address(*pub);
    if (match(a.digest)) return {a, idx, c - start + 1};
  }
  exhausted(cap);
}

GrindResult grind_parallel(const hdw::KeyMaterial& km, const DigestPredicate& match, std::uint64_t start,
                           std::uint64_t cap) {
  if (start == 0) throw Error(ErrorCode::kValidation, "grind counters start at 1");
  const std::uint64_t end = search_end(start, cap);
  const int threads = std::max(1, omp_get_max_threads());
  std::uint64_t batch = kFirstBatch;

  for (std::uint64_t base = start; base < end;) {
    const std::uint64_t stride = batch * static_cast<std::uint64_t>(threads);
    std::uint64_t best = kNone;
    hdw::Address best_address;
#pragma omp parallel num_threads(threads)
    {
      const auto t = static_cast<std::uint64_t>(omp_get_thread_num());
      const std::uint64_t lo = base + t * batch;
      if (lo < end && lo >= base) {
        const std::uint64_t hi = end - lo > batch ? lo + batch : end;
        hdw::Address local;
        const std::uint64_t hit = scan_block(km, match, lo, hi, local);
        if (hit != kNone) {
#pragma omp critical(grind_best)
          if (hit < best) {
            best = hit;
            best_address = local;
          }
        }
      }
    }
    if (best != kNone) return {best_address, {hdw::Domain::kGrind, best}, best - start + 1};
    base = end - base > stride ? base + stride : end;
    batch = std::min(kMaxBatch, batch * 2);
  }
  exhausted(cap);
}

GrindResult grind(const hdw::KeyMaterial& km, const Chunk& target, const ChannelConfig& cfg, std::uint64_t start) {
  const BitSelector selector = cfg.selector();
  if (selector.width() < 64 && target.bits >> selector.width()) {
    throw Error(ErrorCode::kValidation, "target chunk wider than the selector");
  }
  const std::uint64_t want = target.bits;
  return grind_parallel(
      km, [&selector, want](const Hash160& d) { return selector.extract(d) == want; }, start,
      cfg.effective_grind_cap());
}

}  // namespace stegoledger::grind
