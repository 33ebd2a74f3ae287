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
#include "stegoledger/stego_high.hpp"

#include <algorithm>

#include "stegoledger/errors.hpp"
#include "stegoledger/hash.hpp"

namespace stegoledger::high {

namespace {

constexpr std::size_t kCompletedMemory = 2048;

bool known_type(unsigned v) { return v >= 1 && v <= 3; }

std::size_t body_length(const FrameHeader& h, std::size_t cap) {
  const std::size_t offset = static_cast<std::size_t>(h.fragment_index) * cap;
  if (h.total_len == 0) return 0;
  return std::min(cap, h.total_len - offset);
}

std::size_t fragment_count(std::size_t total_len, std::size_t cap) {
  return std::max<std::size_t>(1, (total_len + cap - 1) / cap);
}

}  // namespace

std::array<std::uint8_t, kHeaderBytes> FrameHeader::pack() const {
  const std::uint64_t v = (static_cast<std::uint64_t>(type) & 0xF) << 44 |
                          static_cast<std::uint64_t>(total_len) << 28 |
                          (static_cast<std::uint64_t>(msg_id) & 0xFFF) << 16 | fragment_index;
  std::array<std::uint8_t, kHeaderBytes> out{};
  for (std::size_t i = 0; i < kHeaderBytes; ++i) out[i] = static_cast<std::uint8_t>(v >> (8 * (5 - i)));
  return out;
}

FrameHeader FrameHeader::unpack(ByteView six) {
  if (six.size() < kHeaderBytes) throw Error(ErrorCode::kValidation, "short frame header");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < kHeaderBytes; ++i) v = (v << 8) | six[i];
  const auto version = static_cast<unsigned>(v >> 44);
  if (!known_type(version)) throw Error(ErrorCode::kValidation, "unknown frame version " + std::to_string(version));
  FrameHeader h;
  h.type = static_cast<FrameType>(version);
  h.total_len = static_cast<std::uint16_t>(v >> 28);
  h.msg_id = static_cast<std::uint16_t>((v >> 16) & 0xFFF);
  h.fragment_index = static_cast<std::uint16_t>(v);
  return h;
}

std::size_t fragment_capacity(const HighConfig& cfg) {
  return static_cast<std::size_t>(cfg.max_outputs) * kFieldBytes - kHeaderBytes - crypto::kGcmTagSize;
}

std::size_t fields_for_body(std::size_t body_bytes) {
  return (kHeaderBytes + body_bytes + crypto::kGcmTagSize + kFieldBytes - 1) / kFieldBytes;
}

std::vector<HighFrame> fragment(FrameType type, std::uint16_t msg_id, ByteView message, const HighConfig& cfg) {
  cfg.validate();
  if (message.size() > kMaxMessageBytes) {
    throw Error(ErrorCode::kValidation, "message exceeds " + std::to_string(kMaxMessageBytes) + " bytes");
  }
  if (msg_id > 0xFFF) throw Error(ErrorCode::kValidation, "msg_id is 12 bits");
  const std::size_t cap = fragment_capacity(cfg);
  const std::size_t count = fragment_count(message.size(), cap);
  std::vector<HighFrame> frames;
  for (std::size_t i = 0; i < count; ++i) {
    HighFrame f;
    f.header = {type, static_cast<std::uint16_t>(message.size()), msg_id, static_cast<std::uint16_t>(i)};
    const std::size_t lo = i * cap;
    const std::size_t hi = std::min(message.size(), lo + cap);
    f.body.assign(message.begin() + static_cast<std::ptrdiff_t>(lo), message.begin() + static_cast<std::ptrdiff_t>(hi));
    frames.push_back(std::move(f));
  }
  return frames;
}

Hash256 frame_key(const Hash256& k, std::uint64_t signal_counter) {
  Writer w;
  w.bytes(k);
  const std::string_view label = "highkey";
  w.bytes(ByteView(reinterpret_cast<const std::uint8_t*>(label.data()), label.size()));
  w.u64(signal_counter);
  return crypto::sha256(w.data());
}

crypto::GcmNonce frame_nonce(std::uint64_t signal_counter) {
  crypto::GcmNonce n{};
  for (int i = 0; i < 8; ++i) n[static_cast<std::size_t>(4 + i)] = static_cast<std::uint8_t>(signal_counter >> (8 * (7 - i)));
  return n;
}

void NonceLedger::claim(std::uint64_t signal_counter) {
  if (!used_.insert(signal_counter).second) {
    throw Error(ErrorCode::kNonceReuse, "signal counter " + std::to_string(signal_counter) + " already sealed");
  }
}

std::vector<Hash160> seal_frame(const Hash256& k, std::uint64_t signal_counter, const HighFrame& frame,
                                Drbg& pad_rng, NonceLedger& nonces) {
  const std::size_t n_fields = fields_for_body(frame.body.size());
  const std::size_t plain_len = n_fields * kFieldBytes - crypto::kGcmTagSize;
  Bytes plain;
  const auto header = frame.header.pack();
  plain.insert(plain.end(), header.begin(), header.end());
  plain.insert(plain.end(), frame.body.begin(), frame.body.end());
  Bytes pad(plain_len - plain.size());
  pad_rng.fill(pad);
  plain.insert(plain.end(), pad.begin(), pad.end());

  nonces.claim(signal_counter);
  const Bytes sealed = crypto::aes_gcm_seal(frame_key(k, signal_counter), frame_nonce(signal_counter), plain);
  std::vector<Hash160> fields(n_fields);
  for (std::size_t i = 0; i < n_fields; ++i) {
    std::copy_n(sealed.begin() + static_cast<std::ptrdiff_t>(i * kFieldBytes), kFieldBytes, fields[i].begin());
  }
  return fields;
}

HighFrame open_frame(const Hash256& k, std::uint64_t signal_counter, std::span<const Hash160> fields,
                     const HighConfig& cfg) {
  Bytes sealed;
  for (const auto& f : fields) sealed.insert(sealed.end(), f.begin(), f.end());
  if (sealed.size() < kHeaderBytes + crypto::kGcmTagSize) throw Error(ErrorCode::kAuthError, "too few fields");
  auto plain = crypto::aes_gcm_open(frame_key(k, signal_counter), frame_nonce(signal_counter), sealed);
  if (!plain) throw Error(ErrorCode::kAuthError, "frame does not authenticate");

  HighFrame f;
  f.header = FrameHeader::unpack(*plain);
  const std::size_t cap = fragment_capacity(cfg);
  if (f.header.fragment_index >= fragment_count(f.header.total_len, cap)) {
    throw Error(ErrorCode::kValidation, "fragment index beyond the message");
  }
  const std::size_t len = body_length(f.header, cap);
  if (kHeaderBytes + len > plain->size()) throw Error(ErrorCode::kValidation, "frame shorter than its body");
  f.body.assign(plain->begin() + kHeaderBytes, plain->begin() + static_cast<std::ptrdiff_t>(kHeaderBytes + len));
  return f;
}

std::optional<Message> Reassembler::add(const HighFrame& frame) {
  const auto& h = frame.header;
  if (std::find(completed_.begin(), completed_.end(), h.msg_id) != completed_.end()) return std::nullopt;
  const std::size_t cap = fragment_capacity(cfg_);
  auto& p = partial_[h.msg_id];
  if (p.bodies.empty()) {
    p.first = h;
  } else if (p.first.type != h.type || p.first.total_len != h.total_len) {
    throw Error(ErrorCode::kValidation, "fragment disagrees with earlier fragments of its message");
  }
  p.bodies.emplace(h.fragment_index, frame.body);
  if (p.bodies.size() < fragment_count(h.total_len, cap)) return std::nullopt;

  Message m{h.type, h.msg_id, {}};
  for (const auto& [idx, body] : p.bodies) m.payload.insert(m.payload.end(), body.begin(), body.end());
  partial_.erase(h.msg_id);
  completed_.push_back(h.msg_id);
  if (completed_.size() > kCompletedMemory) completed_.pop_front();
  return m;
}

std::vector<SealedTx> encode_high(const Hash256& k, ByteView message, std::uint16_t msg_id,
                                  std::uint64_t first_counter, const HighConfig& cfg, Drbg& pad_rng,
                                  NonceLedger& nonces) {
  std::vector<SealedTx> out;
  std::uint64_t counter = first_counter;
  for (const auto& f : fragment(FrameType::kData, msg_id, message, cfg)) {
    out.push_back({counter, seal_frame(k, counter, f, pad_rng, nonces)});
    ++counter;
  }
  return out;
}

Bytes decode_high(std::span<const SealedTx> txs, const Hash256& k, const HighConfig& cfg) {
  Reassembler r(cfg);
  for (const auto& tx : txs) {
    auto m = r.add(open_frame(k, tx.signal_counter, tx.fields, cfg));
    if (m) return std::move(m->payload);
  }
  throw Error(ErrorCode::kIncomplete, "message is missing fragments");
}

RandomnessReport randomness_check(std::span<const Hash160> fields, double alpha) {
  if (fields.size() < 30) throw Error(ErrorCode::kInsufficientSample, "need at least 30 fields");
  Bytes all;
  for (const auto& f : fields) all.insert(all.end(), f.begin(), f.end());
  RandomnessReport r;
  r.alpha = alpha;
  r.monobit = stats::monobit(all);
  r.chi_square = stats::byte_chi_square(all);
  r.pass = r.monobit.p_value > alpha / 2 && r.chi_square.p_value > alpha / 2;
  return r;
}

}  // namespace stegoledger::high
