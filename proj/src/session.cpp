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
#include "stegoledger/session.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

#include <json.hpp>

#include "stegoledger/hash.hpp"

namespace stegoledger::session {

namespace {

using nlohmann::json;

constexpr std::uint16_t kFileFormat = 1;
constexpr std::uint64_t kMedAmountSpread = 4000;
constexpr std::uint64_t kHighAmountSpread = 1000;

ByteView label(std::string_view s) { return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()}; }

BitString xor_bits(const BitString& a, const BitString& b) {
  BitString out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push(a[i] != b[i] ? 1 : 0, 1);
  return out;
}

int channel_key(hdw::Channel c) { return c == hdw::Channel::kHigh ? 0 : 1; }

void confirm_or_throw(const ledger::Ledger& chain, const Hash256& txid, const SendOptions& opts) {
  if (!opts.confirm) return;
  opts.confirm(txid);
  if (!chain.is_confirmed(txid)) {
    throw Error(ErrorCode::kIncomplete, "transaction " + to_hex(txid) + " not confirmed");
  }
}

}  // namespace

BitString med_whitening(const Hash256& k, std::uint64_t signal_counter, std::size_t bits) {
  Writer w;
  w.bytes(k);
  w.bytes(label("medwhite"));
  w.u64(signal_counter);
  Drbg stream(crypto::sha256(w.data()));
  Bytes buf((bits + 7) / 8);
  stream.fill(buf);
  return BitString::from_bytes(buf).slice(0, bits);
}

const ChannelConfig& Epoch::med_config_at(std::uint64_t counter) const {
  const ChannelConfig* cfg = &med_configs.front().second;
  for (const auto& [from, c] : med_configs) {
    if (from <= counter) cfg = &c;
  }
  return *cfg;
}

// ---------------------------------------------------------------------------
// Construction and wallet

Session::Session(const hdw::KeyMaterial& km, const ProtocolConfig& cfg, std::uint64_t seed)
    : cfg_(cfg), rng_(Drbg::from_label("session", seed)) {
  cfg_.validate();
  epochs_.emplace_back(km, cfg_);
}

Session Session::create(const hdw::KeyMaterial& km, const ProtocolConfig& cfg, std::uint64_t seed) {
  return Session(km, cfg, seed);
}

const ChannelConfig& Session::med_config() const { return epochs_.back().med_configs.back().second; }

hdw::Address Session::next_grind_address(Epoch& e) {
  for (;;) {
    auto pub = hdw::try_derive_public(e.km, {hdw::Domain::kGrind, e.next_grind++});
    if (pub) return hdw::to_address(*pub);
  }
}

hdw::Address Session::funding_address() {
  hdw::Address a = next_grind_address(epochs_.back());
  watched_.insert(a);
  return a;
}

void Session::add_coin(const Coin& c) {
  if (coins_.emplace(c.op, c).second) coins_by_amount_.insert({c.amount, c.op});
}

void Session::remove_coin(const ledger::OutPoint& op) {
  auto it = coins_.find(op);
  if (it == coins_.end()) return;
  coins_by_amount_.erase({it->second.amount, op});
  coins_.erase(it);
}

void Session::sync_wallet(const ledger::Ledger& chain) {
  for (std::uint64_t h = wallet_cursor_; h < chain.block_count(); ++h) {
    for (const auto& tx : chain.block(h).txs) {
      const Hash256 id = tx.txid();
      for (std::uint32_t i = 0; i < tx.outputs.size(); ++i) {
        const hdw::Address a = tx.outputs[i].address();
        const ledger::OutPoint op{id, i};
        if (watched_.count(a) && chain.unspent(op)) add_coin({op, tx.outputs[i].amount, a});
      }
    }
  }
  wallet_cursor_ = chain.block_count();
  // Coins spent elsewhere, e.g. by another copy of this session.
  std::vector<ledger::OutPoint> gone;
  for (const auto& [op, c] : coins_) {
    if (!chain.unspent(op)) gone.push_back(op);
  }
  for (const auto& op : gone) remove_coin(op);
}

std::uint64_t Session::balance() const {
  std::uint64_t s = 0;
  for (const auto& [op, c] : coins_) s += c.amount;
  return s;
}

Session::Funding Session::fund(Epoch& e, const hdw::Address& signal, std::uint64_t amount) {
  const std::uint64_t need = amount + kPrefundFee;
  Funding f;
  std::uint64_t total = 0;
  for (auto it = coins_by_amount_.rbegin(); it != coins_by_amount_.rend() && total < need; ++it) {
    f.spent.push_back(coins_.at(it->second));
    total += it->first;
  }
  if (total < need) {
    throw Error(ErrorCode::kValidation,
                "insufficient funds: need " + std::to_string(need) + ", have " + std::to_string(total));
  }
  for (const auto& c : f.spent) f.prefund.inputs.push_back({c.op, c.address});
  f.prefund.outputs.push_back({ledger::kind_for_version(signal.version), signal.digest, amount});
  f.prefund.fee = kPrefundFee;
  const std::uint64_t change = total - need;
  if (change >= ledger::kDefaultDust) {
    const hdw::Address to = next_grind_address(e);
    f.prefund.outputs.push_back({ledger::OutputKind::kP2pkh, to.digest, change});
    f.change = Coin{{}, change, to};
  } else {
    f.prefund.fee += change;
  }
  return f;
}

Hash256 Session::submit_pair(ledger::Ledger& chain, Funding& f, ledger::Transaction& stego, const SendOptions&) {
  const Hash256 pid = chain.submit(f.prefund);
  for (const auto& c : f.spent) remove_coin(c.op);
  if (f.change) {
    f.change->op = {pid, 1};
    add_coin(*f.change);
  }
  stego.inputs.at(0).prev = {pid, 0};
  try {
    return chain.submit(stego);
  } catch (const Error&) {
    // The signal output stays ours; keep it spendable.
    const auto& out = f.prefund.outputs[0];
    add_coin({{pid, 0}, out.amount, out.address()});
    throw;
  }
}

// ---------------------------------------------------------------------------
// Sending

Hash256 Session::send_med_tx(ledger::Ledger& chain, const BitString& payload, const SendOptions& opts) {
  Epoch& e = epochs_.back();
  const auto epoch_index = static_cast<std::uint32_t>(epochs_.size() - 1);
  const std::uint64_t counter = e.next_med;
  const ChannelConfig& cfg = e.med_config_at(counter);

  std::vector<std::uint64_t> amounts;
  std::uint64_t sum = kStegoFee;
  for (int i = 0; i < cfg.n; ++i) {
    amounts.push_back(ledger::kDefaultDust + rng_.below(kMedAmountSpread));
    sum += amounts.back();
  }
  const hdw::Address signal = hdw::signal_address(e.km, hdw::Channel::kMed, counter);
  Funding f = fund(e, signal, sum);

  const BitString carried = xor_bits(payload, med_whitening(e.km.k(), counter, payload.size()));
  const medium::EmbedResult res = medium::embed(e.km, carried, cfg, counter, e.next_grind, masking_);
  e.next_grind = res.next_grind;

  ledger::Transaction stego;
  stego.inputs.push_back({{}, signal});
  for (std::size_t i = 0; i < res.outputs.size(); ++i) {
    stego.outputs.push_back({ledger::OutputKind::kP2pkh, res.outputs[i].digest, amounts[i]});
  }
  stego.fee = kStegoFee;
  const Hash256 txid = submit_pair(chain, f, stego, opts);
  e.next_med = counter + 1;

  SentTx rec{txid, hdw::Channel::kMed, epoch_index, counter, {}};
  for (std::uint32_t i = 0; i < res.outputs.size(); ++i) {
    rec.grind_counters.push_back(res.grinds[i].index.counter);
    add_coin({{txid, i}, amounts[i], res.outputs[i]});  // the sender owns these
  }
  sent_.push_back(std::move(rec));
  confirm_or_throw(chain, txid, opts);
  return txid;
}

std::vector<Hash256> Session::send_high_frames(ledger::Ledger& chain, high::FrameType type, ByteView body,
                                               const SendOptions& opts) {
  Epoch& e = epochs_.back();
  const auto epoch_index = static_cast<std::uint32_t>(epochs_.size() - 1);
  const auto frames = high::fragment(type, e.next_msg_id, body, cfg_.high);
  e.next_msg_id = static_cast<std::uint16_t>((e.next_msg_id + 1) & 0xFFF);

  std::vector<Hash256> ids;
  const auto kind = ledger::kind_for_version(cfg_.high.version);
  for (const auto& frame : frames) {
    // A HIGH counter is never reused once sealed, even if submission fails.
    const std::uint64_t counter = e.next_high++;
    const auto fields = high::seal_frame(e.km.k(), counter, frame, rng_, e.nonces);

    ledger::Transaction stego;
    const hdw::Address signal = hdw::signal_address(e.km, hdw::Channel::kHigh, counter);
    stego.inputs.push_back({{}, signal});
    std::uint64_t sum = kStegoFee;
    for (const auto& field : fields) {
      stego.outputs.push_back({kind, field, ledger::kDefaultDust + rng_.below(kHighAmountSpread)});
      sum += stego.outputs.back().amount;
    }
    stego.fee = kStegoFee;
    Funding f = fund(e, signal, sum);
    const Hash256 txid = submit_pair(chain, f, stego, opts);
    for (std::uint32_t i = 0; i < stego.outputs.size(); ++i) burns_.push_back({txid, i, stego.outputs[i].amount});
    sent_.push_back({txid, hdw::Channel::kHigh, epoch_index, counter, {}});
    ids.push_back(txid);
    confirm_or_throw(chain, txid, opts);
  }
  return ids;
}

std::vector<Hash256> Session::send_message(ledger::Ledger& chain, ByteView message, hdw::Channel channel,
                                           const SendOptions& opts) {
  if (channel == hdw::Channel::kHigh) return send_high_frames(chain, high::FrameType::kData, message, opts);

  if (message.size() > kMaxMedMessage) throw Error(ErrorCode::kValidation, "MED messages are limited to 65535 bytes");
  const ChannelConfig& cfg = med_config();
  const auto per_tx = static_cast<std::size_t>(cfg.payload_bits());
  BitString framed;
  framed.push(message.size(), 16);
  framed.append(BitString::from_bytes(message));
  while (framed.size() % per_tx) framed.push(rng_.below(2), 1);

  std::vector<Hash256> ids;
  for (std::size_t off = 0; off < framed.size(); off += per_tx) {
    try {
      ids.push_back(send_med_tx(chain, framed.slice(off, per_tx), opts));
    } catch (const Error& err) {
      // Leave a counter gap so the receiver discards the partial message.
      if (!ids.empty() && err.code() != ErrorCode::kIncomplete) ++epochs_.back().next_med;
      throw;
    }
  }
  return ids;
}

hdw::KeyMaterial Session::rotate_keys(ledger::Ledger& chain, const SendOptions& opts) {
  const hdw::KeyMaterial fresh = hdw::KeyMaterial::generate(rng_);
  Writer body;
  body.bytes(fresh.k());
  body.bytes(fresh.y()->to_bytes());
  const ChannelConfig carried = med_config();
  send_high_frames(chain, high::FrameType::kKeyRotation, body.data(), opts);
  Epoch next(fresh, cfg_);
  next.med_configs = {{1, carried}};
  epochs_.push_back(std::move(next));
  return fresh;
}

void Session::switch_params(ledger::Ledger& chain, const ChannelConfig& cfg, const SendOptions& opts) {
  cfg.validate();
  const std::uint64_t from = epochs_.back().next_med;
  Writer body;
  body.u64(from);
  body.bytes(serialize_channel_config(cfg));
  send_high_frames(chain, high::FrameType::kParamSwitch, body.data(), opts);
  auto& configs = epochs_.back().med_configs;
  if (configs.back().first == from) {
    configs.back().second = cfg;
  } else {
    configs.emplace_back(from, cfg);
  }
}

// ---------------------------------------------------------------------------
// Receiving

void Session::refresh_watch() {
  const std::uint32_t n = static_cast<std::uint32_t>(epochs_.size());
  const std::uint32_t first_active = n >= 2 ? n - 2 : 0;
  const auto window = static_cast<std::uint64_t>(cfg_.scan_window);

  // Drop slots that fell behind their counter or belong to retired epochs.
  for (auto it = watch_keys_.begin(); it != watch_keys_.end();) {
    const auto [ep, ch, counter] = it->first;
    const Epoch& e = epochs_[ep];
    const std::uint64_t lo = ch == channel_key(hdw::Channel::kHigh) ? e.expect_high : e.expect_med;
    if (ep < first_active || counter < lo) {
      watch_.erase(it->second);
      it = watch_keys_.erase(it);
    } else {
      ++it;
    }
  }
  for (std::uint32_t ep = first_active; ep < n; ++ep) {
    const Epoch& e = epochs_[ep];
    for (auto ch : {hdw::Channel::kHigh, hdw::Channel::kMed}) {
      const std::uint64_t lo = ch == hdw::Channel::kHigh ? e.expect_high : e.expect_med;
      for (std::uint64_t c = lo; c < lo + window; ++c) {
        const auto key = std::make_tuple(ep, channel_key(ch), c);
        if (watch_keys_.count(key)) continue;
        const hdw::Address a = hdw::signal_address(e.km, ch, c);
        watch_keys_.emplace(key, a);
        watch_.emplace(a, WatchSlot{ep, ch, c});
      }
    }
  }
}

void Session::process_med(const ledger::Transaction& tx, std::uint64_t height, std::uint32_t epoch,
                          std::uint64_t counter, std::vector<Received>& out) {
  Epoch& e = epochs_[epoch];
  const Hash256 txid = tx.txid();
  if (counter > e.expect_med && !e.med_bits.empty()) {
    quarantine_.push_back({height, txid, hdw::Channel::kMed, epoch, counter, ErrorCode::kIncomplete,
                           "counter gap; partial message dropped"});
    e.med_bits.clear();
  }
  e.expect_med = counter + 1;
  const ChannelConfig& cfg = e.med_config_at(counter);

  std::vector<hdw::Address> outputs;
  for (const auto& o : tx.outputs) outputs.push_back(o.address());
  BitString bits;
  try {
    bits = medium::extract(outputs, e.km, cfg, counter, masking_);
  } catch (const Error& err) {
    quarantine_.push_back({height, txid, hdw::Channel::kMed, epoch, counter, err.code(), err.what()});
    e.med_bits.clear();
    return;
  }
  e.med_bits.append(xor_bits(bits, med_whitening(e.km.k(), counter, bits.size())));
  if (e.med_bits.size() < 16) return;
  const std::size_t len = e.med_bits.read(0, 16);
  if (e.med_bits.size() < 16 + 8 * len) return;
  out.push_back({hdw::Channel::kMed, e.med_bits.slice(16, 8 * len).to_bytes(), epoch, height});
  e.med_bits.clear();  // the rest is padding
}

void Session::process_high(const ledger::Transaction& tx, std::uint64_t height, std::uint32_t epoch,
                           std::uint64_t counter, std::vector<Received>& out) {
  Epoch& e = epochs_[epoch];
  e.expect_high = counter + 1;
  std::vector<Hash160> fields;
  for (const auto& o : tx.outputs) fields.push_back(o.field);
  try {
    const high::HighFrame frame = high::open_frame(e.km.k(), counter, fields, cfg_.high);
    auto m = e.reassembler.add(frame);
    if (!m) return;
    if (m->type == high::FrameType::kData) {
      out.push_back({hdw::Channel::kHigh, std::move(m->payload), epoch, height});
    } else {
      apply_control(*m, epoch);
    }
  } catch (const Error& err) {
    quarantine_.push_back({height, tx.txid(), hdw::Channel::kHigh, epoch, counter, err.code(), err.what()});
  }
}

void Session::apply_control(const high::Message& m, std::uint32_t epoch) {
  Reader r(m.payload);
  if (m.type == high::FrameType::kKeyRotation) {
    const Hash256 k = r.array<32>();
    auto y = secp256k1::Scalar::from_bytes(r.bytes(32));
    if (!r.done() || !y) throw Error(ErrorCode::kValidation, "malformed rotation frame");
    const hdw::KeyMaterial km = hdw::KeyMaterial::from_private(k, *y);
    for (const auto& e : epochs_) {
      if (e.km.k() == km.k() && e.km.gy() == km.gy()) return;  // replayed
    }
    Epoch next(km, cfg_);
    next.med_configs = {{1, epochs_[epoch].med_configs.back().second}};
    epochs_.push_back(std::move(next));
    return;
  }
  const std::uint64_t from = r.u64();
  const ByteView rest = r.bytes(r.remaining());
  ChannelConfig cfg = parse_channel_config(rest);
  auto& configs = epochs_[epoch].med_configs;
  auto it = std::find_if(configs.begin(), configs.end(), [from](const auto& p) { return p.first >= from; });
  if (it != configs.end() && it->first == from) {
    it->second = cfg;
  } else {
    configs.insert(it, {from, cfg});
  }
}

std::vector<Received> Session::detect_and_receive(const ledger::Ledger& chain) {
  std::vector<Received> out;
  for (std::uint64_t h = cursor_; h < chain.block_count(); ++h) {
    const ledger::Block& b = chain.block(h);
    refresh_watch();
    for (const auto& tx : b.txs) {
      if (tx.is_coinbase()) continue;
      for (const auto& in : tx.inputs) {
        auto it = watch_.find(in.address);
        if (it == watch_.end()) continue;
        const WatchSlot slot = it->second;
        if (slot.channel == hdw::Channel::kMed) {
          process_med(tx, h, slot.epoch, slot.counter, out);
        } else {
          process_high(tx, h, slot.epoch, slot.counter, out);
        }
        refresh_watch();
        break;
      }
    }
    cursor_ = h + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

json outpoint_json(const ledger::OutPoint& op) { return json::array({to_hex(op.txid), op.index}); }

ledger::OutPoint outpoint_from(const json& j) {
  return {array_from_hex<32>(j.at(0).get<std::string>()), j.at(1).get<std::uint32_t>()};
}

}  // namespace

Bytes Session::serialize() const {
  json j;
  j["config"] = format_config(cfg_);
  j["rng_seed"] = to_hex(rng_.seed());
  j["rng_position"] = rng_.position();
  j["masking"] = masking_ == medium::TagMasking::kMasked ? "masked" : "unmasked";
  j["cursor"] = cursor_;
  j["wallet_cursor"] = wallet_cursor_;

  auto& eps = j["epochs"] = json::array();
  for (const auto& e : epochs_) {
    json ej;
    ej["key"] = hdw::format_key_file(e.km, e.km.has_private());
    ej["next_high"] = e.next_high;
    ej["next_med"] = e.next_med;
    ej["next_grind"] = e.next_grind;
    ej["next_msg_id"] = e.next_msg_id;
    ej["nonces"] = e.nonces.counters();
    ej["expect_high"] = e.expect_high;
    ej["expect_med"] = e.expect_med;
    ej["med_bits"] = e.med_bits.to_string();
    auto& cfgs = ej["med_configs"] = json::array();
    for (const auto& [from, c] : e.med_configs) cfgs.push_back(json::array({from, to_hex(serialize_channel_config(c))}));
    auto& parts = ej["partials"] = json::array();
    for (const auto& [id, p] : e.reassembler.partials()) {
      json pj;
      pj["header"] = to_hex(p.first.pack());
      auto& bodies = pj["bodies"] = json::array();
      for (const auto& [idx, body] : p.bodies) bodies.push_back(json::array({idx, to_hex(body)}));
      parts.push_back(pj);
    }
    ej["completed"] = e.reassembler.completed();
    eps.push_back(ej);
  }

  auto& coins = j["coins"] = json::array();
  for (const auto& [op, c] : coins_) coins.push_back(json::array({outpoint_json(op), c.amount, c.address.text()}));
  auto& watched = j["watched"] = json::array();
  for (const auto& a : watched_) watched.push_back(a.text());
  auto& sent = j["sent"] = json::array();
  for (const auto& s : sent_) {
    sent.push_back(json::array({to_hex(s.txid), channel_key(s.channel), s.epoch, s.signal_counter, s.grind_counters}));
  }
  auto& burns = j["burns"] = json::array();
  for (const auto& b : burns_) burns.push_back(json::array({to_hex(b.txid), b.index, b.amount}));
  auto& quarantine = j["quarantine"] = json::array();
  for (const auto& q : quarantine_) {
    quarantine.push_back(json::array({q.height, to_hex(q.txid), channel_key(q.channel), q.epoch, q.counter,
                                      static_cast<int>(q.code), q.detail}));
  }

  Writer w;
  w.bytes(label("SSBS"));
  w.u16(kFileFormat);
  w.bytes(json::to_cbor(j));
  return std::move(w).take();
}

Session Session::parse(ByteView data) {
  Reader r(data);
  const ByteView magic = r.bytes(4);
  if (!std::equal(magic.begin(), magic.end(), label("SSBS").begin())) {
    throw Error(ErrorCode::kValidation, "not a session file");
  }
  if (r.u16() != kFileFormat) throw Error(ErrorCode::kValidation, "unsupported session file version");
  const ByteView body = r.bytes(r.remaining());
  try {
    const json j = json::from_cbor(body.begin(), body.end());
    const ProtocolConfig cfg = parse_config(j.at("config").get<std::string>());
    std::vector<Epoch> epochs;
    for (const auto& ej : j.at("epochs")) {
      Epoch e(hdw::parse_key_file(ej.at("key").get<std::string>()), cfg);
      e.next_high = ej.at("next_high");
      e.next_med = ej.at("next_med");
      e.next_grind = ej.at("next_grind");
      e.next_msg_id = ej.at("next_msg_id");
      e.nonces.restore(ej.at("nonces").get<std::set<std::uint64_t>>());
      e.expect_high = ej.at("expect_high");
      e.expect_med = ej.at("expect_med");
      e.med_bits = BitString::from_string(ej.at("med_bits").get<std::string>());
      e.med_configs.clear();
      for (const auto& c : ej.at("med_configs")) {
        e.med_configs.emplace_back(c.at(0).get<std::uint64_t>(), parse_channel_config(from_hex(c.at(1).get<std::string>())));
      }
      std::map<std::uint16_t, high::Reassembler::Partial> partials;
      for (const auto& pj : ej.at("partials")) {
        high::Reassembler::Partial p;
        p.first = high::FrameHeader::unpack(from_hex(pj.at("header").get<std::string>()));
        for (const auto& b : pj.at("bodies")) p.bodies.emplace(b.at(0).get<std::uint16_t>(), from_hex(b.at(1).get<std::string>()));
        partials.emplace(p.first.msg_id, std::move(p));
      }
      e.reassembler.restore(std::move(partials), ej.at("completed").get<std::deque<std::uint16_t>>());
      epochs.push_back(std::move(e));
    }
    if (epochs.empty()) throw Error(ErrorCode::kValidation, "session has no key epochs");

    Session s(epochs.front().km, cfg, 0);
    s.epochs_ = std::move(epochs);
    s.rng_ = Drbg(array_from_hex<32>(j.at("rng_seed").get<std::string>()), j.at("rng_position").get<std::uint64_t>());
    s.masking_ = j.at("masking") == "unmasked" ? medium::TagMasking::kUnmasked : medium::TagMasking::kMasked;
    s.cursor_ = j.at("cursor");
    s.wallet_cursor_ = j.at("wallet_cursor");
    for (const auto& c : j.at("coins")) {
      s.add_coin({outpoint_from(c.at(0)), c.at(1).get<std::uint64_t>(), hdw::Address::parse(c.at(2).get<std::string>())});
    }
    for (const auto& a : j.at("watched")) s.watched_.insert(hdw::Address::parse(a.get<std::string>()));
    for (const auto& sj : j.at("sent")) {
      s.sent_.push_back({array_from_hex<32>(sj.at(0).get<std::string>()),
                         sj.at(1).get<int>() == 0 ? hdw::Channel::kHigh : hdw::Channel::kMed, sj.at(2).get<std::uint32_t>(),
                         sj.at(3).get<std::uint64_t>(), sj.at(4).get<std::vector<std::uint64_t>>()});
    }
    for (const auto& b : j.at("burns")) {
      s.burns_.push_back({array_from_hex<32>(b.at(0).get<std::string>()), b.at(1).get<std::uint32_t>(), b.at(2).get<std::uint64_t>()});
    }
    for (const auto& q : j.at("quarantine")) {
      s.quarantine_.push_back({q.at(0).get<std::uint64_t>(), array_from_hex<32>(q.at(1).get<std::string>()),
                               q.at(2).get<int>() == 0 ? hdw::Channel::kHigh : hdw::Channel::kMed,
                               q.at(3).get<std::uint32_t>(), q.at(4).get<std::uint64_t>(),
                               static_cast<ErrorCode>(q.at(5).get<int>()), q.at(6).get<std::string>()});
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kValidation, std::string("corrupt session file: ") + e.what());
  }
}

void Session::save(const std::filesystem::path& path) const {
  const Bytes raw = serialize();
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp);
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw Error(ErrorCode::kIo, "write failed on " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

Session Session::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  const Bytes raw(std::istreambuf_iterator<char>(in), {});
  return parse(raw);
}

}  // namespace stegoledger::session
