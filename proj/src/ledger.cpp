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
#include "stegoledger/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "stegoledger/errors.hpp"
#include "stegoledger/hash.hpp"

namespace stegoledger::ledger {

namespace {

constexpr std::uint64_t kGenesisTime = 1'700'000'000;
constexpr std::uint64_t kBlockInterval = 600;
constexpr std::uint32_t kMaxRecord = 1u << 30;

[[noreturn]] void reject(const std::string& why) { throw Error(ErrorCode::kRejected, why); }

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > UINT64_MAX - b) reject("amount overflow");
  return a + b;
}

Transaction coinbase(std::uint64_t height, const hdw::Address& to, std::uint64_t amount) {
  Transaction tx;
  tx.inputs.push_back({OutPoint{Hash256{}, static_cast<std::uint32_t>(height)}, hdw::Address{}});
  tx.outputs.push_back({kind_for_version(to.version), to.digest, amount});
  return tx;
}

std::filesystem::path state_path(const std::filesystem::path& chain) {
  auto p = chain;
  p += ".state";
  return p;
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

OutputKind kind_for_version(std::uint8_t address_version) {
  if (address_version == hdw::kP2pkhVersion) return OutputKind::kP2pkh;
  if (address_version == hdw::kP2shVersion) return OutputKind::kP2sh;
  throw Error(ErrorCode::kValidation, "unsupported address version");
}

std::uint8_t version_for_kind(OutputKind kind) {
  return kind == OutputKind::kP2sh ? hdw::kP2shVersion : hdw::kP2pkhVersion;
}

// ---------------------------------------------------------------------------
// Transaction / Block encoding

Bytes Transaction::serialize() const {
  Writer w;
  w.u8(version);
  w.u16(static_cast<std::uint16_t>(inputs.size()));
  for (const auto& in : inputs) {
    w.bytes(in.prev.txid);
    w.u32(in.prev.index);
    w.u8(in.address.version);
    w.bytes(in.address.digest);
  }
  w.u16(static_cast<std::uint16_t>(outputs.size()));
  for (const auto& out : outputs) {
    w.u8(static_cast<std::uint8_t>(out.kind));
    w.bytes(out.field);
    w.u64(out.amount);
  }
  w.u64(fee);
  return std::move(w).take();
}

Transaction Transaction::parse(ByteView data) {
  Reader r(data);
  Transaction tx;
  tx.version = r.u8();
  if (tx.version != 1) throw Error(ErrorCode::kValidation, "unknown transaction version");
  const std::uint16_t nin = r.u16();
  for (std::uint16_t i = 0; i < nin; ++i) {
    TxInput in;
    in.prev.txid = r.array<32>();
    in.prev.index = r.u32();
    in.address.version = r.u8();
    in.address.digest = r.array<20>();
    tx.inputs.push_back(in);
  }
  const std::uint16_t nout = r.u16();
  for (std::uint16_t i = 0; i < nout; ++i) {
    TxOutput out;
    const std::uint8_t kind = r.u8();
    if (kind > 1) throw Error(ErrorCode::kValidation, "unknown output kind");
    out.kind = static_cast<OutputKind>(kind);
    out.field = r.array<20>();
    out.amount = r.u64();
    tx.outputs.push_back(out);
  }
  tx.fee = r.u64();
  if (!r.done()) throw Error(ErrorCode::kValidation, "trailing bytes after transaction");
  return tx;
}

Hash256 Transaction::txid() const { return crypto::sha256d(serialize()); }

bool Transaction::is_coinbase() const { return inputs.size() == 1 && inputs[0].prev.txid == Hash256{}; }

std::uint64_t Transaction::output_total() const {
  std::uint64_t s = 0;
  for (const auto& o : outputs) s = checked_add(s, o.amount);
  return s;
}

namespace {

void write_block_body(Writer& w, const Block& b) {
  w.u64(b.height);
  w.bytes(b.prev);
  w.u64(b.timestamp);
  w.u32(static_cast<std::uint32_t>(b.txs.size()));
  for (const auto& tx : b.txs) {
    const Bytes raw = tx.serialize();
    w.u32(static_cast<std::uint32_t>(raw.size()));
    w.bytes(raw);
  }
}

}  // namespace

Hash256 Block::compute_hash() const {
  Writer w;
  write_block_body(w, *this);
  return crypto::sha256d(w.data());
}

Bytes Block::serialize() const {
  Writer w;
  write_block_body(w, *this);
  w.bytes(hash);
  return std::move(w).take();
}

Block Block::parse(ByteView data) {
  Block b;
  try {
    Reader r(data);
    b.height = r.u64();
    b.prev = r.array<32>();
    b.timestamp = r.u64();
    const std::uint32_t count = r.u32();
    if (count > r.remaining()) throw Error(ErrorCode::kValidation, "transaction count exceeds record");
    for (std::uint32_t i = 0; i < count; ++i) {
      const std::uint32_t len = r.u32();
      b.txs.push_back(Transaction::parse(r.bytes(len)));
    }
    b.hash = r.array<32>();
    if (!r.done()) throw Error(ErrorCode::kValidation, "trailing bytes after block");
  } catch (const Error& e) {
    throw Error(ErrorCode::kChainCorruption, std::string("unparseable block: ") + e.what());
  }
  if (b.compute_hash() != b.hash) {
    throw Error(ErrorCode::kChainCorruption, "block " + std::to_string(b.height) + " hash mismatch");
  }
  return b;
}

int NoiseProfile::sample_outputs(Drbg& rng) const {
  for (;;) {
    const double x = std::round(mean_outputs + sd_outputs * rng.normal());
    if (x >= min_outputs && x <= max_outputs) return static_cast<int>(x);
  }
}

// ---------------------------------------------------------------------------
// Ledger

Ledger::Ledger(LedgerOptions opts) : opts_(opts) {
  auto rng = Drbg::from_label("decoy-wallet", opts_.seed);
  decoy_key_ = hdw::KeyMaterial::generate(rng);
  Block genesis;
  genesis.timestamp = kGenesisTime;
  genesis.txs.push_back(coinbase(0, fresh_decoy_address(hdw::kP2pkhVersion), opts_.genesis_pool));
  genesis.hash = genesis.compute_hash();
  apply_confirmed(genesis.txs[0]);
  confirmed_[genesis.txs[0].txid()] = 0;
  blocks_.push_back(std::move(genesis));
}

hdw::Address Ledger::fresh_decoy_address(std::uint8_t version) {
  for (;;) {
    const hdw::DerivationIndex idx{hdw::Domain::kGrind, decoy_counter_++};
    auto pub = hdw::try_derive_public(*decoy_key_, idx);
    if (!pub) continue;
    hdw::Address a = hdw::to_address(*pub, version);
    decoy_fields_.insert(a.digest);
    return a;
  }
}

bool Ledger::is_decoy(const Transaction& tx) const {
  if (tx.is_coinbase() || tx.inputs.empty()) return false;
  return std::all_of(tx.inputs.begin(), tx.inputs.end(),
                     [this](const TxInput& in) { return decoy_fields_.count(in.address.digest) != 0; });
}

std::optional<TxOutput> Ledger::unspent(const OutPoint& op) const {
  if (pending_spent_.count(op)) return std::nullopt;
  if (auto it = utxos_.find(op); it != utxos_.end()) return it->second;
  if (auto it = pending_outputs_.find(op); it != pending_outputs_.end()) return it->second;
  return std::nullopt;
}

void Ledger::validate(const Transaction& tx) const {
  if (tx.version != 1) reject("unknown transaction version");
  if (tx.inputs.empty() || tx.outputs.empty()) reject("transaction needs inputs and outputs");
  if (tx.is_coinbase()) reject("coinbase transactions are mined, not submitted");
  if (tx.inputs.size() > 0xFFFF || tx.outputs.size() > 0xFFFF) reject("too many inputs or outputs");
  std::set<OutPoint> seen;
  std::uint64_t in_total = 0;
  for (const auto& in : tx.inputs) {
    if (!seen.insert(in.prev).second) reject("input listed twice");
    auto prev = unspent(in.prev);
    if (!prev) reject("input " + to_hex(in.prev.txid) + ":" + std::to_string(in.prev.index) + " is not unspent");
    if (prev->address() != in.address) reject("input address does not match the spent output");
    in_total = checked_add(in_total, prev->amount);
  }
  for (const auto& out : tx.outputs) {
    if (out.amount < opts_.dust) reject("output below dust threshold");
  }
  if (in_total != checked_add(tx.output_total(), tx.fee)) reject("inputs do not balance outputs plus fee");
}

Hash256 Ledger::submit(const Transaction& tx) {
  const Hash256 id = tx.txid();
  if (mempool_ids_.count(id) || confirmed_.count(id)) return id;
  validate(tx);
  for (const auto& in : tx.inputs) pending_spent_.insert(in.prev);
  for (std::uint32_t i = 0; i < tx.outputs.size(); ++i) pending_outputs_[{id, i}] = tx.outputs[i];
  mempool_.push_back(tx);
  mempool_ids_.insert(id);
  if (path_) write_state(*path_);
  return id;
}

void Ledger::apply_confirmed(const Transaction& tx) {
  const Hash256 id = tx.txid();
  if (tx.is_coinbase()) {
    issued_ += tx.output_total();
  } else {
    for (const auto& in : tx.inputs) {
      auto it = utxos_.find(in.prev);
      if (it == utxos_.end()) throw Error(ErrorCode::kChainCorruption, "block spends a missing output");
      decoy_pool_.erase({it->second.amount, in.prev});
      utxos_.erase(it);
    }
    fees_ += tx.fee;
  }
  for (std::uint32_t i = 0; i < tx.outputs.size(); ++i) {
    const OutPoint op{id, i};
    utxos_[op] = tx.outputs[i];
    if (decoy_fields_.count(tx.outputs[i].field)) decoy_pool_.insert({tx.outputs[i].amount, op});
  }
}

std::optional<Transaction> Ledger::make_decoy(const NoiseProfile& noise, Drbg& rng) {
  auto it = decoy_pool_.rbegin();
  while (it != decoy_pool_.rend() && pending_spent_.count(it->second)) ++it;
  if (it == decoy_pool_.rend()) return std::nullopt;
  const auto [value, op] = *it;
  int k = noise.sample_outputs(rng);
  auto fee_for = [](int outs) { return 150 + 50 * static_cast<std::uint64_t>(outs); };
  while (k > 0 && value < fee_for(k) + static_cast<std::uint64_t>(k) * opts_.dust) --k;
  if (k == 0) return std::nullopt;

  Transaction tx;
  const TxOutput& prev = utxos_.at(op);
  tx.inputs.push_back({op, prev.address()});
  tx.fee = fee_for(k);
  std::uint64_t spread = value - tx.fee - static_cast<std::uint64_t>(k) * opts_.dust;
  std::vector<double> w(static_cast<std::size_t>(k));
  double sum = 0;
  for (auto& x : w) sum += (x = rng.uniform() + 1e-9);
  std::uint64_t given = 0;
  for (int i = 0; i < k; ++i) {
    std::uint64_t extra = i + 1 == k ? spread - given
                                     : static_cast<std::uint64_t>(static_cast<double>(spread) * (w[static_cast<std::size_t>(i)] / sum));
    extra = std::min(extra, spread - given);
    given += extra;
    const std::uint8_t version = rng.uniform() < noise.p2sh_fraction ? hdw::kP2shVersion : hdw::kP2pkhVersion;
    const hdw::Address to = fresh_decoy_address(version);
    tx.outputs.push_back({kind_for_version(version), to.digest, opts_.dust + extra});
  }
  // Outputs of this decoy may fund the next one in the same block.
  decoy_pool_.erase({value, op});
  const Hash256 id = tx.txid();
  for (std::uint32_t i = 0; i < tx.outputs.size(); ++i) decoy_pool_.insert({tx.outputs[i].amount, {id, i}});
  return tx;
}

const Block& Ledger::mine_block(const NoiseProfile& noise, std::uint64_t seed,
                                const std::optional<hdw::Address>& reward_to) {
  const std::uint64_t height = blocks_.size();
  Writer label;
  label.u64(seed);
  label.u64(height);
  Drbg rng(crypto::sha256(label.data()));

  const double whole = std::floor(std::max(0.0, noise.rate));
  std::size_t n_decoys = static_cast<std::size_t>(whole) + (rng.uniform() < noise.rate - whole ? 1 : 0);

  // Decoys spend from the pool as confirmed before this block, plus their own
  // outputs. Keep the pool consistent with utxos_ while they are built.
  std::vector<Transaction> decoys;
  std::map<OutPoint, TxOutput> decoy_created;
  for (std::size_t i = 0; i < n_decoys; ++i) {
    auto tx = make_decoy(noise, rng);
    if (!tx) break;
    const Hash256 id = tx->txid();
    for (std::uint32_t j = 0; j < tx->outputs.size(); ++j) utxos_[{id, j}] = tx->outputs[j];
    decoys.push_back(std::move(*tx));
  }
  // Undo the provisional entries; apply_confirmed below redoes them in order.
  for (const auto& tx : decoys) {
    const Hash256 id = tx.txid();
    for (std::uint32_t j = 0; j < tx.outputs.size(); ++j) utxos_.erase({id, j});
  }

  Block b;
  b.height = height;
  b.prev = blocks_.back().hash;
  b.timestamp = kGenesisTime + kBlockInterval * height;
  const hdw::Address payee = reward_to ? *reward_to : fresh_decoy_address(hdw::kP2pkhVersion);
  b.txs.push_back(coinbase(height, payee, opts_.block_reward));

  std::size_t mi = 0;
  std::size_t di = 0;
  while (mi < mempool_.size() || di < decoys.size()) {
    const std::uint64_t left_m = mempool_.size() - mi;
    const std::uint64_t left_d = decoys.size() - di;
    if (rng.below(left_m + left_d) < left_m) {
      b.txs.push_back(mempool_[mi++]);
    } else {
      b.txs.push_back(decoys[di++]);
    }
  }
  b.hash = b.compute_hash();

  for (const auto& tx : b.txs) {
    apply_confirmed(tx);
    confirmed_[tx.txid()] = height;
  }
  mempool_.clear();
  mempool_ids_.clear();
  pending_outputs_.clear();
  pending_spent_.clear();
  blocks_.push_back(std::move(b));
  if (path_) {
    append_to_file(*path_, blocks_.back());
    write_state(*path_);
  }
  return blocks_.back();
}

const Block& Ledger::block(std::uint64_t height) const {
  if (height >= blocks_.size()) throw Error(ErrorCode::kValidation, "no block at height " + std::to_string(height));
  const Block& b = blocks_[height];
  if (b.compute_hash() != b.hash) {
    throw Error(ErrorCode::kChainCorruption, "block " + std::to_string(height) + " hash mismatch");
  }
  return b;
}

void Ledger::verify() const {
  for (std::uint64_t h = 0; h < blocks_.size(); ++h) {
    const Block& b = block(h);
    if (b.height != h) throw Error(ErrorCode::kChainCorruption, "height out of sequence");
    if (h > 0 && b.prev != blocks_[h - 1].hash) throw Error(ErrorCode::kChainCorruption, "broken prev link");
  }
}

std::vector<ScanHit> Ledger::scan(std::uint64_t from_height,
                                  const std::function<bool(const hdw::Address&)>& pred) const {
  std::vector<ScanHit> hits;
  for (std::uint64_t h = from_height; h < blocks_.size(); ++h) {
    for (const auto& tx : block(h).txs) {
      if (tx.is_coinbase()) continue;
      if (std::any_of(tx.inputs.begin(), tx.inputs.end(), [&](const TxInput& in) { return pred(in.address); })) {
        hits.push_back({h, tx});
      }
    }
  }
  return hits;
}

Conservation Ledger::conservation() const {
  Conservation c;
  c.issued = issued_;
  c.fees = fees_;
  for (const auto& [op, out] : utxos_) c.unspent += out.amount;
  return c;
}

std::string Ledger::export_text() const {
  std::ostringstream os;
  for (std::uint64_t h = 0; h < blocks_.size(); ++h) {
    const Block& b = block(h);
    os << "block " << b.height << ' ' << to_hex(b.hash) << '\n';
    os << "  prev " << to_hex(b.prev) << '\n';
    os << "  time " << b.timestamp << '\n';
    for (const auto& tx : b.txs) {
      os << "  tx " << to_hex(tx.txid()) << (tx.is_coinbase() ? " coinbase" : "") << '\n';
      for (const auto& in : tx.inputs) {
        os << "    in " << to_hex(in.prev.txid) << ':' << in.prev.index << ' ' << in.address.text() << '\n';
      }
      for (const auto& out : tx.outputs) {
        os << "    out " << (out.kind == OutputKind::kP2sh ? "p2sh " : "p2pkh ") << to_hex(out.field) << ' '
           << out.amount << '\n';
      }
      os << "    fee " << tx.fee << '\n';
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Persistence

std::vector<Block> Ledger::read_chain_file(const std::filesystem::path& path) { return parse_chain(read_file(path)); }

std::vector<Block> Ledger::parse_chain(ByteView raw) {
  std::vector<Block> blocks;
  Reader r(raw);
  while (!r.done()) {
    if (r.remaining() < 4) throw Error(ErrorCode::kChainCorruption, "truncated record length");
    const std::uint32_t len = r.u32();
    if (len > kMaxRecord || len > r.remaining()) throw Error(ErrorCode::kChainCorruption, "record overruns file");
    Block b = Block::parse(r.bytes(len));
    if (b.height != blocks.size()) throw Error(ErrorCode::kChainCorruption, "height out of sequence");
    const Hash256 want_prev = blocks.empty() ? Hash256{} : blocks.back().hash;
    if (b.prev != want_prev) throw Error(ErrorCode::kChainCorruption, "broken prev link");
    blocks.push_back(std::move(b));
  }
  if (blocks.empty()) throw Error(ErrorCode::kChainCorruption, "chain file holds no blocks");
  return blocks;
}

namespace {

void write_record(Writer& w, const Block& b) {
  const Bytes raw = b.serialize();
  w.u32(static_cast<std::uint32_t>(raw.size()));
  w.bytes(raw);
}

}  // namespace

Bytes Ledger::chain_bytes() const {
  Writer w;
  for (const auto& b : blocks_) write_record(w, b);
  return std::move(w).take();
}

void Ledger::append_to_file(const std::filesystem::path& path, const Block& b) const {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw Error(ErrorCode::kIo, "cannot append to " + path.string());
  Writer w;
  write_record(w, b);
  out.write(reinterpret_cast<const char*>(w.data().data()), static_cast<std::streamsize>(w.data().size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed on " + path.string());
}

void Ledger::write_state(const std::filesystem::path& chain) const {
  nlohmann::json j;
  j["format"] = 1;
  j["seed"] = opts_.seed;
  j["dust"] = opts_.dust;
  j["block_reward"] = opts_.block_reward;
  j["genesis_pool"] = opts_.genesis_pool;
  j["decoy_counter"] = decoy_counter_;
  auto& fields = j["decoy_fields"] = nlohmann::json::array();
  for (const auto& f : decoy_fields_) fields.push_back(to_hex(f));
  auto& pool = j["mempool"] = nlohmann::json::array();
  for (const auto& tx : mempool_) pool.push_back(to_hex(tx.serialize()));
  const auto tmp = state_path(chain).string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp);
    out << j.dump(1) << '\n';
  }
  std::filesystem::rename(tmp, state_path(chain));
}

void Ledger::load_state() {
  const Bytes raw = read_file(state_path(*path_));
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(raw.begin(), raw.end());
    decoy_counter_ = j.at("decoy_counter").get<std::uint64_t>();
    decoy_fields_.clear();
    for (const auto& f : j.at("decoy_fields")) decoy_fields_.insert(array_from_hex<20>(f.get<std::string>()));
    mempool_.clear();
    for (const auto& t : j.at("mempool")) mempool_.push_back(Transaction::parse(from_hex(t.get<std::string>())));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("bad ledger state file: ") + e.what());
  }
}

Ledger Ledger::open(const std::filesystem::path& path, LedgerOptions opts) {
  if (!std::filesystem::exists(path)) {
    Ledger l(opts);
    l.save(path);
    l.path_ = path;
    return l;
  }
  // Options live in the state file; they override the caller's defaults.
  {
    const Bytes raw = read_file(state_path(path));
    try {
      auto j = nlohmann::json::parse(raw.begin(), raw.end());
      opts.seed = j.at("seed").get<std::uint64_t>();
      opts.dust = j.at("dust").get<std::uint64_t>();
      opts.block_reward = j.at("block_reward").get<std::uint64_t>();
      opts.genesis_pool = j.at("genesis_pool").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kIo, std::string("bad ledger state file: ") + e.what());
    }
  }
  std::vector<Block> blocks = read_chain_file(path);
  Ledger l(opts);
  if (blocks.front() != l.blocks_.front()) throw Error(ErrorCode::kChainCorruption, "genesis does not match seed");
  l.path_ = path;
  l.load_state();
  std::vector<Transaction> pending = std::move(l.mempool_);
  l.mempool_.clear();
  for (std::size_t h = 1; h < blocks.size(); ++h) {
    for (const auto& tx : blocks[h].txs) {
      l.apply_confirmed(tx);
      l.confirmed_[tx.txid()] = h;
    }
    l.blocks_.push_back(std::move(blocks[h]));
  }
  for (const auto& tx : pending) {
    const Hash256 id = tx.txid();
    l.validate(tx);
    for (const auto& in : tx.inputs) l.pending_spent_.insert(in.prev);
    for (std::uint32_t i = 0; i < tx.outputs.size(); ++i) l.pending_outputs_[{id, i}] = tx.outputs[i];
    l.mempool_.push_back(tx);
    l.mempool_ids_.insert(id);
  }
  return l;
}

void Ledger::save(const std::filesystem::path& path) const {
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }
  for (const auto& b : blocks_) append_to_file(path, b);
  write_state(path);
}

}  // namespace stegoledger::ledger
