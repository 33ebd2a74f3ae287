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
#include <fstream>
#include <iterator>
#include <random>
#include <set>

#include <doctest.h>
#include "stegoledger/errors.hpp"
#include "stegoledger/ledger.hpp"
#include "test_support.hpp"

using namespace stegoledger;
using namespace stegoledger::ledger;
using testing::make_key;
using testing::quiet;
using testing::TempDir;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kIo;
}

struct Wallet {
  hdw::KeyMaterial km = make_key(60);
  std::uint64_t next = 1;
  hdw::Address fresh() { return hdw::derive_address(km, {hdw::Domain::kGrind, next++}); }
};

// Mines a coinbase to a fresh wallet address and returns the spendable outpoint.
std::pair<OutPoint, hdw::Address> coin(Ledger& chain, Wallet& w) {
  const auto a = w.fresh();
  const Block& b = chain.mine_block(quiet(), 1, a);
  return {{b.txs[0].txid(), 0}, a};
}

Transaction pay(const OutPoint& op, const hdw::Address& from, const std::vector<std::pair<hdw::Address, std::uint64_t>>& to,
                std::uint64_t fee) {
  Transaction tx;
  tx.inputs.push_back({op, from});
  for (const auto& [a, amt] : to) tx.outputs.push_back({kind_for_version(a.version), a.digest, amt});
  tx.fee = fee;
  return tx;
}

Bytes slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

void spit(const std::filesystem::path& p, const Bytes& b) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
}

}  // namespace

TEST_CASE("transaction encoding round trips") {
  Wallet w;
  Transaction tx = pay({Hash256{1}, 3}, w.fresh(), {{w.fresh(), 1000}, {w.fresh(), 2000}}, 77);
  tx.outputs[1].kind = OutputKind::kP2sh;
  CHECK(Transaction::parse(tx.serialize()) == tx);
  CHECK(tx.txid() != Transaction{}.txid());
  Bytes raw = tx.serialize();
  raw.push_back(0);
  CHECK(code_of([&] { Transaction::parse(raw); }) == ErrorCode::kValidation);
}

TEST_CASE("submit is idempotent and rejects invalid spends") {
  Ledger chain;
  Wallet w;
  const auto [op, from] = coin(chain, w);
  const std::uint64_t reward = LedgerOptions{}.block_reward;
  const Transaction tx = pay(op, from, {{w.fresh(), reward - 1000}}, 1000);
  const Hash256 id = chain.submit(tx);
  CHECK(id == tx.txid());
  CHECK(chain.in_mempool(id));
  CHECK(chain.submit(tx) == id);
  CHECK(chain.mempool().size() == 1);

  // Double spend in the mempool and after confirmation.
  const Transaction other = pay(op, from, {{w.fresh(), reward - 2000}}, 2000);
  CHECK(code_of([&] { chain.submit(other); }) == ErrorCode::kRejected);
  chain.mine_block(quiet(), 2);
  CHECK(chain.is_confirmed(id));
  CHECK(code_of([&] { chain.submit(other); }) == ErrorCode::kRejected);
  CHECK(chain.submit(tx) == id);  // already confirmed: same id, nothing queued
  CHECK(chain.mempool().empty());

  const auto [op2, from2] = coin(chain, w);
  CHECK(code_of([&] { chain.submit(pay(op2, w.fresh(), {{w.fresh(), reward - 1000}}, 1000)); }) ==
        ErrorCode::kRejected);  // wrong address
  CHECK(code_of([&] { chain.submit(pay(op2, from2, {{w.fresh(), 100}, {w.fresh(), reward - 1100}}, 1000)); }) ==
        ErrorCode::kRejected);  // dust
  CHECK(code_of([&] { chain.submit(pay(op2, from2, {{w.fresh(), reward}}, 1)); }) == ErrorCode::kRejected);
  CHECK(code_of([&] { chain.submit(pay({Hash256{9}, 0}, from2, {{w.fresh(), 1000}}, 0)); }) == ErrorCode::kRejected);
}

TEST_CASE("mempool outputs can be spent before confirmation") {
  Ledger chain;
  Wallet w;
  const auto [op, from] = coin(chain, w);
  const std::uint64_t reward = LedgerOptions{}.block_reward;
  const auto mid = w.fresh();
  const Transaction a = pay(op, from, {{mid, reward - 500}}, 500);
  chain.submit(a);
  const Transaction b = pay({a.txid(), 0}, mid, {{w.fresh(), reward - 1000}}, 500);
  chain.submit(b);
  const Block& blk = chain.mine_block(quiet(), 3);
  CHECK(blk.txs.size() == 3);
  CHECK(chain.is_confirmed(b.txid()));
  CHECK(chain.conservation().holds());
}

TEST_CASE("empty mempool with no decoys mines an empty block") {
  Ledger chain;
  const auto before = chain.block_count();
  const Block& b = chain.mine_block(quiet(), 4);
  CHECK(chain.block_count() == before + 1);
  CHECK(b.txs.size() == 1);
  CHECK(b.txs[0].is_coinbase());
  CHECK(b.prev == chain.block(b.height - 1).hash);
}

TEST_CASE("mining is deterministic for a fixed seed") {
  auto build = [] {
    Ledger chain(LedgerOptions{7});
    NoiseProfile noise;
    noise.rate = 6;
    for (int i = 0; i < 5; ++i) chain.mine_block(noise, 99);
    return chain.block(5).serialize();
  };
  CHECK(build() == build());
  Ledger other(LedgerOptions{8});
  NoiseProfile noise;
  for (int i = 0; i < 5; ++i) other.mine_block(noise, 99);
  CHECK(other.block(5).serialize() != build());
}

TEST_CASE("decoy output counts follow the noise profile") {
  NoiseProfile noise;
  Drbg rng = Drbg::from_label("noise", 1);
  double sum = 0;
  int lo = 100, hi = 0;
  for (int i = 0; i < 10000; ++i) {
    const int k = noise.sample_outputs(rng);
    sum += k;
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  CHECK(sum / 10000 == doctest::Approx(3.45).epsilon(0.1 / 3.45));
  CHECK(lo >= 1);
  CHECK(hi <= 30);

  Ledger chain;
  noise.rate = 20;
  std::size_t decoys = 0, p2sh = 0, outs = 0;
  for (int i = 0; i < 10; ++i) {
    for (const auto& tx : chain.mine_block(noise, 5).txs) {
      if (!chain.is_decoy(tx)) continue;
      ++decoys;
      for (const auto& o : tx.outputs) {
        ++outs;
        p2sh += o.kind == OutputKind::kP2sh;
        CHECK(o.amount >= chain.dust());
      }
    }
  }
  CHECK(decoys == 200);
  CHECK(static_cast<double>(p2sh) / static_cast<double>(outs) == doctest::Approx(0.1).epsilon(0.5));
  CHECK(chain.conservation().holds());
}

TEST_CASE("scan finds exactly the matching transactions in chain order") {
  Ledger chain;
  Wallet w;
  NoiseProfile noise;
  noise.rate = 3;
  const std::uint64_t reward = LedgerOptions{}.block_reward;
  std::set<hdw::Address> watched;
  std::vector<Hash256> expect;
  for (int i = 0; i < 5; ++i) {
    const auto [op, from] = coin(chain, w);
    watched.insert(from);
    const Transaction tx = pay(op, from, {{w.fresh(), reward - 1000}}, 1000);
    expect.push_back(chain.submit(tx));
    chain.mine_block(noise, 10 + static_cast<std::uint64_t>(i));
  }
  auto pred = [&watched](const hdw::Address& a) { return watched.count(a) != 0; };
  const auto hits = chain.scan(0, pred);
  REQUIRE(hits.size() == expect.size());
  for (std::size_t i = 0; i < hits.size(); ++i) CHECK(hits[i].tx.txid() == expect[i]);
  CHECK(chain.scan(0, pred).size() == hits.size());
  CHECK(chain.scan(0, [](const hdw::Address&) { return false; }).empty());
  CHECK(chain.scan(hits.back().height + 1, pred).empty());
}

TEST_CASE("output amounts do not change output addresses") {
  Wallet w;
  const auto a = w.fresh();
  TxOutput x{OutputKind::kP2pkh, a.digest, 600}, y{OutputKind::kP2pkh, a.digest, 9999};
  CHECK(x.address() == y.address());
  CHECK(x.address() == a);
}

TEST_CASE("value is conserved") {
  Ledger chain;
  NoiseProfile noise;
  noise.rate = 8;
  for (int i = 0; i < 20; ++i) chain.mine_block(noise, 11);
  const auto c = chain.conservation();
  CHECK(c.holds());
  CHECK(c.issued == LedgerOptions{}.genesis_pool + 20 * LedgerOptions{}.block_reward);
  CHECK(c.fees > 0);
}

TEST_CASE("chain file round trip with pending mempool") {
  TempDir dir("ledger");
  const auto path = dir / "chain.bin";
  Wallet w;
  std::string text;
  Hash256 pending{};
  {
    Ledger chain = Ledger::open(path, LedgerOptions{3});
    NoiseProfile noise;
    for (int i = 0; i < 4; ++i) chain.mine_block(noise, 12);
    const auto [op, from] = coin(chain, w);
    pending = chain.submit(pay(op, from, {{w.fresh(), LedgerOptions{}.block_reward - 1000}}, 1000));
    text = chain.export_text();
  }
  Ledger reopened = Ledger::open(path);
  CHECK(reopened.export_text() == text);
  CHECK(reopened.in_mempool(pending));
  CHECK(reopened.conservation().holds());
  reopened.mine_block(NoiseProfile{}, 13);
  CHECK(reopened.is_confirmed(pending));
  CHECK(Ledger::read_chain_file(path).size() == reopened.block_count());
  // The in-memory encoding is byte-identical to the appended file.
  CHECK(reopened.chain_bytes() == slurp(path));
  // Decoys keep being recognised after a reload.
  std::size_t decoys = 0;
  for (const auto& tx : reopened.block(reopened.tip_height()).txs) decoys += reopened.is_decoy(tx);
  CHECK(decoys > 0);
}

TEST_CASE("every single-byte mutation of the chain file is detected") {
  TempDir dir("mutate");
  const auto path = dir / "chain.bin";
  {
    Ledger chain = Ledger::open(path);
    NoiseProfile noise;
    for (int i = 0; i < 6; ++i) chain.mine_block(noise, 14);
  }
  const Bytes clean = slurp(path);
  std::mt19937_64 rng(14);
  for (int t = 0; t < 100; ++t) {
    Bytes bad = clean;
    const std::size_t at = rng() % bad.size();
    bad[at] ^= static_cast<std::uint8_t>(1 + rng() % 255);
    spit(path, bad);
    CAPTURE(at);
    CHECK(code_of([&] { Ledger::read_chain_file(path); }) == ErrorCode::kChainCorruption);
  }
  spit(path, Bytes(clean.begin(), clean.end() - 1));
  CHECK(code_of([&] { Ledger::read_chain_file(path); }) == ErrorCode::kChainCorruption);
  spit(path, clean);
  CHECK_NOTHROW(Ledger::read_chain_file(path));
}
