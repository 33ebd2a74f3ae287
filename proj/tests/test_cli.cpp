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
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <string>

#include <doctest.h>
#include "test_support.hpp"

using stegoledger::testing::TempDir;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with the working directory set to dir.
Run cli(const TempDir& dir, const std::string& args) {
  const std::string cmd = "cd '" + dir.path().string() + "' && '" STEGOLEDGER_CLI "' " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void spit(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << s;
}

const char* kConfig = "n = 5\nm = 4\nmode = permuted\nhigh_max_outputs = 6\nscan_window = 16\n";

// keygen, fund, send on both channels, mine, extract. Returns the chain bytes.
std::string conversation(const TempDir& d) {
  spit(d / "cfg.txt", kConfig);
  spit(d / "med.txt", "a medium-channel note");
  spit(d / "high.txt", std::string(300, 'h') + "end");
  REQUIRE(cli(d, "--key k.key --seed 5 keygen").code == 0);
  const std::string common = "--chain c.bin --key k.key --config cfg.txt --seed 5 ";
  REQUIRE(cli(d, common + "--session a.ssn mine --fund --decoys 3").code == 0);
  auto r = cli(d, common + "--session a.ssn send --channel med --in med.txt");
  REQUIRE_MESSAGE(r.code == 0, r.out);
  r = cli(d, common + "--session a.ssn send --channel high --in high.txt");
  REQUIRE_MESSAGE(r.code == 0, r.out);
  REQUIRE(cli(d, common + "mine --decoys 3 --blocks 2").code == 0);
  r = cli(d, common + "--session b.ssn scan");
  CHECK(r.code == 0);
  CHECK(r.out.find("med message of 21 bytes") != std::string::npos);
  r = cli(d, common + "--session b.ssn extract --out got");
  CHECK(r.code == 0);
  CHECK(slurp(d / "got") == slurp(d / "med.txt"));
  CHECK(slurp(d / "got.2") == slurp(d / "high.txt"));
  // Already consumed.
  CHECK(cli(d, common + "--session b.ssn extract --out again").out.find("no complete messages") != std::string::npos);
  return slurp(d / "c.bin");
}

}  // namespace

TEST_CASE("capacity report") {
  TempDir d("cli-cap");
  const auto r = cli(d, "capacity --n 5 --m 15");
  CHECK(r.code == 0);
  CHECK(r.out == "n m paper ordered permuted\n5 15 81.907 75 66\n");
  const auto range = cli(d, "--json capacity --n 1..3 --m 2..4");
  CHECK(range.code == 0);
  CHECK(range.out.find("\"paper\"") != std::string::npos);
  CHECK(cli(d, "capacity --n 0..3 --m 2").code == 2);
  CHECK(cli(d, "capacity --n x --m 2").code == 2);
}

TEST_CASE("full conversation is deterministic under a seed") {
  TempDir a("cli-a"), b("cli-b");
  const std::string first = conversation(a);
  const std::string second = conversation(b);
  CHECK_FALSE(first.empty());
  CHECK(first == second);
  CHECK(cli(a, "--chain c.bin verify").code == 0);
  CHECK(cli(a, "--chain c.bin export").out == cli(b, "--chain c.bin export").out);
}

TEST_CASE("exit codes") {
  TempDir d("cli-exit");
  spit(d / "bad.txt", "n = 1\n");
  spit(d / "msg.txt", "x");
  REQUIRE(cli(d, "--key k.key keygen").code == 0);
  CHECK(cli(d, "--key k.key --config bad.txt --session s.ssn send --channel med --in msg.txt").code == 2);
  CHECK(cli(d, "send --channel sideways --in msg.txt").code == 2);
  CHECK(cli(d, "bench --m 4 --runs 5").code == 2);
  // No funds.
  CHECK(cli(d, "--key k.key --session s.ssn send --channel high --in msg.txt").code == 2);
  // A session keeps its creation config; a different --config is refused.
  spit(d / "perm.txt", "n = 5\nm = 8\nmode = permuted\n");
  REQUIRE(cli(d, "--key k.key --session f.ssn --chain f.bin mine --fund").code == 0);
  CHECK(cli(d, "--key k.key --config perm.txt --session f.ssn --chain f.bin send --channel med --in msg.txt").code == 2);

  // A corrupted chain file.
  REQUIRE(cli(d, "--chain c.bin mine --blocks 3").code == 0);
  std::string chain = slurp(d / "c.bin");
  chain[chain.size() / 2] ^= 0x40;
  spit(d / "c.bin", chain);
  CHECK(cli(d, "--chain c.bin verify").code == 3);
}

TEST_CASE("bench and stats commands") {
  TempDir d("cli-bench");
  const auto r = cli(d, "--json bench --m 2,3 --runs 100");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"mean_attempts\"") != std::string::npos);
  REQUIRE(cli(d, "--key k.key keygen").code == 0);
  CHECK(cli(d, "--key k.key --chain c.bin stats").code == 2);  // nothing to analyse
}
