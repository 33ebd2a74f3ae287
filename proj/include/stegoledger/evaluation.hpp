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
#ifndef STEGOLEDGER_EVALUATION_HPP_
#define STEGOLEDGER_EVALUATION_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stegoledger/channel_config.hpp"
#include "stegoledger/hdw.hpp"
#include "stegoledger/ledger.hpp"
#include "stegoledger/stats.hpp"

// Benchmarks and reports: grinding effort against the 2^m law, capacity grids
// and A/B statistics of stego outputs against decoy traffic.
namespace stegoledger::eval {

struct GrindRow {
  int m = 0;
  int runs = 0;
  double mean_attempts = 0.0;
  double std_error = 0.0;  // of the mean, from the sample
  double expected = 0.0;   // 2^m
  double z = 0.0;          // (mean - expected) / (expected / sqrt(runs))
  double seconds_per_attempt = 0.0;
  double mean_seconds = 0.0;
};

struct BenchReport {
  std::vector<GrindRow> rows;
  // Mean-attempt ratio of each row to the previous one, with the 2^dm target.
  std::vector<std::pair<double, double>> ratios;
};

// Each run grinds a uniformly random target from where the previous run
// stopped, so runs use disjoint counter ranges of one key. Throws
// Error(kValidation) for runs < 100.
BenchReport bench_grind(std::span<const int> m_values, int runs, std::uint64_t seed, bool use_serial_kernel = false);

struct CapacityRow {
  int n = 0;
  int m = 0;
  double paper = 0.0;
  int ordered = 0;
  std::optional<int> permuted;  // absent when m <= ceil(log2 n)
};

// n in [1, 20], m in [1, 24]; n = 1 only reports the paper and ordered columns.
std::vector<CapacityRow> capacity_table(int n_lo, int n_hi, int m_lo, int m_hi);

struct StatTest {
  std::string name;
  stats::TestResult result;
  double threshold = 0.0;  // per-test level after Bonferroni
  bool pass = true;
};

struct ChannelStats {
  std::size_t stego_txs = 0;
  std::size_t fields = 0;
  bool tested = false;
  std::vector<StatTest> tests;
  bool pass = true;
};

struct StatReport {
  double alpha = 0.01;
  std::size_t cover_txs = 0;
  std::size_t cover_fields = 0;
  ChannelStats med;
  ChannelStats high;
  bool pass = true;
};

struct StatOptions {
  double alpha = 0.01;            // family-wise level per channel
  std::size_t min_samples = 100;  // per side, in transactions
  int scan_window = 16;
};

// Labels stego transactions by walking the signal counters of km (with a gap
// tolerance of scan_window) and compares their output fields with decoy
// outputs. The analyst is assumed to know cfg, including the selector.
// Throws Error(kInsufficientSample) when fewer than min_samples decoys exist
// or no channel reaches min_samples stego transactions.
StatReport stat_suite(const ledger::Ledger& chain, const hdw::KeyMaterial& km, const ChannelConfig& cfg,
                      const StatOptions& opts = {});

std::string to_text(const BenchReport& r);
std::string to_json(const BenchReport& r);
std::string to_text(const std::vector<CapacityRow>& rows);
std::string to_json(const std::vector<CapacityRow>& rows);
std::string to_text(const StatReport& r);
std::string to_json(const StatReport& r);

}  // namespace stegoledger::eval

#endif  // STEGOLEDGER_EVALUATION_HPP_
