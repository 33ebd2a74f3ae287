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
#include "stegoledger/evaluation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "stegoledger/errors.hpp"
#include "stegoledger/grind.hpp"
#include "stegoledger/permutation.hpp"
#include "stegoledger/random.hpp"

namespace stegoledger::eval {

namespace {

using nlohmann::json;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Walks one channel's signal counters with the receiver's gap tolerance and
// returns the matching transactions in chain order.
std::vector<const ledger::Transaction*> label_channel(const ledger::Ledger& chain, const hdw::KeyMaterial& km,
                                                      hdw::Channel channel, int window) {
  std::map<hdw::Address, std::uint64_t> watch;
  std::uint64_t next = 1;
  std::uint64_t derived_to = 1;
  auto extend = [&] {
    for (auto it = watch.begin(); it != watch.end();) it = it->second < next ? watch.erase(it) : std::next(it);
    for (; derived_to < next + static_cast<std::uint64_t>(window); ++derived_to) {
      watch.emplace(hdw::signal_address(km, channel, derived_to), derived_to);
    }
  };
  extend();
  std::vector<const ledger::Transaction*> out;
  for (std::uint64_t h = 0; h < chain.block_count(); ++h) {
    for (const auto& tx : chain.block(h).txs) {
      if (tx.is_coinbase()) continue;
      for (const auto& in : tx.inputs) {
        auto it = watch.find(in.address);
        if (it == watch.end()) continue;
        out.push_back(&tx);
        next = it->second + 1;
        extend();
        break;
      }
    }
  }
  return out;
}

void append_fields(const ledger::Transaction& tx, Bytes& out, std::size_t& count) {
  for (const auto& o : tx.outputs) {
    out.insert(out.end(), o.field.begin(), o.field.end());
    ++count;
  }
}

// Number of transactions whose visible top-t chunk bits spell a permutation
// of 0..n-1, as unmasked slot tags would.
std::uint64_t tag_permutation_hits(const std::vector<const ledger::Transaction*>& txs, const ChannelConfig& cfg,
                                   std::uint64_t& eligible) {
  const BitSelector sel = cfg.selector();
  const int t = cfg.tag_bits();
  std::uint64_t hits = 0;
  eligible = 0;
  for (const auto* tx : txs) {
    if (static_cast<int>(tx->outputs.size()) != cfg.n) continue;
    ++eligible;
    std::set<std::uint64_t> tags;
    for (const auto& o : tx->outputs) {
      const std::uint64_t tag = sel.extract(o.field) >> (cfg.m - t);
      if (tag < static_cast<std::uint64_t>(cfg.n)) tags.insert(tag);
    }
    if (static_cast<int>(tags.size()) == cfg.n) ++hits;
  }
  return hits;
}

void finish(ChannelStats& c) {
  c.pass = true;
  for (auto& t : c.tests) {
    t.pass = t.result.p_value > t.threshold;
    c.pass = c.pass && t.pass;
  }
}

json tests_json(const ChannelStats& c) {
  json j;
  j["tested"] = c.tested;
  j["stego_txs"] = c.stego_txs;
  j["fields"] = c.fields;
  j["pass"] = c.pass;
  auto& arr = j["tests"] = json::array();
  for (const auto& t : c.tests) {
    arr.push_back({{"name", t.name},
                   {"statistic", t.result.statistic},
                   {"p_value", t.result.p_value},
                   {"threshold", t.threshold},
                   {"pass", t.pass}});
  }
  return j;
}

void tests_text(std::ostringstream& os, const char* name, const ChannelStats& c) {
  os << name << ": " << c.stego_txs << " stego txs, " << c.fields << " fields";
  if (!c.tested) {
    os << " (not tested)\n";
    return;
  }
  os << (c.pass ? " PASS" : " FAIL") << '\n';
  for (const auto& t : c.tests) {
    os << "  " << t.name << " stat=" << fmt("%.4f", t.result.statistic) << " p=" << fmt("%.6f", t.result.p_value)
       << " threshold=" << fmt("%.5f", t.threshold) << (t.pass ? " pass" : " FAIL") << '\n';
  }
}

}  // namespace

BenchReport bench_grind(std::span<const int> m_values, int runs, std::uint64_t seed, bool use_serial_kernel) {
  if (runs < 100) throw Error(ErrorCode::kValidation, "bench needs at least 100 runs per m");
  BenchReport report;
  for (int m : m_values) {
    ChannelConfig cfg;
    cfg.m = m;
    cfg.validate();
    Drbg rng = Drbg::from_label("bench", seed * 64 + static_cast<std::uint64_t>(m));
    const hdw::KeyMaterial km = hdw::KeyMaterial::generate(rng);
    const BitSelector sel = cfg.selector();

    std::uint64_t start = 1;
    double sum = 0.0;
    double sum_sq = 0.0;
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < runs; ++r) {
      const std::uint64_t target = rng.below(std::uint64_t{1} << m);
      grind::GrindResult g;
      if (use_serial_kernel) {
        g = grind::grind_serial(
            km, [&sel, target](const Hash160& d) { return sel.extract(d) == target; }, start,
            cfg.effective_grind_cap());
      } else {
        g = grind::grind(km, {target, 0}, cfg, start);
      }
      start = g.index.counter + 1;
      const auto a = static_cast<double>(g.attempts);
      sum += a;
      sum_sq += a * a;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    GrindRow row;
    row.m = m;
    row.runs = runs;
    row.mean_attempts = sum / runs;
    const double var = (sum_sq - sum * sum / runs) / (runs - 1);
    row.std_error = std::sqrt(std::max(0.0, var) / runs);
    row.expected = std::ldexp(1.0, m);
    row.z = (row.mean_attempts - row.expected) / (row.expected / std::sqrt(static_cast<double>(runs)));
    row.seconds_per_attempt = secs / sum;
    row.mean_seconds = secs / runs;
    report.rows.push_back(row);
  }
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const auto& a = report.rows[i - 1];
    const auto& b = report.rows[i];
    report.ratios.emplace_back(b.mean_attempts / a.mean_attempts, std::ldexp(1.0, b.m - a.m));
  }
  return report;
}

std::vector<CapacityRow> capacity_table(int n_lo, int n_hi, int m_lo, int m_hi) {
  if (n_lo < 1 || n_hi > perm::kMaxItems || n_lo > n_hi) throw Error(ErrorCode::kValidation, "n range must lie in [1, 20]");
  if (m_lo < 1 || m_hi > 24 || m_lo > m_hi) throw Error(ErrorCode::kValidation, "m range must lie in [1, 24]");
  std::vector<CapacityRow> rows;
  for (int n = n_lo; n <= n_hi; ++n) {
    for (int m = m_lo; m <= m_hi; ++m) {
      CapacityRow r;
      r.n = n;
      r.m = m;
      r.paper = n * m + perm::perm_capacity_exact(n);
      r.ordered = n * m;
      if (n >= 2) {
        ChannelConfig cfg;
        cfg.n = n;
        cfg.m = m;
        if (m > cfg.tag_bits()) r.permuted = n * (m - cfg.tag_bits()) + perm::perm_capacity_bits(n);
      }
      rows.push_back(r);
    }
  }
  return rows;
}

StatReport stat_suite(const ledger::Ledger& chain, const hdw::KeyMaterial& km, const ChannelConfig& cfg,
                      const StatOptions& opts) {
  cfg.validate();
  StatReport report;
  report.alpha = opts.alpha;

  Bytes cover;
  for (std::uint64_t h = 0; h < chain.block_count(); ++h) {
    for (const auto& tx : chain.block(h).txs) {
      if (!chain.is_decoy(tx)) continue;
      ++report.cover_txs;
      append_fields(tx, cover, report.cover_fields);
    }
  }
  const auto med_txs = label_channel(chain, km, hdw::Channel::kMed, opts.scan_window);
  const auto high_txs = label_channel(chain, km, hdw::Channel::kHigh, opts.scan_window);
  report.med.stego_txs = med_txs.size();
  report.high.stego_txs = high_txs.size();

  if (report.cover_txs < opts.min_samples) {
    throw Error(ErrorCode::kInsufficientSample, "only " + std::to_string(report.cover_txs) + " decoy transactions");
  }
  if (med_txs.size() < opts.min_samples && high_txs.size() < opts.min_samples) {
    throw Error(ErrorCode::kInsufficientSample, "fewer than " + std::to_string(opts.min_samples) +
                                                    " stego transactions on either channel");
  }

  if (med_txs.size() >= opts.min_samples) {
    Bytes data;
    for (const auto* tx : med_txs) append_fields(*tx, data, report.med.fields);
    const double level = opts.alpha / 3;
    std::uint64_t eligible = 0;
    const std::uint64_t hits = tag_permutation_hits(med_txs, cfg, eligible);
    const double p0 = static_cast<double>(perm::factorial(cfg.n)) / std::ldexp(1.0, cfg.tag_bits() * cfg.n);
    report.med.tested = true;
    report.med.tests = {
        {"byte_homogeneity", stats::byte_homogeneity(data, cover), level},
        {"monobit_two_sample", stats::monobit_two_sample(data, cover), level},
        {"tag_permutation", {static_cast<double>(hits), stats::binomial_upper_tail(hits, eligible, p0)}, level},
    };
    finish(report.med);
  }
  if (high_txs.size() >= opts.min_samples) {
    Bytes data;
    for (const auto* tx : high_txs) append_fields(*tx, data, report.high.fields);
    const double level = opts.alpha / 2;
    report.high.tested = true;
    report.high.tests = {
        {"byte_homogeneity", stats::byte_homogeneity(data, cover), level},
        {"monobit_two_sample", stats::monobit_two_sample(data, cover), level},
    };
    finish(report.high);
  }
  report.pass = (!report.med.tested || report.med.pass) && (!report.high.tested || report.high.pass);
  return report;
}

// ---------------------------------------------------------------------------
// Reports

std::string to_text(const BenchReport& r) {
  std::ostringstream os;
  os << "m runs mean_attempts std_error expected z us_per_attempt ms_per_grind\n";
  for (const auto& row : r.rows) {
    os << row.m << ' ' << row.runs << ' ' << fmt("%.2f", row.mean_attempts) << ' ' << fmt("%.2f", row.std_error)
       << ' ' << fmt("%.0f", row.expected) << ' ' << fmt("%.3f", row.z) << ' '
       << fmt("%.3f", row.seconds_per_attempt * 1e6) << ' ' << fmt("%.3f", row.mean_seconds * 1e3) << '\n';
  }
  for (std::size_t i = 0; i < r.ratios.size(); ++i) {
    os << "ratio m=" << r.rows[i + 1].m << "/m=" << r.rows[i].m << ' ' << fmt("%.3f", r.ratios[i].first)
       << " expected " << fmt("%.0f", r.ratios[i].second) << '\n';
  }
  return os.str();
}

std::string to_json(const BenchReport& r) {
  json j;
  auto& rows = j["rows"] = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"m", row.m},
                    {"runs", row.runs},
                    {"mean_attempts", row.mean_attempts},
                    {"std_error", row.std_error},
                    {"expected", row.expected},
                    {"z", row.z},
                    {"seconds_per_attempt", row.seconds_per_attempt},
                    {"mean_seconds", row.mean_seconds}});
  }
  auto& ratios = j["ratios"] = json::array();
  for (const auto& [got, want] : r.ratios) ratios.push_back({{"observed", got}, {"expected", want}});
  return j.dump(2) + "\n";
}

std::string to_text(const std::vector<CapacityRow>& rows) {
  std::ostringstream os;
  os << "n m paper ordered permuted\n";
  for (const auto& r : rows) {
    os << r.n << ' ' << r.m << ' ' << fmt("%.3f", r.paper) << ' ' << r.ordered << ' '
       << (r.permuted ? std::to_string(*r.permuted) : std::string("-")) << '\n';
  }
  return os.str();
}

std::string to_json(const std::vector<CapacityRow>& rows) {
  json j = json::array();
  for (const auto& r : rows) {
    json row{{"n", r.n}, {"m", r.m}, {"paper", r.paper}, {"ordered", r.ordered}};
    row["permuted"] = r.permuted ? json(*r.permuted) : json(nullptr);
    j.push_back(row);
  }
  return j.dump(2) + "\n";
}

std::string to_text(const StatReport& r) {
  std::ostringstream os;
  os << "alpha " << r.alpha << ", cover: " << r.cover_txs << " decoy txs, " << r.cover_fields << " fields\n";
  tests_text(os, "med", r.med);
  tests_text(os, "high", r.high);
  os << (r.pass ? "overall PASS" : "overall FAIL") << '\n';
  return os.str();
}

std::string to_json(const StatReport& r) {
  json j;
  j["alpha"] = r.alpha;
  j["cover_txs"] = r.cover_txs;
  j["cover_fields"] = r.cover_fields;
  j["med"] = tests_json(r.med);
  j["high"] = tests_json(r.high);
  j["pass"] = r.pass;
  return j.dump(2) + "\n";
}

}  // namespace stegoledger::eval
