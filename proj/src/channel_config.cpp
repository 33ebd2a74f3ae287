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
#include "stegoledger/channel_config.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <set>
#include <sstream>

#include "stegoledger/errors.hpp"
#include "stegoledger/permutation.hpp"

namespace stegoledger {

BitSelector::BitSelector(std::vector<std::uint8_t> positions) : positions_(std::move(positions)) {
  std::set<std::uint8_t> seen;
  for (auto p : positions_) {
    if (p >= 160) throw Error(ErrorCode::kValidation, "bit position beyond 160");
    if (!seen.insert(p).second) throw Error(ErrorCode::kValidation, "bit selector repeats a position");
  }
}

BitSelector BitSelector::lsb(int m) {
  std::vector<std::uint8_t> pos;
  for (int i = m - 1; i >= 0; --i) pos.push_back(static_cast<std::uint8_t>(i));
  return BitSelector(std::move(pos));
}

std::uint64_t BitSelector::extract(const Hash160& digest) const {
  std::uint64_t v = 0;
  for (auto p : positions_) v = (v << 1) | ((digest[19 - p / 8] >> (p % 8)) & 1);
  return v;
}

Hash160 BitSelector::clear_selected(const Hash160& digest) const {
  Hash160 out = digest;
  for (auto p : positions_) out[19 - p / 8] &= static_cast<std::uint8_t>(~(1u << (p % 8)));
  return out;
}

const char* to_string(EmbedMode mode) { return mode == EmbedMode::kOrdered ? "ordered" : "permuted"; }

int ChannelConfig::tag_bits() const { return n <= 1 ? 0 : std::bit_width(static_cast<unsigned>(n - 1)); }

BitSelector ChannelConfig::selector() const {
  return selector_positions.empty() ? BitSelector::lsb(m) : BitSelector(selector_positions);
}

std::uint64_t ChannelConfig::effective_grind_cap() const {
  return grind_cap ? grind_cap : (std::uint64_t{1} << (m + 8));
}

int ChannelConfig::payload_bits() const {
  if (mode == EmbedMode::kOrdered) return n * m;
  return n * (m - tag_bits()) + perm::perm_capacity_bits(n);
}

void ChannelConfig::validate() const {
  if (n < 2 || n > 20) throw Error(ErrorCode::kValidation, "n must be in [2, 20]");
  if (m < 1 || m > 24) throw Error(ErrorCode::kValidation, "m must be in [1, 24]");
  if (!selector_positions.empty() && static_cast<int>(selector_positions.size()) != m) {
    throw Error(ErrorCode::kValidation, "bit selector must name exactly m positions");
  }
  (void)selector();
  if (mode == EmbedMode::kPermuted && m <= tag_bits()) {
    throw Error(ErrorCode::kValidation, "permuted mode needs m > ceil(log2 n)");
  }
}

void HighConfig::validate() const {
  if (max_outputs < 2 || max_outputs > 100) throw Error(ErrorCode::kValidation, "high_max_outputs must be in [2, 100]");
  if (version != hdw::kP2pkhVersion && version != hdw::kP2shVersion) {
    throw Error(ErrorCode::kValidation, "high output kind must be p2pkh or p2sh");
  }
}

void ProtocolConfig::validate() const {
  med.validate();
  high.validate();
  if (scan_window < 1 || scan_window > 4096) throw Error(ErrorCode::kValidation, "scan_window must be in [1, 4096]");
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::uint64_t parse_uint(const std::string& v, const std::string& key) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw Error(ErrorCode::kValidation, "bad number for " + key);
  return out;
}

}  // namespace

ProtocolConfig parse_config(std::string_view text) {
  ProtocolConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  std::string selector = "lsb";
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::kValidation, "config line without '=': " + line);
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "n") {
      cfg.med.n = static_cast<int>(parse_uint(value, key));
    } else if (key == "m") {
      cfg.med.m = static_cast<int>(parse_uint(value, key));
    } else if (key == "mode") {
      if (value == "ordered") cfg.med.mode = EmbedMode::kOrdered;
      else if (value == "permuted") cfg.med.mode = EmbedMode::kPermuted;
      else throw Error(ErrorCode::kValidation, "mode must be ordered or permuted");
    } else if (key == "bit_selector") {
      selector = value;
    } else if (key == "grind_cap") {
      cfg.med.grind_cap = parse_uint(value, key);
    } else if (key == "high_max_outputs") {
      cfg.high.max_outputs = static_cast<int>(parse_uint(value, key));
    } else if (key == "high_kind") {
      if (value == "p2pkh") cfg.high.version = hdw::kP2pkhVersion;
      else if (value == "p2sh") cfg.high.version = hdw::kP2shVersion;
      else throw Error(ErrorCode::kValidation, "high_kind must be p2pkh or p2sh");
    } else if (key == "scan_window") {
      cfg.scan_window = static_cast<int>(parse_uint(value, key));
    } else {
      throw Error(ErrorCode::kValidation, "unknown config key: " + key);
    }
  }
  if (selector != "lsb") {
    std::istringstream list(selector);
    std::string item;
    while (std::getline(list, item, ',')) {
      auto p = parse_uint(trim(item), "bit_selector");
      if (p >= 160) throw Error(ErrorCode::kValidation, "bit position beyond 160");
      cfg.med.selector_positions.push_back(static_cast<std::uint8_t>(p));
    }
  }
  cfg.validate();
  return cfg;
}

std::string format_config(const ProtocolConfig& cfg) {
  std::ostringstream out;
  out << "n = " << cfg.med.n << "\n";
  out << "m = " << cfg.med.m << "\n";
  out << "mode = " << to_string(cfg.med.mode) << "\n";
  out << "bit_selector = ";
  if (cfg.med.selector_positions.empty()) {
    out << "lsb";
  } else {
    for (std::size_t i = 0; i < cfg.med.selector_positions.size(); ++i) {
      out << (i ? "," : "") << static_cast<int>(cfg.med.selector_positions[i]);
    }
  }
  out << "\n";
  if (cfg.med.grind_cap) out << "grind_cap = " << cfg.med.grind_cap << "\n";
  out << "high_max_outputs = " << cfg.high.max_outputs << "\n";
  out << "high_kind = " << (cfg.high.version == hdw::kP2shVersion ? "p2sh" : "p2pkh") << "\n";
  out << "scan_window = " << cfg.scan_window << "\n";
  return out.str();
}

Bytes serialize_channel_config(const ChannelConfig& cfg) {
  Writer w;
  w.u8(static_cast<std::uint8_t>(cfg.n));
  w.u8(static_cast<std::uint8_t>(cfg.m));
  w.u8(static_cast<std::uint8_t>(cfg.mode));
  w.u64(cfg.grind_cap);
  w.u8(static_cast<std::uint8_t>(cfg.selector_positions.size()));
  w.bytes(cfg.selector_positions);
  return std::move(w).take();
}

ChannelConfig parse_channel_config(ByteView data) {
  Reader r(data);
  ChannelConfig cfg;
  cfg.n = r.u8();
  cfg.m = r.u8();
  auto mode = r.u8();
  if (mode > 1) throw Error(ErrorCode::kValidation, "unknown embed mode");
  cfg.mode = static_cast<EmbedMode>(mode);
  cfg.grind_cap = r.u64();
  auto count = r.u8();
  auto pos = r.bytes(count);
  cfg.selector_positions.assign(pos.begin(), pos.end());
  if (!r.done()) throw Error(ErrorCode::kValidation, "trailing bytes in channel config");
  cfg.validate();
  return cfg;
}

}  // namespace stegoledger
