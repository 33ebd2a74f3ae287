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
#include "stegoledger/stats.hpp"

#include <array>
#include <bit>
#include <cmath>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace stegoledger::stats {

namespace {

std::uint64_t count_ones(ByteView data) {
  std::uint64_t ones = 0;
  for (std::uint8_t b : data) ones += static_cast<std::uint64_t>(std::popcount(b));
  return ones;
}

std::array<double, 256> histogram(ByteView data) {
  std::array<double, 256> h{};
  for (std::uint8_t b : data) h[b] += 1.0;
  return h;
}

}  // namespace

double chi_square_sf(double x, double dof) {
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, x / 2.0);
}

double binomial_upper_tail(std::uint64_t k, std::uint64_t n, double p) {
  if (k == 0) return 1.0;
  if (k > n) return 0.0;
  boost::math::binomial_distribution<double> dist(static_cast<double>(n), p);
  return boost::math::cdf(boost::math::complement(dist, static_cast<double>(k - 1)));
}

TestResult monobit(ByteView data) {
  const double n = static_cast<double>(data.size()) * 8.0;
  if (n == 0) return {};
  const double s = 2.0 * static_cast<double>(count_ones(data)) - n;
  const double stat = std::fabs(s) / std::sqrt(n);
  return {stat, std::erfc(stat / std::sqrt(2.0))};
}

TestResult byte_chi_square(ByteView data) {
  if (data.empty()) return {};
  const auto h = histogram(data);
  const double expected = static_cast<double>(data.size()) / 256.0;
  double chi = 0.0;
  for (double c : h) chi += (c - expected) * (c - expected) / expected;
  return {chi, chi_square_sf(chi, 255.0)};
}

TestResult byte_homogeneity(ByteView a, ByteView b) {
  if (a.empty() || b.empty()) return {};
  const auto ha = histogram(a);
  const auto hb = histogram(b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double total = na + nb;
  double chi = 0.0;
  int dof = -1;
  for (int i = 0; i < 256; ++i) {
    const double col = ha[static_cast<std::size_t>(i)] + hb[static_cast<std::size_t>(i)];
    if (col == 0) continue;
    ++dof;
    const double ea = col * na / total;
    const double eb = col * nb / total;
    chi += (ha[static_cast<std::size_t>(i)] - ea) * (ha[static_cast<std::size_t>(i)] - ea) / ea;
    chi += (hb[static_cast<std::size_t>(i)] - eb) * (hb[static_cast<std::size_t>(i)] - eb) / eb;
  }
  if (dof <= 0) return {chi, 1.0};
  return {chi, chi_square_sf(chi, dof)};
}

TestResult monobit_two_sample(ByteView a, ByteView b) {
  const double na = static_cast<double>(a.size()) * 8.0;
  const double nb = static_cast<double>(b.size()) * 8.0;
  if (na == 0 || nb == 0) return {};
  const double pa = static_cast<double>(count_ones(a)) / na;
  const double pb = static_cast<double>(count_ones(b)) / nb;
  const double pooled = (pa * na + pb * nb) / (na + nb);
  const double se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / na + 1.0 / nb));
  if (se == 0) return {0.0, pa == pb ? 1.0 : 0.0};
  const double z = std::fabs(pa - pb) / se;
  return {z, std::erfc(z / std::sqrt(2.0))};
}

}  // namespace stegoledger::stats
