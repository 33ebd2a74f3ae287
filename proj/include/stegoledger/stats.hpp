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
#ifndef STEGOLEDGER_STATS_HPP_
#define STEGOLEDGER_STATS_HPP_

#include <cstdint>

#include "stegoledger/bytes.hpp"

namespace stegoledger::stats {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Upper tail of the chi-square distribution.
double chi_square_sf(double x, double dof);
// P(X >= k) for X ~ Binomial(n, p).
double binomial_upper_tail(std::uint64_t k, std::uint64_t n, double p);

// Frequency (monobit) test: S = sum(2b - 1), p = erfc(|S| / sqrt(2N)).
TestResult monobit(ByteView data);
// Goodness of fit of byte values to uniform, 255 degrees of freedom.
TestResult byte_chi_square(ByteView data);

// Two-sample versions used for A/B steganalysis.
// Chi-square homogeneity over the 2 x 256 byte-count table.
TestResult byte_homogeneity(ByteView a, ByteView b);
// Two-proportion z-test on the fraction of one bits.
TestResult monobit_two_sample(ByteView a, ByteView b);

}  // namespace stegoledger::stats

#endif  // STEGOLEDGER_STATS_HPP_
