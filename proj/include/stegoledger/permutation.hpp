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
#ifndef STEGOLEDGER_PERMUTATION_HPP_
#define STEGOLEDGER_PERMUTATION_HPP_

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "stegoledger/hdw.hpp"

// Orderings of n distinct addresses <-> integers in [0, n!).
//
// Sequences compare lexicographically under `compare`: (a_1..a_n) > (a'_1..a'_n)
// when a_j = a'_j for all j < i and a_i > a'_i. rank() is the position of an
// ordering in that lexicographic enumeration of all n! orderings (Lehmer code).
namespace stegoledger::perm {

inline constexpr int kMaxItems = 20;  // 20! < 2^64

// Total order on addresses: the 160-bit digests compared byte by byte, most
// significant byte first. The version byte does not participate.
std::strong_ordering compare(const hdw::Address& a, const hdw::Address& b);

std::uint64_t factorial(int n);
// floor(log2 n!) computed on integers; n in [1, 20].
int perm_capacity_bits(int n);
// log2 n! as a real number, for capacity reporting only.
double perm_capacity_exact(int n);

class CanonicalSet {
 public:
  // Sorts ascending. Throws Error(kPermutationMismatch) on duplicate digests and
  // Error(kValidation) for n outside [1, 20].
  static CanonicalSet from(std::span<const hdw::Address> items);

  std::span<const hdw::Address> items() const { return items_; }
  int size() const { return static_cast<int>(items_.size()); }

 private:
  std::vector<hdw::Address> items_;
};

struct PermRank {
  std::uint64_t value = 0;
  int n = 0;
  int bit_capacity() const { return perm_capacity_bits(n); }
};

// Throws Error(kPermutationMismatch) if `observed` is not an ordering of canon.
PermRank rank(std::span<const hdw::Address> observed, const CanonicalSet& canon);
// Throws Error(kRangeError) if value >= n!.
std::vector<hdw::Address> unrank(std::uint64_t value, const CanonicalSet& canon);

}  // namespace stegoledger::perm

#endif  // STEGOLEDGER_PERMUTATION_HPP_
