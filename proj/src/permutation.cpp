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
#include "stegoledger/permutation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "stegoledger/errors.hpp"

namespace stegoledger::perm {

std::strong_ordering compare(const hdw::Address& a, const hdw::Address& b) {
  for (std::size_t i = 0; i < a.digest.size(); ++i) {
    if (a.digest[i] != b.digest[i]) return a.digest[i] <=> b.digest[i];
  }
  return std::strong_ordering::equal;
}

std::uint64_t factorial(int n) {
  if (n < 0 || n > kMaxItems) throw Error(ErrorCode::kRangeError, "factorial argument out of range");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

int perm_capacity_bits(int n) {
  if (n < 1) throw Error(ErrorCode::kRangeError, "need at least one item");
  return std::bit_width(factorial(n)) - 1;
}

double perm_capacity_exact(int n) {
  double bits = 0.0;
  for (int i = 2; i <= n; ++i) bits += std::log2(static_cast<double>(i));
  return bits;
}

namespace {

bool less(const hdw::Address& a, const hdw::Address& b) { return compare(a, b) < 0; }

}  // namespace

CanonicalSet CanonicalSet::from(std::span<const hdw::Address> items) {
  if (items.empty() || items.size() > static_cast<std::size_t>(kMaxItems)) {
    throw Error(ErrorCode::kValidation, "canonical set needs 1..20 items");
  }
  CanonicalSet set;
  set.items_.assign(items.begin(), items.end());
  std::sort(set.items_.begin(), set.items_.end(), less);
  for (std::size_t i = 1; i < set.items_.size(); ++i) {
    if (compare(set.items_[i - 1], set.items_[i]) == 0) {
      throw Error(ErrorCode::kPermutationMismatch, "duplicate address in set");
    }
  }
  return set;
}

PermRank rank(std::span<const hdw::Address> observed, const CanonicalSet& canon) {
  const int n = canon.size();
  if (observed.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::kPermutationMismatch, "observed sequence has the wrong length");
  }
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::uint64_t value = 0;
  for (int i = 0; i < n; ++i) {
    auto items = canon.items();
    auto it = std::lower_bound(items.begin(), items.end(), observed[static_cast<std::size_t>(i)], less);
    if (it == items.end() || compare(*it, observed[static_cast<std::size_t>(i)]) != 0) {
      throw Error(ErrorCode::kPermutationMismatch, "address not in canonical set");
    }
    auto pos = static_cast<std::size_t>(it - items.begin());
    if (used[pos]) throw Error(ErrorCode::kPermutationMismatch, "address repeated");
    used[pos] = true;
    // Lehmer digit: unused items smaller than this one.
    std::uint64_t digit = 0;
    for (std::size_t j = 0; j < pos; ++j) digit += used[j] ? 0 : 1;
    value += digit * factorial(n - 1 - i);
  }
  return {value, n};
}

std::vector<hdw::Address> unrank(std::uint64_t value, const CanonicalSet& canon) {
  const int n = canon.size();
  if (value >= factorial(n)) throw Error(ErrorCode::kRangeError, "rank exceeds n! - 1");
  std::vector<hdw::Address> pool(canon.items().begin(), canon.items().end());
  std::vector<hdw::Address> out;
  out.reserve(pool.size());
  for (int i = 0; i < n; ++i) {
    const std::uint64_t f = factorial(n - 1 - i);
    const auto digit = static_cast<std::ptrdiff_t>(value / f);
    value %= f;
    out.push_back(pool[static_cast<std::size_t>(digit)]);
    pool.erase(pool.begin() + digit);
  }
  return out;
}

}  // namespace stegoledger::perm
