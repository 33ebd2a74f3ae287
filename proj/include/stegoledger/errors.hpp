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
#ifndef STEGOLEDGER_ERRORS_HPP_
#define STEGOLEDGER_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace stegoledger {

enum class ErrorCode {
  kValidation,          // malformed input, bad config, framing limits
  kDegenerateIndex,     // derivation hit the zero scalar / point at infinity
  kPermutationMismatch,
  kRangeError,
  kGrindExhausted,
  kTagCorruption,
  kAuthError,
  kIncomplete,
  kInsufficientSample,
  kRejected,            // ledger refused a transaction
  kNonceReuse,
  kChainCorruption,
  kIo,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stegoledger

#endif  // STEGOLEDGER_ERRORS_HPP_
