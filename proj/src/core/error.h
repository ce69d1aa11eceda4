// Copyright 2026 The DecentLLMs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace decentllms {

// Mirrors dllm_status in the C API; values must stay in sync.
enum class ErrorCode {
  kInvalidArgument = 1,
  kConfig = 2,
  kPrecondition = 3,
  kIo = 4,
  kParse = 5,
  kInvariant = 6,
  kNoAnswer = 7,
  kRejected = 8,
  kInternal = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline Error ConfigError(const std::string& what) {
  return Error(ErrorCode::kConfig, what);
}
inline Error PreconditionError(const std::string& what) {
  return Error(ErrorCode::kPrecondition, what);
}
inline Error InvalidArgument(const std::string& what) {
  return Error(ErrorCode::kInvalidArgument, what);
}

}  // namespace decentllms
