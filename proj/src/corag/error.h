// Copyright 2026 The CORAG Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CORAG_ERROR_H_
#define CORAG_ERROR_H_

#include <stdexcept>
#include <string>

namespace corag {

// Mirrors corag_status in the public C header; values must stay in sync.
enum class ErrorCode {
  kInvalidArgument = 1,
  kIo = 2,
  kParse = 3,
  kDuplicateId = 4,
  kDimensionMismatch = 5,
  kIdConflict = 6,
  kShape = 7,
  kVersion = 8,
  kNonFinite = 9,
  kLimit = 10,
  kUnresolvedId = 11,
  kInternal = 100,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace corag

#endif  // CORAG_ERROR_H_
