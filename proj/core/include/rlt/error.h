// Copyright 2026 The rltlab Authors
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

#ifndef RLT_ERROR_H_
#define RLT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace rlt {

enum class ErrorCode {
  kMalformedLine,
  kDuplicateDoc,
  kEmptyInput,
  kNegativeGrade,
  kDocSetMismatch,
  kEmptyIntersection,
  kCutoffOutOfRange,
  kMissingQuery,
  kLengthMismatch,
  kSupportViolation,
  kDegenerateSample,
  kTooFewSamples,
  kEmptyTraining,
  kEmptyCorpus,
  kMissingDocText,
  kMissingEmbedding,
  kInvalidArgument,
  kConfig,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above.
// The CLI maps kConfig to exit status 2 and everything else to 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kDuplicateDoc: return "DuplicateDoc";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kNegativeGrade: return "NegativeGrade";
    case ErrorCode::kDocSetMismatch: return "DocSetMismatch";
    case ErrorCode::kEmptyIntersection: return "EmptyIntersection";
    case ErrorCode::kCutoffOutOfRange: return "CutoffOutOfRange";
    case ErrorCode::kMissingQuery: return "MissingQuery";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kSupportViolation: return "SupportViolation";
    case ErrorCode::kDegenerateSample: return "DegenerateSample";
    case ErrorCode::kTooFewSamples: return "TooFewSamples";
    case ErrorCode::kEmptyTraining: return "EmptyTraining";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kMissingDocText: return "MissingDocText";
    case ErrorCode::kMissingEmbedding: return "MissingEmbedding";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

}  // namespace rlt

#endif  // RLT_ERROR_H_
