// Copyright 2026 The evoquery Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace evoquery {

enum class ErrorCode {
  InvalidArgument,
  EmptyDocument,
  ParseError,
  DuplicateId,
  PoolTooSmall,
  VariantMismatch,
  ProviderUnavailable,
  ProtocolError,
  EmptyQuery,
  EmptyCorpus,
  UnknownDocument,
  PositionOutOfRange,
  ComponentOutOfRange,
  WrongPopulationSize,
  ConfigInvalid,
  LedgerCorrupt,
  DivergenceDetected,
  NotReplayable,
  DuplicateJudgment,
  GradeOutOfRange,
  NoJudgments,
  LengthMismatch,
  ZeroEnergySequence,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures surface as this exception. `line()` is set for
// file-ingestion errors (1-based, 0 when not applicable).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0);

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::size_t line_;
};

}  // namespace evoquery
