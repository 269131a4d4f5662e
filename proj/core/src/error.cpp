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

#include "evoquery/error.hpp"

namespace evoquery {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyDocument: return "EmptyDocument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::PoolTooSmall: return "PoolTooSmall";
    case ErrorCode::VariantMismatch: return "VariantMismatch";
    case ErrorCode::ProviderUnavailable: return "ProviderUnavailable";
    case ErrorCode::ProtocolError: return "ProtocolError";
    case ErrorCode::EmptyQuery: return "EmptyQuery";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::UnknownDocument: return "UnknownDocument";
    case ErrorCode::PositionOutOfRange: return "PositionOutOfRange";
    case ErrorCode::ComponentOutOfRange: return "ComponentOutOfRange";
    case ErrorCode::WrongPopulationSize: return "WrongPopulationSize";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::LedgerCorrupt: return "LedgerCorrupt";
    case ErrorCode::DivergenceDetected: return "DivergenceDetected";
    case ErrorCode::NotReplayable: return "NotReplayable";
    case ErrorCode::DuplicateJudgment: return "DuplicateJudgment";
    case ErrorCode::GradeOutOfRange: return "GradeOutOfRange";
    case ErrorCode::NoJudgments: return "NoJudgments";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ZeroEnergySequence: return "ZeroEnergySequence";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message, std::size_t line) {
  std::string out(to_string(code));
  if (line != 0) out += " (line " + std::to_string(line) + ")";
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(decorate(code, message, line)), code_(code), line_(line) {}

}  // namespace evoquery
