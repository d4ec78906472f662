// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bridgeguard {

enum class ErrorCode {
    kMalformedTrace,
    kEmptyTrace,
    kRpcUnavailable,
    kTxNotFound,
    kTraceUnsupported,
    kInvalidManifest,
    kDisconnectedGraph,
    kEmptyCorpus,
    kDimensionMismatch,
    kLayoutMismatch,
    kSelfLoopPresent,
    kMultiEdgePresent,
    kGraphTooLarge,
    kClassTooSmall,
    kInvalidArgument,
    kEmptyTrainingSet,
    kKTooLarge,
    kLengthMismatch,
    kInvalidConfig,
    kModelMissing,
    kVersionMismatch,
    kCorpusTooSmall,
    kIo,
};

std::string_view to_string(ErrorCode code) noexcept;

//! Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error{what}, code_{code} {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace bridgeguard
