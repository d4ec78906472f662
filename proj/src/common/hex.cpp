// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/common/error.hpp>
#include <bridgeguard/common/hex.hpp>

namespace bridgeguard {

namespace {

    int hex_digit(char c) {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    }

}  // namespace

std::optional<Bytes> from_hex(std::string_view hex) {
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) {
        hex.remove_prefix(2);
    }
    if (hex.size() % 2 != 0) {
        return std::nullopt;
    }
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int hi = hex_digit(hex[2 * i]);
        const int lo = hex_digit(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) {
            return std::nullopt;
        }
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 + 2 * bytes.size());
    out += "0x";
    for (auto b : bytes) {
        out += kDigits[b >> 4];
        out += kDigits[b & 0x0f];
    }
    return out;
}

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::kMalformedTrace: return "MalformedTrace";
        case ErrorCode::kEmptyTrace: return "EmptyTrace";
        case ErrorCode::kRpcUnavailable: return "RpcUnavailable";
        case ErrorCode::kTxNotFound: return "TxNotFound";
        case ErrorCode::kTraceUnsupported: return "TraceUnsupported";
        case ErrorCode::kInvalidManifest: return "InvalidManifest";
        case ErrorCode::kDisconnectedGraph: return "DisconnectedGraph";
        case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
        case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
        case ErrorCode::kLayoutMismatch: return "LayoutMismatch";
        case ErrorCode::kSelfLoopPresent: return "SelfLoopPresent";
        case ErrorCode::kMultiEdgePresent: return "MultiEdgePresent";
        case ErrorCode::kGraphTooLarge: return "GraphTooLarge";
        case ErrorCode::kClassTooSmall: return "ClassTooSmall";
        case ErrorCode::kInvalidArgument: return "InvalidArgument";
        case ErrorCode::kEmptyTrainingSet: return "EmptyTrainingSet";
        case ErrorCode::kKTooLarge: return "KTooLarge";
        case ErrorCode::kLengthMismatch: return "LengthMismatch";
        case ErrorCode::kInvalidConfig: return "InvalidConfig";
        case ErrorCode::kModelMissing: return "ModelMissing";
        case ErrorCode::kVersionMismatch: return "VersionMismatch";
        case ErrorCode::kCorpusTooSmall: return "CorpusTooSmall";
        case ErrorCode::kIo: return "Io";
    }
    return "Unknown";
}

}  // namespace bridgeguard
