// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <bridgeguard/common/hex.hpp>
#include <bridgeguard/common/uint256.hpp>

namespace bridgeguard::ingest {

enum class FrameKind : std::uint8_t {
    kCall,
    kStaticCall,
    kDelegateCall,
    kCallCode,
    kCreate,
    kCreate2,
    kSelfDestruct,
};

std::string_view to_string(FrameKind kind) noexcept;
std::optional<FrameKind> parse_frame_kind(std::string_view s) noexcept;

struct CallFrame {
    FrameKind kind{FrameKind::kCall};
    Address caller;
    // Created address for CREATE*, refund beneficiary for SELFDESTRUCT (zero when absent).
    Address callee;
    // Absent iff the input payload is shorter than four bytes.
    std::optional<Selector> selector;
    Uint256 value;
    std::uint32_t depth{0};
    // Global pre-order index, root = 0.
    std::uint32_t order{0};
    // Set when the tracer reported an error for this frame. Graph construction ignores it.
    bool reverted{false};
    std::vector<CallFrame> children;

    friend bool operator==(const CallFrame&, const CallFrame&) = default;
};

//! Frame that was executing when a log was emitted.
struct LogOrigin {
    std::uint32_t frame{0};
    // Number of child calls the frame had made before emitting.
    std::uint32_t position{0};

    friend bool operator==(const LogOrigin&, const LogOrigin&) = default;
};

struct LogEntry {
    Address emitter;
    std::optional<Hash32> topic0;
    std::vector<Hash32> topics_rest;
    Bytes data;
    std::uint64_t log_index{0};
    std::optional<LogOrigin> origin;

    friend bool operator==(const LogEntry&, const LogEntry&) = default;
};

struct TxRecord {
    Hash32 tx_hash;
    std::uint64_t chain_id{1};
    CallFrame root_frame;
    std::vector<LogEntry> logs;
    std::uint64_t block_number{0};
    Address sender;

    friend bool operator==(const TxRecord&, const TxRecord&) = default;
};

//! Metadata that is not part of a call-tracer document.
struct DocumentContext {
    std::optional<Hash32> tx_hash;
    std::optional<std::uint64_t> chain_id;
    std::optional<std::uint64_t> block_number;
};

//! Parses a call-tracer tree plus receipt logs into a normalized record.
//! Logs embedded in trace frames (tracer `withLog` mode) are used to attribute each
//! receipt log to its emitting frame; logs without such a match are attributed to the
//! deepest frame whose callee is the emitter, earliest in pre-order.
//! Throws Error{kMalformedTrace} or Error{kEmptyTrace}.
TxRecord parse_trace(const nlohmann::json& trace, const nlohmann::json& logs, const DocumentContext& ctx = {});

//! Parses the on-disk document: {"trace": ..., "logs": [...], optional "tx_hash", "chain_id", "block_number"}.
TxRecord parse_document(const nlohmann::json& doc);

TxRecord load_trace_file(const std::filesystem::path& path);

//! Inverse of parse_document: loading the result yields an equal record.
nlohmann::json to_document(const TxRecord& record);

void write_trace_file(const std::filesystem::path& path, const TxRecord& record);

//! Pre-order view of every frame; element i has order == i.
std::vector<const CallFrame*> flatten_frames(const TxRecord& record);

std::size_t frame_count(const CallFrame& root);

}  // namespace bridgeguard::ingest
