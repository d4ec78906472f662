// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <bridgeguard/common/hex.hpp>
#include <bridgeguard/ingest/trace.hpp>
#include <bridgeguard/xteg/digraph.hpp>

namespace bridgeguard::xteg {

enum class VertexKind : std::uint8_t {
    kEoa,
    kContractFunction,
    kLogEvent,
};

enum class EdgeKind : std::uint8_t {
    kCall,
    kStaticCall,
    kDelegateCall,
    kCallCode,
    kCreate,
    kCreate2,
    kSelfDestruct,
    kEmit,
};

inline constexpr std::size_t kNumEdgeKinds = 8;

std::string_view to_string(VertexKind kind) noexcept;
std::string_view to_string(EdgeKind kind) noexcept;
EdgeKind edge_kind_of(ingest::FrameKind kind) noexcept;

//! Which entry point of a contract a vertex stands for.
enum class EntryPoint : std::uint8_t {
    kSelector,     // four-byte function selector
    kFallback,     // input shorter than four bytes
    kConstructor,  // target of CREATE / CREATE2
};

//! Identity payload of a vertex. Two vertices are the same vertex iff their keys are equal.
struct VertexKey {
    VertexKind kind{VertexKind::kEoa};
    Address address;  // EOA, contract, or log emitter
    EntryPoint entry{EntryPoint::kFallback};
    Selector selector;                    // meaningful when entry == kSelector
    std::optional<Hash32> topic0;         // log events; nullopt = anonymous

    friend auto operator<=>(const VertexKey&, const VertexKey&) = default;
};

struct Vertex {
    VertexKey key;
    std::uint32_t id{0};

    [[nodiscard]] VertexKind kind() const noexcept { return key.kind; }
    //! Human-readable form, e.g. "fn 0xabc..:0xa9059cbb" or "log 0xabc..:anonymous".
    [[nodiscard]] std::string describe() const;

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct XtegEdge {
    std::uint32_t src{0};
    std::uint32_t dst{0};
    EdgeKind kind{EdgeKind::kCall};
    // Execution position of the first occurrence.
    std::uint32_t order{0};
    std::uint32_t multiplicity{1};

    friend bool operator==(const XtegEdge&, const XtegEdge&) = default;
};

//! Cross-chain transaction execution graph of one transaction. Vertex ids are indices into
//! `vertices`, assigned in first-appearance order; edges are sorted by `order`.
struct Xteg {
    std::vector<Vertex> vertices;
    std::vector<XtegEdge> edges;
    Hash32 tx_hash;

    [[nodiscard]] std::uint32_t num_vertices() const noexcept { return static_cast<std::uint32_t>(vertices.size()); }

    friend bool operator==(const Xteg&, const Xteg&) = default;
};

//! One edge per frame (executing vertex -> callee vertex) and one EMIT edge per log,
//! identical (src, dst, kind) edges merged. Throws Error{kEmptyTrace} / Error{kDisconnectedGraph}.
Xteg build_xteg(const ingest::TxRecord& record);

//! Number of edges before merging: sum of multiplicities.
std::size_t raw_edge_count(const Xteg& g);

//! Drops edge kinds, multiplicities and self-loops.
SimpleDigraph to_simple_digraph(const Xteg& g);

//! Debug dump: "v <id> <kind> <describe>" lines then "<src> <dst> <kind> <order> <multiplicity>" lines.
void write_edge_list(std::ostream& out, const Xteg& g);

}  // namespace bridgeguard::xteg
