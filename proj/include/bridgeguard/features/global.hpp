// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <bridgeguard/features/graph2vec.hpp>
#include <bridgeguard/ingest/trace.hpp>
#include <bridgeguard/xteg/xteg.hpp>

namespace bridgeguard::features {

struct GraphStats {
    std::size_t n_vertices{0};
    // Merged edges: distinct (src, dst, kind) triples.
    std::size_t n_edges{0};
    std::size_t n_logs{0};
    // 2|E| / (|V|(|V|-1)); the undirected convention, so it can exceed 1 on directed graphs. 0 when |V| < 2.
    double density{0.0};

    friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

double density(std::size_t n_vertices, std::size_t n_edges);

GraphStats graph_stats(const xteg::Xteg& g);

enum class Direction : std::uint8_t { kDeposit, kWithdrawal };

//! topic0 -> direction class for bridge events.
struct SignatureConfig {
    std::map<Hash32, Direction> topics;

    void add(std::string_view event_signature, Direction d);
    //! Deposit/Lock and Withdrawal/Unlock style events of common bridges, including the synthetic corpus ones.
    static SignatureConfig defaults();

    nlohmann::json to_json() const;
    //! Accepts {"deposit": [sig-or-topic...], "withdrawal": [...]}; entries starting with 0x are topics.
    static SignatureConfig from_json(const nlohmann::json& j);
};

inline constexpr double kDepositFlag = 1.0;
inline constexpr double kWithdrawalFlag = 0.0;
inline constexpr double kUnknownFlag = 0.5;

//! 1.0 deposit-only, 0.0 withdrawal-only, 0.5 when neither or both classes appear.
double direction_flag(std::span<const ingest::LogEntry> logs, const SignatureConfig& config);

inline constexpr std::size_t kGlobalFeatureDim = 21;
inline constexpr std::string_view kGlobalLayoutVersion = "global-v1";

//! Names of the 21 global dimensions in layout order.
const std::array<std::string, kGlobalFeatureDim>& global_layout();

struct GlobalFeature {
    Embedding embedding{};
    double n_vertices{0.0};
    double n_edges{0.0};
    double n_logs{0.0};
    double density{0.0};
    double direction{kUnknownFlag};

    //! [embedding(16), |V|, |E|, n_logs, density, flag]
    [[nodiscard]] std::array<double, kGlobalFeatureDim> values() const;

    //! Rebuilds a feature from values tagged with their layout; throws Error{kLayoutMismatch}
    //! when the layout is not exactly global_layout().
    static GlobalFeature from_values(std::span<const double> values, std::span<const std::string> layout);

    friend bool operator==(const GlobalFeature&, const GlobalFeature&) = default;
};

//! Throws Error{kDimensionMismatch} unless the embedding has 16 entries.
GlobalFeature assemble_global(std::span<const double> embedding, const GraphStats& stats, double flag);

}  // namespace bridgeguard::features
