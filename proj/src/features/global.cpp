// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/features/global.hpp>

#include <algorithm>

#include <bridgeguard/common/error.hpp>
#include <bridgeguard/common/keccak.hpp>

namespace bridgeguard::features {

using nlohmann::json;

double density(std::size_t n_vertices, std::size_t n_edges) {
    if (n_vertices < 2) return 0.0;
    const auto v = static_cast<double>(n_vertices);
    return 2.0 * static_cast<double>(n_edges) / (v * (v - 1.0));
}

GraphStats graph_stats(const xteg::Xteg& g) {
    GraphStats s;
    s.n_vertices = g.vertices.size();
    s.n_edges = g.edges.size();
    for (const auto& e : g.edges) {
        if (e.kind == xteg::EdgeKind::kEmit) s.n_logs += e.multiplicity;
    }
    s.density = density(s.n_vertices, s.n_edges);
    return s;
}

void SignatureConfig::add(std::string_view event_signature, Direction d) {
    topics[event_topic(event_signature)] = d;
}

SignatureConfig SignatureConfig::defaults() {
    SignatureConfig c;
    for (auto sig : {
             "Deposit(address,address,uint256,uint256)",
             "Lock(address,address,uint256)",
             "Deposit(bytes32,bytes32,uint64)",
             "LogAnySwapOut(address,address,address,uint256,uint256,uint256)",
             "Locked(address,uint256)",
         }) {
        c.add(sig, Direction::kDeposit);
    }
    for (auto sig : {
             "Withdrawal(address,address,uint256,uint256)",
             "Unlock(address,address,uint256)",
             "ProposalExecution(uint8,uint64,bytes32)",
             "LogAnySwapIn(bytes32,address,address,uint256,uint256,uint256)",
             "Unlocked(address,uint256)",
         }) {
        c.add(sig, Direction::kWithdrawal);
    }
    return c;
}

json SignatureConfig::to_json() const {
    json j{{"deposit", json::array()}, {"withdrawal", json::array()}};
    for (const auto& [topic, dir] : topics) {
        j[dir == Direction::kDeposit ? "deposit" : "withdrawal"].push_back(topic.hex());
    }
    return j;
}

SignatureConfig SignatureConfig::from_json(const json& j) {
    SignatureConfig c;
    auto load = [&](const char* key, Direction d) {
        if (!j.contains(key)) return;
        for (const auto& entry : j.at(key)) {
            const auto s = entry.get<std::string>();
            if (s.rfind("0x", 0) == 0) {
                auto topic = Hash32::from_hex(s);
                if (!topic) throw Error{ErrorCode::kInvalidConfig, "bad event topic " + s};
                c.topics[*topic] = d;
            } else {
                c.add(s, d);
            }
        }
    };
    load("deposit", Direction::kDeposit);
    load("withdrawal", Direction::kWithdrawal);
    return c;
}

double direction_flag(std::span<const ingest::LogEntry> logs, const SignatureConfig& config) {
    bool deposit = false;
    bool withdrawal = false;
    for (const auto& log : logs) {
        if (!log.topic0) continue;
        auto it = config.topics.find(*log.topic0);
        if (it == config.topics.end()) continue;
        (it->second == Direction::kDeposit ? deposit : withdrawal) = true;
    }
    if (deposit && !withdrawal) return kDepositFlag;
    if (withdrawal && !deposit) return kWithdrawalFlag;
    return kUnknownFlag;
}

const std::array<std::string, kGlobalFeatureDim>& global_layout() {
    static const auto layout = [] {
        std::array<std::string, kGlobalFeatureDim> names;
        for (std::size_t i = 0; i < kEmbeddingDim; ++i) names[i] = "emb" + std::to_string(i);
        names[16] = "n_vertices";
        names[17] = "n_edges";
        names[18] = "n_logs";
        names[19] = "density";
        names[20] = "direction";
        return names;
    }();
    return layout;
}

std::array<double, kGlobalFeatureDim> GlobalFeature::values() const {
    std::array<double, kGlobalFeatureDim> v{};
    std::copy(embedding.begin(), embedding.end(), v.begin());
    v[16] = n_vertices;
    v[17] = n_edges;
    v[18] = n_logs;
    v[19] = density;
    v[20] = direction;
    return v;
}

GlobalFeature GlobalFeature::from_values(std::span<const double> values, std::span<const std::string> layout) {
    const auto& expected = global_layout();
    if (layout.size() != expected.size() || !std::equal(layout.begin(), layout.end(), expected.begin())) {
        throw Error{ErrorCode::kLayoutMismatch,
                    "global feature layout does not match " + std::string{kGlobalLayoutVersion}};
    }
    if (values.size() != kGlobalFeatureDim) {
        throw Error{ErrorCode::kDimensionMismatch, "global feature needs 21 values"};
    }
    GlobalFeature f;
    std::copy_n(values.begin(), kEmbeddingDim, f.embedding.begin());
    f.n_vertices = values[16];
    f.n_edges = values[17];
    f.n_logs = values[18];
    f.density = values[19];
    f.direction = values[20];
    return f;
}

GlobalFeature assemble_global(std::span<const double> embedding, const GraphStats& stats, double flag) {
    if (embedding.size() != kEmbeddingDim) {
        throw Error{ErrorCode::kDimensionMismatch,
                    "embedding has " + std::to_string(embedding.size()) + " entries, expected 16"};
    }
    GlobalFeature f;
    std::copy(embedding.begin(), embedding.end(), f.embedding.begin());
    f.n_vertices = static_cast<double>(stats.n_vertices);
    f.n_edges = static_cast<double>(stats.n_edges);
    f.n_logs = static_cast<double>(stats.n_logs);
    f.density = stats.density;
    f.direction = flag;
    return f;
}

}  // namespace bridgeguard::features
