// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include <bridgeguard/common/hex.hpp>
#include <bridgeguard/common/label.hpp>
#include <bridgeguard/ingest/manifest.hpp>
#include <bridgeguard/ingest/trace.hpp>

namespace bridgeguard::synth {

struct NoiseConfig {
    // Chance of each benign side call (fee collector, price oracle).
    double extra_call_prob{0.0};
    // Chance that the router is reached through a proxy DELEGATECALL, adding one call level.
    double depth_jitter{0.0};

    friend bool operator==(const NoiseConfig&, const NoiseConfig&) = default;
};

//! Contract addresses shared by every transaction of one corpus.
struct BridgeAddresses {
    Address router;
    Address router_proxy;
    Address token;
    Address weth;
    Address vault;
    Address verifier;
    Address fee_collector;
    Address oracle;

    static BridgeAddresses derive(std::uint64_t seed);
};

struct SynthTx {
    ingest::TxRecord record;
    Label label{Label::kNormal};
    std::string template_id;
};

SynthTx gen_normal_deposit(std::uint64_t seed, const NoiseConfig& noise = {},
                           const BridgeAddresses& bridge = BridgeAddresses::derive(0));
//! Native-coin deposit routed through a wrapped-token contract.
SynthTx gen_normal_deposit_eth(std::uint64_t seed, const NoiseConfig& noise = {},
                               const BridgeAddresses& bridge = BridgeAddresses::derive(0));
SynthTx gen_normal_withdrawal(std::uint64_t seed, const NoiseConfig& noise = {},
                              const BridgeAddresses& bridge = BridgeAddresses::derive(0));

//! Router emits Deposit although no tokens moved into the vault. With `fake_token` the
//! router pulls from an attacker-deployed token instead of skipping the transfer.
SynthTx gen_attack_src(std::uint64_t seed, const NoiseConfig& noise = {},
                       const BridgeAddresses& bridge = BridgeAddresses::derive(0), bool fake_token = false);

//! Freshly created contract calls the router's withdrawal path, then self-destructs.
SynthTx gen_attack_tgt(std::uint64_t seed, const NoiseConfig& noise = {},
                       const BridgeAddresses& bridge = BridgeAddresses::derive(0), bool create2 = false);

struct GenConfig {
    std::size_t n_normal{4000};
    double attack_rate{0.005};
    // Fraction of attacks labeled AttackSrc.
    double src_tgt_ratio{0.5};
    NoiseConfig noise{0.3, 0.2};
    std::uint64_t seed{0};
    std::uint64_t chain_id{1};

    [[nodiscard]] std::size_t n_attacks() const;
    [[nodiscard]] std::size_t n_attack_src() const;

    //! Throws Error{kInvalidConfig}.
    void validate() const;
    [[nodiscard]] nlohmann::json to_json() const;
    static GenConfig from_json(const nlohmann::json& j);
};

struct Dataset {
    std::vector<SynthTx> txs;
    // Sources are "traces/<index>.json", relative to the corpus directory.
    ingest::DatasetManifest manifest;
};

//! Exact counts per config, ordered by a seeded shuffle. cfg.noise applies to normal
//! templates only. Throws Error{kInvalidConfig}.
Dataset gen_dataset(const GenConfig& cfg, std::size_t workers = 1);

//! Writes traces/, manifest.jsonl and synth_config.json under `dir`.
void write_dataset(const std::filesystem::path& dir, const Dataset& dataset, const GenConfig& cfg);

}  // namespace bridgeguard::synth
