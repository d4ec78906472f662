// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

#include <bridgeguard/classify/classifier.hpp>
#include <bridgeguard/features/global.hpp>
#include <bridgeguard/features/graph2vec.hpp>

namespace bridgeguard::pipeline {

struct RunConfig {
    std::optional<std::string> rpc_url;
    std::filesystem::path rpc_cache_dir;
    std::size_t rpc_concurrency{4};
    std::uint32_t rpc_timeout_s{30};
    std::uint64_t chain_id{1};

    features::Graph2VecParams embedding;
    features::SignatureConfig signatures{features::SignatureConfig::defaults()};
    classify::ClassifierConfig classifier;

    std::size_t runs{10};
    double train_ratio{0.7};
    std::uint64_t seed{0};
    // Upper bound on worker threads for batch stages.
    std::size_t workers{1};

    [[nodiscard]] nlohmann::json to_json() const;
    //! Overlays `j` on the defaults; unknown keys are rejected. Throws Error{kInvalidConfig}.
    static RunConfig from_json(const nlohmann::json& j);

    //! 16 hex digits identifying the resolved configuration.
    [[nodiscard]] std::string hash() const;
};

using EnvLookup = std::function<std::optional<std::string>(const char*)>;

//! Process environment lookup.
std::optional<std::string> process_env(const char* name);

//! Resolves defaults < config file < environment < flags. `flag_overrides` uses the same
//! keys as RunConfig::to_json. Environment: BRIDGEGUARD_RPC_URL, BRIDGEGUARD_SEED, BRIDGEGUARD_WORKERS.
RunConfig resolve_run_config(const std::optional<std::filesystem::path>& file, const nlohmann::json& flag_overrides,
                             const EnvLookup& env = process_env);

}  // namespace bridgeguard::pipeline
