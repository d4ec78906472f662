// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/pipeline/config.hpp>

#include <cstdlib>
#include <fstream>

#include <bridgeguard/common/error.hpp>
#include <bridgeguard/common/stable_hash.hpp>
#include <bridgeguard/ingest/rpc.hpp>

namespace bridgeguard::pipeline {

using nlohmann::json;

json RunConfig::to_json() const {
    return {{"rpc_url", rpc_url ? json(*rpc_url) : json(nullptr)},
            {"rpc_cache_dir", rpc_cache_dir.generic_string()},
            {"rpc_concurrency", rpc_concurrency},
            {"rpc_timeout_s", rpc_timeout_s},
            {"chain_id", chain_id},
            {"embedding",
             {{"epochs", embedding.epochs},
              {"learning_rate", embedding.learning_rate},
              {"negative_samples", embedding.negative_samples},
              {"wl_iterations", embedding.wl_iterations}}},
            {"signatures", signatures.to_json()},
            {"classifier", classifier.to_json()},
            {"runs", runs},
            {"train_ratio", train_ratio},
            {"seed", seed},
            {"workers", workers}};
}

RunConfig RunConfig::from_json(const json& j) {
    if (!j.is_object()) throw Error{ErrorCode::kInvalidConfig, "config must be a JSON object"};
    // Overlay on the serialized defaults so every key is validated against a known schema.
    json merged = RunConfig{}.to_json();
    for (const auto& [key, value] : j.items()) {
        if (!merged.contains(key)) throw Error{ErrorCode::kInvalidConfig, "unknown config key '" + key + "'"};
        if (key == "signatures") {
            merged[key] = value;
        } else if (merged[key].is_object() && value.is_object()) {
            merged[key].merge_patch(value);
        } else {
            merged[key] = value;
        }
    }
    RunConfig c;
    try {
        if (!merged["rpc_url"].is_null()) c.rpc_url = merged["rpc_url"].get<std::string>();
        c.rpc_cache_dir = merged["rpc_cache_dir"].get<std::string>();
        c.rpc_concurrency = merged["rpc_concurrency"].get<std::size_t>();
        c.rpc_timeout_s = merged["rpc_timeout_s"].get<std::uint32_t>();
        c.chain_id = merged["chain_id"].get<std::uint64_t>();
        const auto& e = merged["embedding"];
        c.embedding.epochs = e.at("epochs").get<std::uint32_t>();
        c.embedding.learning_rate = e.at("learning_rate").get<double>();
        c.embedding.negative_samples = e.at("negative_samples").get<std::uint32_t>();
        c.embedding.wl_iterations = e.at("wl_iterations").get<std::uint32_t>();
        c.signatures = features::SignatureConfig::from_json(merged["signatures"]);
        c.classifier = classify::ClassifierConfig::from_json(merged["classifier"]);
        c.runs = merged["runs"].get<std::size_t>();
        c.train_ratio = merged["train_ratio"].get<double>();
        c.seed = merged["seed"].get<std::uint64_t>();
        c.workers = merged["workers"].get<std::size_t>();
    } catch (const json::exception& ex) {
        throw Error{ErrorCode::kInvalidConfig, std::string{"config: "} + ex.what()};
    }
    if (c.runs == 0) throw Error{ErrorCode::kInvalidConfig, "runs must be at least 1"};
    if (!(c.train_ratio > 0.0 && c.train_ratio < 1.0)) {
        throw Error{ErrorCode::kInvalidConfig, "train_ratio must lie in (0, 1)"};
    }
    if (c.embedding.wl_iterations == 0) throw Error{ErrorCode::kInvalidConfig, "wl_iterations must be positive"};
    if (c.workers == 0) c.workers = 1;
    return c;
}

std::string RunConfig::hash() const { return hash_hex(stable_hash(to_json().dump())); }

std::optional<std::string> process_env(const char* name) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string{v};
}

RunConfig resolve_run_config(const std::optional<std::filesystem::path>& file, const json& flag_overrides,
                             const EnvLookup& env) {
    json layered = json::object();
    auto overlay = [&](const json& patch) {
        for (const auto& [key, value] : patch.items()) {
            if (layered.contains(key) && layered[key].is_object() && value.is_object() && key != "signatures") {
                layered[key].merge_patch(value);
            } else {
                layered[key] = value;
            }
        }
    };
    if (file) {
        std::ifstream in{*file};
        if (!in) throw Error{ErrorCode::kIo, "cannot open config file " + file->string()};
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& ex) {
            throw Error{ErrorCode::kInvalidConfig, file->string() + ": " + ex.what()};
        }
        if (!j.is_object()) throw Error{ErrorCode::kInvalidConfig, file->string() + ": expected a JSON object"};
        overlay(j);
    }
    json from_env = json::object();
    if (auto v = env(ingest::kRpcUrlEnv)) from_env["rpc_url"] = *v;
    try {
        if (auto v = env("BRIDGEGUARD_SEED")) from_env["seed"] = std::stoull(*v);
        if (auto v = env("BRIDGEGUARD_WORKERS")) from_env["workers"] = std::stoull(*v);
    } catch (const std::exception&) {
        throw Error{ErrorCode::kInvalidConfig, "BRIDGEGUARD_SEED and BRIDGEGUARD_WORKERS must be integers"};
    }
    overlay(from_env);
    if (!flag_overrides.is_null()) overlay(flag_overrides);
    return RunConfig::from_json(layered);
}

}  // namespace bridgeguard::pipeline
