// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include <bridgeguard/classify/evaluation.hpp>
#include <bridgeguard/ingest/manifest.hpp>
#include <bridgeguard/ingest/rpc.hpp>
#include <bridgeguard/pipeline/featurizer.hpp>

namespace bridgeguard::pipeline {

struct InputFailure {
    std::string source;
    ErrorCode code{ErrorCode::kMalformedTrace};
    std::string message;
};

struct Corpus {
    std::vector<ingest::TxRecord> records;
    std::vector<Label> labels;
    std::vector<std::string> sources;
    std::vector<InputFailure> failures;
};

//! Loads every manifest entry. Files are read from disk; hash entries go through `rpc`
//! (entries fail with kRpcUnavailable when it is null). Failures are collected, not thrown.
Corpus load_corpus(const ingest::DatasetManifest& manifest, ingest::RpcClient* rpc, std::size_t workers = 1);

struct ClassifierResult {
    classify::ClassifierConfig classifier;
    std::vector<classify::Metrics> runs;
    classify::MetricsSummary summary;
};

struct ExperimentReport {
    RunConfig config;
    std::size_t n_samples{0};
    std::array<std::size_t, kNumLabels> class_counts{};
    std::vector<ClassifierResult> results;

    //! Deterministic for identical inputs and config.
    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] std::string table() const;
};

//! Repeated protocol: for run r with seed = config.seed + r, a stratified split, an embedding
//! fitted on the training part only, then every classifier trained and scored on the test part.
ExperimentReport run_experiment(std::span<const TxAnalysis> corpus, std::span<const Label> labels,
                                const RunConfig& config, std::span<const classify::ClassifierConfig> classifiers);

}  // namespace bridgeguard::pipeline
