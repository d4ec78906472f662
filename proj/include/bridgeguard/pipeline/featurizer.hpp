// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <span>
#include <vector>

#include <json.hpp>

#include <bridgeguard/classify/classifier.hpp>
#include <bridgeguard/features/global.hpp>
#include <bridgeguard/features/graph2vec.hpp>
#include <bridgeguard/features/wl.hpp>
#include <bridgeguard/ingest/trace.hpp>
#include <bridgeguard/motif/census.hpp>
#include <bridgeguard/pipeline/config.hpp>
#include <bridgeguard/xteg/xteg.hpp>

namespace bridgeguard::pipeline {

//! Everything about one transaction that does not depend on a trained embedding.
struct TxAnalysis {
    Hash32 tx_hash;
    xteg::Xteg graph;
    features::WLDocument doc;
    features::GraphStats stats;
    double direction{features::kUnknownFlag};
    motif::LocalFeature local;
};

TxAnalysis analyze(const ingest::TxRecord& record, const RunConfig& config);

//! Analyzes records in parallel under config.workers; results keep input order.
std::vector<TxAnalysis> analyze_all(std::span<const ingest::TxRecord> records, const RunConfig& config);

classify::FeatureVector featurize(const TxAnalysis& a, const features::EmbeddingModel& embedding);

features::EmbeddingModel train_embedding(std::span<const TxAnalysis> train, const RunConfig& config,
                                         std::uint64_t seed);

//! Trained embedding plus classifier.
struct Detector {
    RunConfig config;
    features::EmbeddingModel embedding;
    std::unique_ptr<classify::Classifier> classifier;

    [[nodiscard]] classify::Prediction detect(const TxAnalysis& a) const;
    [[nodiscard]] classify::Prediction detect(const ingest::TxRecord& record) const;
};

//! Fits the embedding, then the classifier, on the given transactions. Seeds come from config.seed.
Detector train_detector(std::span<const TxAnalysis> train, std::span<const Label> labels, const RunConfig& config);

}  // namespace bridgeguard::pipeline
