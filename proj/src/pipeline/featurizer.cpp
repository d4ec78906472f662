// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/pipeline/featurizer.hpp>

#include <bridgeguard/classify/features.hpp>
#include <bridgeguard/common/error.hpp>
#include <bridgeguard/common/parallel.hpp>

namespace bridgeguard::pipeline {

TxAnalysis analyze(const ingest::TxRecord& record, const RunConfig& config) {
    TxAnalysis a;
    a.tx_hash = record.tx_hash;
    a.graph = xteg::build_xteg(record);
    a.doc = features::wl_document(a.graph, config.embedding.wl_iterations);
    a.stats = features::graph_stats(a.graph);
    a.direction = features::direction_flag(record.logs, config.signatures);
    a.local = motif::local_feature(a.graph);
    return a;
}

std::vector<TxAnalysis> analyze_all(std::span<const ingest::TxRecord> records, const RunConfig& config) {
    std::vector<TxAnalysis> out(records.size());
    parallel_for(records.size(), config.workers, [&](std::size_t i) { out[i] = analyze(records[i], config); });
    return out;
}

classify::FeatureVector featurize(const TxAnalysis& a, const features::EmbeddingModel& embedding) {
    const auto emb = features::infer_embedding(embedding, a.doc);
    const auto global = features::assemble_global(emb, a.stats, a.direction);
    return classify::concat_features(global, a.local);
}

features::EmbeddingModel train_embedding(std::span<const TxAnalysis> train, const RunConfig& config,
                                         std::uint64_t seed) {
    std::vector<features::WLDocument> docs;
    docs.reserve(train.size());
    for (const auto& a : train) docs.push_back(a.doc);
    return features::train_graph2vec(docs, config.embedding, seed);
}

classify::Prediction Detector::detect(const TxAnalysis& a) const {
    if (!classifier) throw Error{ErrorCode::kModelMissing, "detector has no trained classifier"};
    return classifier->predict(featurize(a, embedding));
}

classify::Prediction Detector::detect(const ingest::TxRecord& record) const { return detect(analyze(record, config)); }

Detector train_detector(std::span<const TxAnalysis> train, std::span<const Label> labels, const RunConfig& config) {
    if (train.size() != labels.size()) throw Error{ErrorCode::kLengthMismatch, "transactions and labels differ"};
    Detector d;
    d.config = config;
    d.embedding = train_embedding(train, config, config.seed);
    std::vector<classify::FeatureVector> rows(train.size());
    parallel_for(train.size(), config.workers, [&](std::size_t i) { rows[i] = featurize(train[i], d.embedding); });
    auto cc = config.classifier;
    cc.seed = config.seed;
    d.classifier = classify::make_classifier(cc);
    d.classifier->fit(rows, labels);
    return d;
}

}  // namespace bridgeguard::pipeline
