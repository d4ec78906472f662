// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/pipeline/experiment.hpp>

#include <sstream>

#include <bridgeguard/classify/split.hpp>
#include <bridgeguard/common/parallel.hpp>

namespace bridgeguard::pipeline {

Corpus load_corpus(const ingest::DatasetManifest& manifest, ingest::RpcClient* rpc, std::size_t workers) {
    const auto n = manifest.entries.size();
    std::vector<std::optional<ingest::TxRecord>> loaded(n);
    std::vector<std::optional<InputFailure>> failed(n);

    std::vector<std::size_t> by_hash;
    for (std::size_t i = 0; i < n; ++i) {
        if (manifest.entries[i].is_tx_hash()) by_hash.push_back(i);
    }
    parallel_for(n, workers, [&](std::size_t i) {
        const auto& e = manifest.entries[i];
        if (e.is_tx_hash()) return;
        try {
            loaded[i] = ingest::load_trace_file(manifest.resolve(e));
        } catch (const Error& err) {
            failed[i] = InputFailure{e.source, err.code(), err.what()};
        }
    });
    if (!by_hash.empty()) {
        if (rpc == nullptr) {
            for (auto i : by_hash) {
                failed[i] = InputFailure{manifest.entries[i].source, ErrorCode::kRpcUnavailable,
                                         "no RPC endpoint configured for transaction hash inputs"};
            }
        } else {
            std::vector<Hash32> hashes;
            for (auto i : by_hash) hashes.push_back(*Hash32::from_hex(manifest.entries[i].source));
            auto outcomes = rpc->fetch_many(hashes);
            for (std::size_t k = 0; k < by_hash.size(); ++k) {
                const auto i = by_hash[k];
                if (outcomes[k].record) {
                    loaded[i] = std::move(outcomes[k].record);
                } else {
                    failed[i] = InputFailure{manifest.entries[i].source, outcomes[k].error->code(),
                                             outcomes[k].error->what()};
                }
            }
        }
    }

    Corpus c;
    for (std::size_t i = 0; i < n; ++i) {
        if (loaded[i]) {
            c.records.push_back(std::move(*loaded[i]));
            c.labels.push_back(manifest.entries[i].label);
            c.sources.push_back(manifest.entries[i].source);
        } else if (failed[i]) {
            c.failures.push_back(std::move(*failed[i]));
        }
    }
    return c;
}

nlohmann::json ExperimentReport::to_json() const {
    nlohmann::json results_json = nlohmann::json::array();
    for (const auto& r : results) {
        nlohmann::json runs = nlohmann::json::array();
        for (const auto& m : r.runs) runs.push_back(m.to_json());
        results_json.push_back({{"classifier", r.classifier.to_json()}, {"summary", r.summary.to_json()}, {"runs", runs}});
    }
    nlohmann::json counts = nlohmann::json::object();
    for (auto l : kAllLabels) counts[std::string{to_string(l)}] = class_counts[index_of(l)];
    return {{"report", "bridgeguard-metrics"},
            {"version", 1},
            {"config_hash", config.hash()},
            {"config", config.to_json()},
            {"n_samples", n_samples},
            {"class_counts", counts},
            {"results", results_json}};
}

std::string ExperimentReport::table() const {
    std::ostringstream out;
    out << "samples: " << n_samples;
    for (auto l : kAllLabels) out << "  " << to_string(l) << "=" << class_counts[index_of(l)];
    out << "\nconfig: " << config.hash() << "\n";
    for (const auto& r : results) {
        out << "\n[" << r.classifier.kind << "]\n" << r.summary.table();
    }
    return out.str();
}

ExperimentReport run_experiment(std::span<const TxAnalysis> corpus, std::span<const Label> labels,
                                const RunConfig& config, std::span<const classify::ClassifierConfig> classifiers) {
    if (corpus.size() != labels.size()) throw Error{ErrorCode::kLengthMismatch, "transactions and labels differ"};
    if (config.runs == 0) throw Error{ErrorCode::kInvalidArgument, "runs must be at least 1"};

    ExperimentReport report;
    report.config = config;
    report.n_samples = corpus.size();
    for (auto l : labels) ++report.class_counts[index_of(l)];

    const std::size_t n_clf = classifiers.size();
    // metrics[run][classifier]
    std::vector<std::vector<classify::Metrics>> metrics(config.runs, std::vector<classify::Metrics>(n_clf));
    parallel_for(config.runs, config.workers, [&](std::size_t r) {
        const std::uint64_t seed = config.seed + r;
        const auto split = classify::split_indices(labels, config.train_ratio, true, seed);
        std::vector<TxAnalysis> train;
        train.reserve(split.train.size());
        for (auto i : split.train) train.push_back(corpus[i]);
        const auto embedding = train_embedding(train, config, seed);

        std::vector<classify::FeatureVector> train_x;
        std::vector<Label> train_y;
        for (auto i : split.train) {
            train_x.push_back(featurize(corpus[i], embedding));
            train_y.push_back(labels[i]);
        }
        std::vector<classify::FeatureVector> test_x;
        std::vector<Label> test_y;
        for (auto i : split.test) {
            test_x.push_back(featurize(corpus[i], embedding));
            test_y.push_back(labels[i]);
        }
        for (std::size_t c = 0; c < n_clf; ++c) {
            auto cc = classifiers[c];
            cc.seed = seed;
            auto model = classify::make_classifier(cc);
            model->fit(train_x, train_y);
            std::vector<Label> pred;
            pred.reserve(test_x.size());
            for (const auto& x : test_x) pred.push_back(model->predict(x).label);
            metrics[r][c] = classify::evaluate(pred, test_y);
        }
    });

    for (std::size_t c = 0; c < n_clf; ++c) {
        ClassifierResult res;
        res.classifier = classifiers[c];
        for (std::size_t r = 0; r < config.runs; ++r) res.runs.push_back(metrics[r][c]);
        res.summary = classify::summarize(res.runs);
        report.results.push_back(std::move(res));
    }
    return report;
}

}  // namespace bridgeguard::pipeline
