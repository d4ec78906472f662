// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include <bridgeguard/features/wl.hpp>

namespace bridgeguard::features {

inline constexpr std::size_t kEmbeddingDim = 16;
using Embedding = std::array<double, kEmbeddingDim>;

struct Graph2VecParams {
    std::uint32_t epochs{100};
    double learning_rate{0.025};
    std::uint32_t negative_samples{5};
    std::uint32_t wl_iterations{kDefaultWlIterations};

    friend bool operator==(const Graph2VecParams&, const Graph2VecParams&) = default;
};

//! Distributed bag-of-words document model over WL tokens, trained with negative sampling.
//! Documents with identical content share one vector: they are trained once per epoch and
//! every copy in the corpus receives the same row of `graph_vectors`.
struct EmbeddingModel {
    static constexpr int kFormatVersion = 1;

    std::vector<std::string> vocab;
    std::unordered_map<std::string, std::uint32_t> vocab_index;
    std::vector<std::uint64_t> token_counts;
    // Output (context) vectors, one per vocabulary entry.
    std::vector<Embedding> token_vectors;
    // One row per corpus document, in corpus order.
    std::vector<Embedding> graph_vectors;
    std::vector<std::uint64_t> doc_hashes;
    std::unordered_map<std::uint64_t, std::uint32_t> doc_by_hash;
    Graph2VecParams params;
    std::uint64_t seed{0};

    [[nodiscard]] static constexpr std::size_t dim() noexcept { return kEmbeddingDim; }

    void rebuild_indexes();

    friend bool operator==(const EmbeddingModel& a, const EmbeddingModel& b) {
        return a.vocab == b.vocab && a.token_counts == b.token_counts && a.token_vectors == b.token_vectors &&
               a.graph_vectors == b.graph_vectors && a.doc_hashes == b.doc_hashes && a.params == b.params &&
               a.seed == b.seed;
    }
};

//! Throws Error{kEmptyCorpus}. Deterministic given (corpus, params, seed).
EmbeddingModel train_graph2vec(const std::vector<WLDocument>& corpus, const Graph2VecParams& params,
                               std::uint64_t seed);

//! Corpus members are answered from the trained vectors; other documents get a fresh vector
//! fitted by gradient steps against the frozen token vectors.
Embedding infer_embedding(const EmbeddingModel& model, const WLDocument& doc);

double cosine_similarity(const Embedding& a, const Embedding& b);

nlohmann::json to_json(const EmbeddingModel& model);
//! Throws Error{kVersionMismatch} for other format versions and Error{kDimensionMismatch} for other dims.
EmbeddingModel embedding_from_json(const nlohmann::json& j);

}  // namespace bridgeguard::features
