// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/features/graph2vec.hpp>

#include <cmath>

#include <bridgeguard/common/error.hpp>
#include <bridgeguard/common/random.hpp>
#include <bridgeguard/common/stable_hash.hpp>

namespace bridgeguard::features {

using nlohmann::json;

namespace {

    constexpr double kMinLearningRateFraction = 1e-4;
    constexpr double kNegativePower = 0.75;

    double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

    double dot(const Embedding& a, const Embedding& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < kEmbeddingDim; ++i) s += a[i] * b[i];
        return s;
    }

    Embedding random_vector(std::uint64_t seed) {
        Rng rng{seed};
        Embedding v;
        for (auto& x : v) x = (uniform01(rng) - 0.5) / static_cast<double>(kEmbeddingDim);
        return v;
    }

    // Document vectors start from their content so identical documents start identical.
    Embedding initial_doc_vector(std::uint64_t model_seed, std::uint64_t content_hash) {
        return random_vector(mix_seed(model_seed, content_hash));
    }

    //! Samples token ids proportional to count^0.75.
    class NegativeSampler {
      public:
        explicit NegativeSampler(const std::vector<std::uint64_t>& counts) {
            cumulative_.reserve(counts.size());
            double total = 0.0;
            for (auto c : counts) {
                total += std::pow(static_cast<double>(c), kNegativePower);
                cumulative_.push_back(total);
            }
        }

        std::uint32_t sample(Rng& rng) const {
            const double u = uniform01(rng) * cumulative_.back();
            auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
            if (it == cumulative_.end()) --it;
            return static_cast<std::uint32_t>(it - cumulative_.begin());
        }

      private:
        std::vector<double> cumulative_;
    };

    // One positive or negative update. Accumulates the document gradient into `doc_grad`;
    // updates the output vector unless it is frozen.
    void sgd_pair(const Embedding& doc, Embedding& out, double label, double alpha, Embedding& doc_grad,
                  bool update_output) {
        const double g = (label - sigmoid(dot(doc, out))) * alpha;
        for (std::size_t i = 0; i < kEmbeddingDim; ++i) doc_grad[i] += g * out[i];
        if (update_output) {
            for (std::size_t i = 0; i < kEmbeddingDim; ++i) out[i] += g * doc[i];
        }
    }

    double decayed_rate(double lr0, std::uint64_t done, std::uint64_t total) {
        const double progress = total == 0 ? 0.0 : static_cast<double>(done) / static_cast<double>(total);
        return std::max(lr0 * (1.0 - progress), lr0 * kMinLearningRateFraction);
    }

}  // namespace

void EmbeddingModel::rebuild_indexes() {
    vocab_index.clear();
    for (std::uint32_t i = 0; i < vocab.size(); ++i) vocab_index.emplace(vocab[i], i);
    doc_by_hash.clear();
    for (std::uint32_t i = 0; i < doc_hashes.size(); ++i) doc_by_hash.emplace(doc_hashes[i], i);
}

EmbeddingModel train_graph2vec(const std::vector<WLDocument>& corpus, const Graph2VecParams& params,
                               std::uint64_t seed) {
    if (corpus.empty()) {
        throw Error{ErrorCode::kEmptyCorpus, "cannot train an embedding on an empty corpus"};
    }
    EmbeddingModel model;
    model.params = params;
    model.seed = seed;

    // Distinct documents in first-appearance order; each is trained once per epoch.
    std::vector<std::uint32_t> row_of_doc(corpus.size());
    std::vector<const WLDocument*> distinct;
    std::unordered_map<std::uint64_t, std::uint32_t> distinct_index;
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        const auto h = corpus[d].content_hash();
        auto [it, inserted] = distinct_index.try_emplace(h, static_cast<std::uint32_t>(distinct.size()));
        if (inserted) distinct.push_back(&corpus[d]);
        row_of_doc[d] = it->second;
        model.doc_hashes.push_back(h);
    }

    for (const auto* doc : distinct) {
        for (const auto& t : doc->tokens) {
            auto [it, inserted] = model.vocab_index.try_emplace(t, static_cast<std::uint32_t>(model.vocab.size()));
            if (inserted) {
                model.vocab.push_back(t);
                model.token_counts.push_back(0);
            }
            ++model.token_counts[it->second];
        }
    }
    if (model.vocab.empty()) {
        throw Error{ErrorCode::kEmptyCorpus, "corpus has no tokens"};
    }

    model.token_vectors.resize(model.vocab.size());
    for (std::size_t t = 0; t < model.vocab.size(); ++t) {
        model.token_vectors[t] = random_vector(mix_seed(seed, stable_hash(model.vocab[t])));
    }
    std::vector<Embedding> doc_vectors;
    doc_vectors.reserve(distinct.size());
    for (const auto* doc : distinct) doc_vectors.push_back(initial_doc_vector(seed, doc->content_hash()));

    std::vector<std::vector<std::uint32_t>> doc_token_ids(distinct.size());
    std::uint64_t tokens_per_epoch = 0;
    for (std::size_t d = 0; d < distinct.size(); ++d) {
        for (const auto& t : distinct[d]->tokens) doc_token_ids[d].push_back(model.vocab_index.at(t));
        tokens_per_epoch += doc_token_ids[d].size();
    }

    const NegativeSampler sampler{model.token_counts};
    Rng rng{mix_seed(seed, stable_hash("graph2vec-train"))};
    const std::uint64_t total = tokens_per_epoch * params.epochs;
    std::uint64_t done = 0;
    for (std::uint32_t epoch = 0; epoch < params.epochs; ++epoch) {
        for (std::size_t d = 0; d < distinct.size(); ++d) {
            auto& doc = doc_vectors[d];
            for (auto token : doc_token_ids[d]) {
                const double alpha = decayed_rate(params.learning_rate, done++, total);
                Embedding grad{};
                sgd_pair(doc, model.token_vectors[token], 1.0, alpha, grad, true);
                for (std::uint32_t k = 0; k < params.negative_samples; ++k) {
                    const auto neg = sampler.sample(rng);
                    if (neg == token) continue;
                    sgd_pair(doc, model.token_vectors[neg], 0.0, alpha, grad, true);
                }
                for (std::size_t i = 0; i < kEmbeddingDim; ++i) doc[i] += grad[i];
            }
        }
    }

    model.graph_vectors.reserve(corpus.size());
    for (auto row : row_of_doc) model.graph_vectors.push_back(doc_vectors[row]);
    model.rebuild_indexes();
    return model;
}

Embedding infer_embedding(const EmbeddingModel& model, const WLDocument& doc) {
    const auto h = doc.content_hash();
    if (auto it = model.doc_by_hash.find(h); it != model.doc_by_hash.end()) {
        return model.graph_vectors[it->second];
    }

    Embedding vec = initial_doc_vector(model.seed, h);
    if (model.vocab.empty() || doc.tokens.empty()) return vec;

    std::vector<std::optional<std::uint32_t>> ids;
    ids.reserve(doc.tokens.size());
    for (const auto& t : doc.tokens) {
        auto it = model.vocab_index.find(t);
        ids.push_back(it == model.vocab_index.end() ? std::nullopt : std::optional{it->second});
    }

    const NegativeSampler sampler{model.token_counts};
    Rng rng{mix_seed(model.seed, h ^ stable_hash("graph2vec-infer"))};
    const std::uint64_t total = static_cast<std::uint64_t>(ids.size()) * model.params.epochs;
    std::uint64_t done = 0;
    for (std::uint32_t epoch = 0; epoch < model.params.epochs; ++epoch) {
        for (const auto& id : ids) {
            const double alpha = decayed_rate(model.params.learning_rate, done++, total);
            Embedding grad{};
            if (id) {
                auto out = model.token_vectors[*id];
                sgd_pair(vec, out, 1.0, alpha, grad, false);
            }
            for (std::uint32_t k = 0; k < model.params.negative_samples; ++k) {
                const auto neg = sampler.sample(rng);
                if (id && neg == *id) continue;
                auto out = model.token_vectors[neg];
                sgd_pair(vec, out, 0.0, alpha, grad, false);
            }
            for (std::size_t i = 0; i < kEmbeddingDim; ++i) vec[i] += grad[i];
        }
    }
    return vec;
}

double cosine_similarity(const Embedding& a, const Embedding& b) {
    const double na = std::sqrt(dot(a, a));
    const double nb = std::sqrt(dot(b, b));
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot(a, b) / (na * nb);
}

json to_json(const EmbeddingModel& model) {
    json j;
    j["format"] = "bridgeguard-embedding";
    j["version"] = EmbeddingModel::kFormatVersion;
    j["dim"] = kEmbeddingDim;
    j["seed"] = model.seed;
    j["params"] = {{"epochs", model.params.epochs},
                   {"learning_rate", model.params.learning_rate},
                   {"negative_samples", model.params.negative_samples},
                   {"wl_iterations", model.params.wl_iterations}};
    j["vocab"] = model.vocab;
    j["token_counts"] = model.token_counts;
    j["token_vectors"] = model.token_vectors;
    std::vector<std::string> hashes;
    hashes.reserve(model.doc_hashes.size());
    for (auto h : model.doc_hashes) hashes.push_back(hash_hex(h));
    j["doc_hashes"] = std::move(hashes);
    j["graph_vectors"] = model.graph_vectors;
    return j;
}

EmbeddingModel embedding_from_json(const json& j) {
    if (j.value("format", std::string{}) != "bridgeguard-embedding") {
        throw Error{ErrorCode::kVersionMismatch, "not an embedding model"};
    }
    if (j.value("version", -1) != EmbeddingModel::kFormatVersion) {
        throw Error{ErrorCode::kVersionMismatch, "embedding model version " + j.value("version", json{}).dump() +
                                                     ", expected " + std::to_string(EmbeddingModel::kFormatVersion)};
    }
    if (j.value("dim", std::size_t{0}) != kEmbeddingDim) {
        throw Error{ErrorCode::kDimensionMismatch, "embedding dimension must be 16"};
    }
    EmbeddingModel m;
    try {
        m.seed = j.at("seed").get<std::uint64_t>();
        const auto& p = j.at("params");
        m.params.epochs = p.at("epochs").get<std::uint32_t>();
        m.params.learning_rate = p.at("learning_rate").get<double>();
        m.params.negative_samples = p.at("negative_samples").get<std::uint32_t>();
        m.params.wl_iterations = p.at("wl_iterations").get<std::uint32_t>();
        m.vocab = j.at("vocab").get<std::vector<std::string>>();
        m.token_counts = j.at("token_counts").get<std::vector<std::uint64_t>>();
        m.token_vectors = j.at("token_vectors").get<std::vector<Embedding>>();
        for (const auto& h : j.at("doc_hashes")) {
            m.doc_hashes.push_back(std::stoull(h.get<std::string>(), nullptr, 16));
        }
        m.graph_vectors = j.at("graph_vectors").get<std::vector<Embedding>>();
    } catch (const json::exception& e) {
        throw Error{ErrorCode::kVersionMismatch, std::string{"malformed embedding model: "} + e.what()};
    }
    if (m.vocab.size() != m.token_counts.size() || m.vocab.size() != m.token_vectors.size() ||
        m.doc_hashes.size() != m.graph_vectors.size()) {
        throw Error{ErrorCode::kDimensionMismatch, "embedding model tables have inconsistent sizes"};
    }
    m.rebuild_indexes();
    return m;
}

}  // namespace bridgeguard::features
