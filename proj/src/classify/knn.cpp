// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/classify/knn.hpp>

#include <algorithm>
#include <cmath>

#include <bridgeguard/common/error.hpp>

namespace bridgeguard::classify {

void KnnModel::fit(std::span<const FeatureVector> rows, std::span<const Label> labels) {
    if (rows.empty()) throw Error{ErrorCode::kEmptyTrainingSet, "KNN needs at least one training row"};
    if (rows.size() != labels.size()) throw Error{ErrorCode::kLengthMismatch, "rows and labels differ in length"};
    if (k_ == 0) throw Error{ErrorCode::kInvalidArgument, "k must be positive"};
    if (k_ > rows.size()) {
        throw Error{ErrorCode::kKTooLarge,
                    "k = " + std::to_string(k_) + " exceeds training size " + std::to_string(rows.size())};
    }
    standardizer_.fit(rows);
    train_.clear();
    train_.reserve(rows.size());
    for (const auto& r : rows) train_.push_back(standardizer_.transform(r));
    labels_.assign(labels.begin(), labels.end());
}

Prediction KnnModel::predict(const FeatureVector& x) const {
    const auto z = standardizer_.transform(x);
    std::vector<std::pair<double, std::size_t>> dist(train_.size());
    for (std::size_t i = 0; i < train_.size(); ++i) {
        double s = 0.0;
        for (std::size_t d = 0; d < kFeatureDim; ++d) {
            const double diff = z[d] - train_[i][d];
            s += diff * diff;
        }
        dist[i] = {s, i};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k_), dist.end());

    std::array<std::size_t, kNumLabels> votes{};
    std::array<double, kNumLabels> summed{};
    for (std::size_t j = 0; j < k_; ++j) {
        const auto c = index_of(labels_[dist[j].second]);
        ++votes[c];
        summed[c] += std::sqrt(dist[j].first);
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < kNumLabels; ++c) {
        if (votes[c] > votes[best] || (votes[c] == votes[best] && summed[c] < summed[best])) best = c;
    }
    Prediction p;
    p.label = kAllLabels[best];
    for (std::size_t c = 0; c < kNumLabels; ++c) p.distribution[c] = static_cast<double>(votes[c]) / static_cast<double>(k_);
    return p;
}

nlohmann::json KnnModel::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : train_) rows.push_back(r.values);
    std::vector<std::string> labels;
    labels.reserve(labels_.size());
    for (auto l : labels_) labels.emplace_back(to_string(l));
    return {{"kind", "knn"},   {"k", k_},          {"seed", seed_}, {"standardizer", standardizer_.to_json()},
            {"rows", rows}, {"labels", labels}};
}

KnnModel KnnModel::from_json(const nlohmann::json& j) {
    KnnModel m{j.at("k").get<std::size_t>(), j.at("seed").get<std::uint64_t>()};
    m.standardizer_ = Standardizer::from_json(j.at("standardizer"));
    for (const auto& r : j.at("rows")) m.train_.push_back(FeatureVector{r.get<std::array<double, kFeatureDim>>()});
    for (const auto& l : j.at("labels")) {
        auto label = parse_label(l.get<std::string>());
        if (!label) throw Error{ErrorCode::kVersionMismatch, "unknown label in KNN model"};
        m.labels_.push_back(*label);
    }
    if (m.train_.size() != m.labels_.size() || m.k_ == 0 || m.k_ > m.train_.size()) {
        throw Error{ErrorCode::kVersionMismatch, "inconsistent KNN model"};
    }
    return m;
}

KnnModel knn_train(std::span<const FeatureVector> rows, std::span<const Label> labels, std::size_t k,
                   std::uint64_t seed) {
    KnnModel m{k, seed};
    m.fit(rows, labels);
    return m;
}

Label knn_predict(const KnnModel& model, const FeatureVector& x) { return model.predict(x).label; }

}  // namespace bridgeguard::classify
