// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/classify/classifier.hpp>

#include <bridgeguard/classify/decision_tree.hpp>
#include <bridgeguard/classify/knn.hpp>
#include <bridgeguard/common/error.hpp>

namespace bridgeguard::classify {

nlohmann::json ClassifierConfig::to_json() const {
    return {{"kind", kind},
            {"k", k},
            {"max_depth", max_depth},
            {"min_samples_leaf", min_samples_leaf},
            {"class_weighting", class_weighting},
            {"seed", seed}};
}

ClassifierConfig ClassifierConfig::from_json(const nlohmann::json& j) {
    ClassifierConfig c;
    try {
        c.kind = j.value("kind", c.kind);
        c.k = j.value("k", c.k);
        c.max_depth = j.value("max_depth", c.max_depth);
        c.min_samples_leaf = j.value("min_samples_leaf", c.min_samples_leaf);
        c.class_weighting = j.value("class_weighting", c.class_weighting);
        c.seed = j.value("seed", c.seed);
    } catch (const nlohmann::json::exception& e) {
        throw Error{ErrorCode::kInvalidConfig, std::string{"classifier config: "} + e.what()};
    }
    if (c.kind != "knn" && c.kind != "dtree") {
        throw Error{ErrorCode::kInvalidConfig, "unknown classifier kind '" + c.kind + "'"};
    }
    return c;
}

std::unique_ptr<Classifier> make_classifier(const ClassifierConfig& config) {
    if (config.kind == "knn") return std::make_unique<KnnModel>(config.k, config.seed);
    if (config.kind == "dtree") {
        return std::make_unique<DecisionTreeModel>(
            TreeParams{config.max_depth, config.min_samples_leaf, config.class_weighting, config.seed});
    }
    throw Error{ErrorCode::kInvalidConfig, "unknown classifier kind '" + config.kind + "'"};
}

std::unique_ptr<Classifier> classifier_from_json(const nlohmann::json& j) {
    try {
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "knn") return std::make_unique<KnnModel>(KnnModel::from_json(j));
        if (kind == "dtree") return std::make_unique<DecisionTreeModel>(DecisionTreeModel::from_json(j));
        throw Error{ErrorCode::kInvalidConfig, "unknown classifier kind '" + kind + "'"};
    } catch (const nlohmann::json::exception& e) {
        throw Error{ErrorCode::kVersionMismatch, std::string{"malformed classifier payload: "} + e.what()};
    }
}

}  // namespace bridgeguard::classify
