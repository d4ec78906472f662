// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include <bridgeguard/classify/features.hpp>

namespace bridgeguard::classify {

struct Prediction {
    Label label{Label::kNormal};
    // Neighbour vote shares (KNN) or leaf class distribution (tree), indexed by Label.
    std::array<double, kNumLabels> distribution{};
};

//! Common surface of the supervised models. Training is deterministic; prediction is const
//! and safe to call concurrently.
class Classifier {
  public:
    virtual ~Classifier() = default;

    virtual void fit(std::span<const FeatureVector> rows, std::span<const Label> labels) = 0;
    [[nodiscard]] virtual Prediction predict(const FeatureVector& x) const = 0;
    [[nodiscard]] virtual std::string_view kind() const noexcept = 0;
    [[nodiscard]] virtual nlohmann::json to_json() const = 0;
};

struct ClassifierConfig {
    std::string kind{"knn"};  // "knn" or "dtree"
    std::size_t k{5};
    std::size_t max_depth{12};
    std::size_t min_samples_leaf{1};
    // Inverse class-frequency sample weights for the tree.
    bool class_weighting{false};
    std::uint64_t seed{0};

    [[nodiscard]] nlohmann::json to_json() const;
    static ClassifierConfig from_json(const nlohmann::json& j);

    friend bool operator==(const ClassifierConfig&, const ClassifierConfig&) = default;
};

//! Throws Error{kInvalidConfig} for unknown kinds.
std::unique_ptr<Classifier> make_classifier(const ClassifierConfig& config);

//! Restores a trained classifier from Classifier::to_json output.
std::unique_ptr<Classifier> classifier_from_json(const nlohmann::json& j);

}  // namespace bridgeguard::classify
