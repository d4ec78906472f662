// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bridgeguard/classify/classifier.hpp>

namespace bridgeguard::classify {

struct TreeParams {
    std::size_t max_depth{12};
    std::size_t min_samples_leaf{1};
    bool class_weighting{false};
    std::uint64_t seed{0};
};

//! CART classifier with Gini impurity. Candidate thresholds are midpoints between consecutive
//! distinct values; x <= threshold goes left. Ties between equally good splits go to the lowest
//! dimension, then the lowest threshold. A node is split only if impurity strictly drops.
class DecisionTreeModel final : public Classifier {
  public:
    struct Node {
        // Leaves have feature == kLeaf.
        static constexpr std::uint32_t kLeaf = 0xffffffffu;
        std::uint32_t feature{kLeaf};
        double threshold{0.0};
        std::uint32_t left{0};
        std::uint32_t right{0};
        std::array<double, kNumLabels> distribution{};
        double impurity{0.0};
        double weight{0.0};

        [[nodiscard]] bool is_leaf() const noexcept { return feature == kLeaf; }
    };

    explicit DecisionTreeModel(TreeParams params = {}) : params_{params} {}

    //! Throws Error{kEmptyTrainingSet}.
    void fit(std::span<const FeatureVector> rows, std::span<const Label> labels) override;
    [[nodiscard]] Prediction predict(const FeatureVector& x) const override;
    [[nodiscard]] std::string_view kind() const noexcept override { return "dtree"; }
    [[nodiscard]] nlohmann::json to_json() const override;
    static DecisionTreeModel from_json(const nlohmann::json& j);

    [[nodiscard]] const std::vector<Node>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] std::size_t depth() const;

  private:
    std::uint32_t grow(std::vector<std::size_t>& idx, std::size_t depth, std::span<const FeatureVector> rows,
                       std::span<const Label> labels, const std::array<double, kNumLabels>& class_weight);

    TreeParams params_;
    std::vector<Node> nodes_;
};

DecisionTreeModel dtree_train(std::span<const FeatureVector> rows, std::span<const Label> labels,
                              const TreeParams& params = {});
Label dtree_predict(const DecisionTreeModel& model, const FeatureVector& x);

}  // namespace bridgeguard::classify
