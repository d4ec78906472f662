// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bridgeguard/classify/classifier.hpp>
#include <bridgeguard/classify/standardizer.hpp>

namespace bridgeguard::classify {

//! k-nearest neighbours under Euclidean distance on z-scored features. The standardizer is
//! fitted on the training rows only. Majority vote; ties go to the class with the smallest
//! summed neighbour distance, then to the lower Label.
class KnnModel final : public Classifier {
  public:
    explicit KnnModel(std::size_t k = 5, std::uint64_t seed = 0) : k_{k}, seed_{seed} {}

    //! Throws Error{kEmptyTrainingSet}, Error{kKTooLarge}, Error{kInvalidArgument} for k == 0.
    void fit(std::span<const FeatureVector> rows, std::span<const Label> labels) override;
    [[nodiscard]] Prediction predict(const FeatureVector& x) const override;
    [[nodiscard]] std::string_view kind() const noexcept override { return "knn"; }
    [[nodiscard]] nlohmann::json to_json() const override;
    static KnnModel from_json(const nlohmann::json& j);

    [[nodiscard]] std::size_t k() const noexcept { return k_; }
    [[nodiscard]] const Standardizer& standardizer() const noexcept { return standardizer_; }

  private:
    std::size_t k_;
    std::uint64_t seed_;
    Standardizer standardizer_;
    std::vector<FeatureVector> train_;  // standardized
    std::vector<Label> labels_;
};

KnnModel knn_train(std::span<const FeatureVector> rows, std::span<const Label> labels, std::size_t k = 5,
                   std::uint64_t seed = 0);
Label knn_predict(const KnnModel& model, const FeatureVector& x);

}  // namespace bridgeguard::classify
