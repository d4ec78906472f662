// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include <json.hpp>

#include <bridgeguard/classify/features.hpp>

namespace bridgeguard::classify {

//! Per-dimension z-score. Dimensions with zero spread keep scale 1.
class Standardizer {
  public:
    void fit(std::span<const FeatureVector> rows);
    [[nodiscard]] FeatureVector transform(const FeatureVector& x) const;

    [[nodiscard]] const std::array<double, kFeatureDim>& mean() const noexcept { return mean_; }
    [[nodiscard]] const std::array<double, kFeatureDim>& scale() const noexcept { return scale_; }

    [[nodiscard]] nlohmann::json to_json() const;
    static Standardizer from_json(const nlohmann::json& j);

    friend bool operator==(const Standardizer&, const Standardizer&) = default;

  private:
    std::array<double, kFeatureDim> mean_{};
    std::array<double, kFeatureDim> scale_{};
};

}  // namespace bridgeguard::classify
