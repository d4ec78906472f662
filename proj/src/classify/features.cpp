// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/classify/features.hpp>

#include <algorithm>

#include <bridgeguard/common/error.hpp>

namespace bridgeguard::classify {

const std::array<std::string, kFeatureDim>& feature_layout() {
    static const auto layout = [] {
        std::array<std::string, kFeatureDim> names;
        const auto& global = features::global_layout();
        std::copy(global.begin(), global.end(), names.begin());
        const auto& catalog = motif::motif_catalog();
        for (std::size_t i = 0; i < motif::kNumMotifs; ++i) {
            names[features::kGlobalFeatureDim + i] = "motif_" + std::string{catalog[i].id};
        }
        return names;
    }();
    return layout;
}

FeatureVector concat_features(const features::GlobalFeature& global, const motif::LocalFeature& local) {
    FeatureVector f;
    const auto g = global.values();
    std::copy(g.begin(), g.end(), f.values.begin());
    for (std::size_t i = 0; i < motif::kNumMotifs; ++i) {
        f.values[features::kGlobalFeatureDim + i] = static_cast<double>(local.counts[i]);
    }
    return f;
}

FeatureVector concat_features(std::span<const double> global, std::span<const double> local) {
    if (global.size() != features::kGlobalFeatureDim || local.size() != motif::kNumMotifs) {
        throw Error{ErrorCode::kDimensionMismatch, "expected 21 global and 16 local values, got " +
                                                       std::to_string(global.size()) + " and " +
                                                       std::to_string(local.size())};
    }
    FeatureVector f;
    std::copy(global.begin(), global.end(), f.values.begin());
    std::copy(local.begin(), local.end(), f.values.begin() + features::kGlobalFeatureDim);
    return f;
}

}  // namespace bridgeguard::classify
