// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/classify/standardizer.hpp>

#include <cmath>

#include <bridgeguard/common/error.hpp>

namespace bridgeguard::classify {

void Standardizer::fit(std::span<const FeatureVector> rows) {
    if (rows.empty()) throw Error{ErrorCode::kEmptyTrainingSet, "cannot fit a standardizer on no rows"};
    const auto n = static_cast<double>(rows.size());
    mean_.fill(0.0);
    for (const auto& r : rows) {
        for (std::size_t d = 0; d < kFeatureDim; ++d) mean_[d] += r[d];
    }
    for (auto& m : mean_) m /= n;
    std::array<double, kFeatureDim> var{};
    for (const auto& r : rows) {
        for (std::size_t d = 0; d < kFeatureDim; ++d) {
            const double dx = r[d] - mean_[d];
            var[d] += dx * dx;
        }
    }
    for (std::size_t d = 0; d < kFeatureDim; ++d) {
        const double sd = std::sqrt(var[d] / n);
        scale_[d] = sd > 1e-12 ? sd : 1.0;
    }
}

FeatureVector Standardizer::transform(const FeatureVector& x) const {
    FeatureVector z;
    for (std::size_t d = 0; d < kFeatureDim; ++d) z[d] = (x[d] - mean_[d]) / scale_[d];
    return z;
}

nlohmann::json Standardizer::to_json() const { return {{"mean", mean_}, {"scale", scale_}}; }

Standardizer Standardizer::from_json(const nlohmann::json& j) {
    Standardizer s;
    s.mean_ = j.at("mean").get<std::array<double, kFeatureDim>>();
    s.scale_ = j.at("scale").get<std::array<double, kFeatureDim>>();
    return s;
}

}  // namespace bridgeguard::classify
