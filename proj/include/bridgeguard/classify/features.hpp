// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <string>

#include <bridgeguard/common/hex.hpp>
#include <bridgeguard/common/label.hpp>
#include <bridgeguard/features/global.hpp>
#include <bridgeguard/motif/census.hpp>

namespace bridgeguard::classify {

inline constexpr std::size_t kFeatureDim = features::kGlobalFeatureDim + motif::kNumMotifs;
static_assert(kFeatureDim == 37);

//! [global(21), local(16)]
struct FeatureVector {
    std::array<double, kFeatureDim> values{};

    [[nodiscard]] static constexpr std::size_t size() noexcept { return kFeatureDim; }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

//! Names of the 37 dimensions, global block first.
const std::array<std::string, kFeatureDim>& feature_layout();

FeatureVector concat_features(const features::GlobalFeature& global, const motif::LocalFeature& local);

//! Throws Error{kDimensionMismatch} unless the spans have 21 and 16 entries.
FeatureVector concat_features(std::span<const double> global, std::span<const double> local);

struct LabeledSample {
    Hash32 tx_hash;
    FeatureVector features;
    Label label{Label::kNormal};
};

}  // namespace bridgeguard::classify
