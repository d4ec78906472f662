// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <bridgeguard/classify/features.hpp>

namespace bridgeguard::classify {

inline constexpr double kDefaultTrainRatio = 0.7;

struct SplitIndices {
    std::vector<std::size_t> train;  // ascending
    std::vector<std::size_t> test;   // ascending
};

//! Seeded train/test partition. Stratified mode puts round(ratio * n_c) samples of every
//! class c into train. Throws Error{kInvalidArgument} when ratio is outside (0, 1) or the
//! test set would be empty, Error{kClassTooSmall} when a present class gets no training sample.
SplitIndices split_indices(std::span<const Label> labels, double ratio = kDefaultTrainRatio, bool stratified = true,
                           std::uint64_t seed = 0);

struct DatasetSplit {
    std::vector<LabeledSample> train;
    std::vector<LabeledSample> test;
};

DatasetSplit split_dataset(std::span<const LabeledSample> samples, double ratio = kDefaultTrainRatio,
                           bool stratified = true, std::uint64_t seed = 0);

}  // namespace bridgeguard::classify
