// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/classify/split.hpp>

#include <algorithm>
#include <cmath>

#include <bridgeguard/common/error.hpp>
#include <bridgeguard/common/random.hpp>

namespace bridgeguard::classify {

SplitIndices split_indices(std::span<const Label> labels, double ratio, bool stratified, std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0)) {
        throw Error{ErrorCode::kInvalidArgument, "train ratio must be in (0, 1); an empty test set is not allowed"};
    }
    if (labels.empty()) {
        throw Error{ErrorCode::kInvalidArgument, "cannot split an empty dataset"};
    }
    Rng rng{seed};
    SplitIndices out;

    auto take = [&](std::vector<std::size_t> pool) {
        shuffle(pool, rng);
        const auto n_train = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(pool.size()) + 0.5));
        out.train.insert(out.train.end(), pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_train));
        out.test.insert(out.test.end(), pool.begin() + static_cast<std::ptrdiff_t>(n_train), pool.end());
        return n_train;
    };

    if (stratified) {
        for (auto label : kAllLabels) {
            std::vector<std::size_t> pool;
            for (std::size_t i = 0; i < labels.size(); ++i) {
                if (labels[i] == label) pool.push_back(i);
            }
            if (pool.empty()) continue;
            if (take(std::move(pool)) == 0) {
                throw Error{ErrorCode::kClassTooSmall,
                            std::string{"class "} + std::string{to_string(label)} + " has too few samples to stratify"};
            }
        }
    } else {
        std::vector<std::size_t> pool(labels.size());
        for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
        take(std::move(pool));
    }
    if (out.test.empty()) {
        throw Error{ErrorCode::kInvalidArgument, "split leaves the test set empty"};
    }
    if (out.train.empty()) {
        throw Error{ErrorCode::kInvalidArgument, "split leaves the training set empty"};
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

DatasetSplit split_dataset(std::span<const LabeledSample> samples, double ratio, bool stratified, std::uint64_t seed) {
    std::vector<Label> labels;
    labels.reserve(samples.size());
    for (const auto& s : samples) labels.push_back(s.label);
    const auto idx = split_indices(labels, ratio, stratified, seed);
    DatasetSplit out;
    for (auto i : idx.train) out.train.push_back(samples[i]);
    for (auto i : idx.test) out.test.push_back(samples[i]);
    return out;
}

}  // namespace bridgeguard::classify
