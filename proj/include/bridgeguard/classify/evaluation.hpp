// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include <bridgeguard/classify/classifier.hpp>
#include <bridgeguard/classify/metrics.hpp>

namespace bridgeguard::classify {

struct MeanStd {
    double mean{0.0};
    double std{0.0};  // population standard deviation over runs
};

//! Aggregate of several Metrics. Entries follow Metrics::flatten order.
struct MetricsSummary {
    std::size_t runs{0};
    std::vector<std::pair<std::string, MeanStd>> entries;

    //! Throws std::out_of_range for unknown names.
    [[nodiscard]] const MeanStd& at(std::string_view name) const;
    [[nodiscard]] nlohmann::json to_json() const;

    //! Per-class rows (Normal, AttackSrc, AttackTgt) then macro and binary attack rows,
    //! each cell "mean ± std".
    [[nodiscard]] std::string table() const;
};

//! Throws Error{kInvalidArgument} on an empty input.
MetricsSummary summarize(std::span<const Metrics> runs);

struct RepeatedEvalResult {
    std::vector<Metrics> runs;
    MetricsSummary summary;
};

//! Runs independent split/train/evaluate cycles on precomputed feature vectors. Run i uses
//! seed base_seed + i for both the split and the classifier.
RepeatedEvalResult repeated_eval(std::span<const LabeledSample> samples, std::size_t runs,
                                 const ClassifierConfig& config, std::uint64_t base_seed, double ratio = 0.7,
                                 std::size_t workers = 1);

}  // namespace bridgeguard::classify
