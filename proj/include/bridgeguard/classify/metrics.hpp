// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <bridgeguard/common/label.hpp>

namespace bridgeguard::classify {

//! confusion[true][predicted]
using Confusion = std::array<std::array<std::size_t, kNumLabels>, kNumLabels>;

struct ClassMetrics {
    double precision{0.0};
    double recall{0.0};
    double f1{0.0};
    std::size_t support{0};
};

//! P = TP/(TP+FP), R = TP/(TP+FN), both 0 when the denominator is 0. F1 is 0 when P+R = 0.
ClassMetrics class_metrics(std::size_t tp, std::size_t fp, std::size_t fn);

struct Metrics {
    Confusion confusion{};
    std::array<ClassMetrics, kNumLabels> per_class{};
    ClassMetrics macro;  // unweighted mean over the three classes; support = total
    double micro_precision{0.0};
    double micro_recall{0.0};
    double micro_f1{0.0};
    double accuracy{0.0};
    // AttackSrc and AttackTgt merged into one positive class.
    ClassMetrics attack_binary;

    static Metrics from_confusion(const Confusion& confusion);

    //! Scalar metrics under stable names, in a fixed order.
    [[nodiscard]] std::vector<std::pair<std::string, double>> flatten() const;
    [[nodiscard]] nlohmann::json to_json() const;
};

//! Throws Error{kLengthMismatch} for unequal lengths and Error{kInvalidArgument} when empty.
Metrics evaluate(std::span<const Label> predictions, std::span<const Label> labels);

}  // namespace bridgeguard::classify
