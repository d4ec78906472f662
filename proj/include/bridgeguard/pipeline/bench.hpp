// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include <bridgeguard/pipeline/featurizer.hpp>

namespace bridgeguard::pipeline {

inline constexpr std::size_t kBenchMinCorpus = 100;
inline constexpr std::size_t kNumStages = 4;
inline constexpr std::array<std::string_view, kNumStages> kStageNames{"xteg_construction", "global_mining",
                                                                      "local_mining", "classification"};

//! Reference per-stage milliseconds, printed for comparison only.
inline constexpr std::array<double, kNumStages> kReferenceStageMs{0.253, 0.332, 14.6, 0.027};
inline constexpr double kReferenceTotalMs = 15.212;

struct BenchReport {
    std::size_t n_transactions{0};
    std::size_t max_vertices{0};
    std::array<double, kNumStages> stage_mean_ms{};
    double total_mean_ms{0.0};
    double median_total_ms{0.0};
    double tps{0.0};

    [[nodiscard]] std::size_t max_stage() const;
    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] std::string table() const;
};

//! Times every stage per transaction on one thread. Throws Error{kCorpusTooSmall} below 100 records.
BenchReport run_bench(std::span<const ingest::TxRecord> records, const Detector& detector);

}  // namespace bridgeguard::pipeline
