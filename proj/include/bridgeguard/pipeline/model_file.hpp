// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include <json.hpp>

#include <bridgeguard/pipeline/featurizer.hpp>

namespace bridgeguard::pipeline {

inline constexpr int kModelFormatVersion = 1;

//! {"format", "version", "config_hash", "config", "feature_layout", "embedding", "classifier"}
nlohmann::json detector_to_json(const Detector& d);

//! Throws Error{kVersionMismatch} or Error{kLayoutMismatch}.
Detector detector_from_json(const nlohmann::json& j);

void save_detector(const std::filesystem::path& path, const Detector& d);

//! Throws Error{kModelMissing} when the file does not exist.
Detector load_detector(const std::filesystem::path& path);

}  // namespace bridgeguard::pipeline
