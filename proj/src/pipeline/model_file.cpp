// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/pipeline/model_file.hpp>

#include <fstream>

#include <bridgeguard/classify/features.hpp>
#include <bridgeguard/common/error.hpp>

namespace bridgeguard::pipeline {

namespace {
    constexpr const char* kFormat = "bridgeguard-model";
}

nlohmann::json detector_to_json(const Detector& d) {
    if (!d.classifier) throw Error{ErrorCode::kModelMissing, "detector has no trained classifier"};
    return {{"format", kFormat},
            {"version", kModelFormatVersion},
            {"config_hash", d.config.hash()},
            {"config", d.config.to_json()},
            {"feature_layout", classify::feature_layout()},
            {"embedding", features::to_json(d.embedding)},
            {"classifier", d.classifier->to_json()}};
}

Detector detector_from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("format", "") != kFormat) {
        throw Error{ErrorCode::kVersionMismatch, "not a bridgeguard model file"};
    }
    if (j.value("version", -1) != kModelFormatVersion) {
        throw Error{ErrorCode::kVersionMismatch,
                    "model format version " + j.at("version").dump() + " is not supported"};
    }
    const auto& layout = classify::feature_layout();
    const auto& stored = j.at("feature_layout");
    if (!stored.is_array() || stored.size() != layout.size()) {
        throw Error{ErrorCode::kLayoutMismatch, "model feature layout has a different dimension"};
    }
    for (std::size_t i = 0; i < layout.size(); ++i) {
        if (stored[i] != layout[i]) throw Error{ErrorCode::kLayoutMismatch, "model feature layout differs at " + layout[i]};
    }
    Detector d;
    d.config = RunConfig::from_json(j.at("config"));
    d.embedding = features::embedding_from_json(j.at("embedding"));
    d.classifier = classify::classifier_from_json(j.at("classifier"));
    return d;
}

void save_detector(const std::filesystem::path& path, const Detector& d) {
    const auto j = detector_to_json(d);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out{path};
    if (!out) throw Error{ErrorCode::kIo, "cannot write model file " + path.string()};
    out << j.dump() << '\n';
}

Detector load_detector(const std::filesystem::path& path) {
    std::ifstream in{path};
    if (!in) throw Error{ErrorCode::kModelMissing, "model file " + path.string() + " not found"};
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error{ErrorCode::kVersionMismatch, path.string() + ": " + e.what()};
    }
    return detector_from_json(j);
}

}  // namespace bridgeguard::pipeline
