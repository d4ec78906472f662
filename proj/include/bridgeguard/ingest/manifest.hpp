// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <bridgeguard/common/label.hpp>

namespace bridgeguard::ingest {

struct ManifestEntry {
    // Trace file path (relative paths resolve against the manifest's directory) or a 0x tx hash.
    std::string source;
    Label label{Label::kNormal};
    std::uint64_t chain_id{1};

    [[nodiscard]] bool is_tx_hash() const;

    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct DatasetManifest {
    std::vector<ManifestEntry> entries;
    // Directory that relative file sources are resolved against.
    std::filesystem::path base_dir;

    [[nodiscard]] std::filesystem::path resolve(const ManifestEntry& e) const;
};

//! JSON-lines reader. Rejects unknown labels and duplicate (chain_id, source) identities.
DatasetManifest read_manifest(const std::filesystem::path& path);
DatasetManifest parse_manifest(std::istream& in, std::filesystem::path base_dir = {});

void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);
void write_manifest(std::ostream& out, const DatasetManifest& manifest);

}  // namespace bridgeguard::ingest
