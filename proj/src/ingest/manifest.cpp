// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/ingest/manifest.hpp>

#include <fstream>
#include <set>

#include <json.hpp>

#include <bridgeguard/common/error.hpp>
#include <bridgeguard/common/hex.hpp>

namespace bridgeguard::ingest {

using nlohmann::json;

bool ManifestEntry::is_tx_hash() const {
    return source.size() == 66 && Hash32::from_hex(source).has_value();
}

std::filesystem::path DatasetManifest::resolve(const ManifestEntry& e) const {
    std::filesystem::path p{e.source};
    if (p.is_relative() && !base_dir.empty()) {
        return base_dir / p;
    }
    return p;
}

DatasetManifest parse_manifest(std::istream& in, std::filesystem::path base_dir) {
    DatasetManifest m;
    m.base_dir = std::move(base_dir);
    std::set<std::pair<std::uint64_t, std::string>> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto where = [&] { return "manifest line " + std::to_string(line_no) + ": "; };
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw Error{ErrorCode::kInvalidManifest, where() + e.what()};
        }
        if (!j.is_object() || !j.contains("source") || !j["source"].is_string() || !j.contains("label") ||
            !j["label"].is_string()) {
            throw Error{ErrorCode::kInvalidManifest, where() + "expected {\"source\", \"label\", \"chain_id\"}"};
        }
        ManifestEntry e;
        e.source = j["source"].get<std::string>();
        auto label = parse_label(j["label"].get<std::string>());
        if (!label) {
            throw Error{ErrorCode::kInvalidManifest, where() + "unknown label " + j["label"].get<std::string>()};
        }
        e.label = *label;
        if (auto it = j.find("chain_id"); it != j.end()) {
            if (!it->is_number_unsigned()) throw Error{ErrorCode::kInvalidManifest, where() + "bad chain_id"};
            e.chain_id = it->get<std::uint64_t>();
        }
        auto identity = e.is_tx_hash() ? e.source : m.resolve(e).lexically_normal().string();
        if (!seen.emplace(e.chain_id, identity).second) {
            throw Error{ErrorCode::kInvalidManifest, where() + "duplicate entry " + e.source};
        }
        m.entries.push_back(std::move(e));
    }
    return m;
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in{path};
    if (!in) throw Error{ErrorCode::kIo, "cannot open manifest " + path.string()};
    return parse_manifest(in, path.parent_path());
}

void write_manifest(std::ostream& out, const DatasetManifest& manifest) {
    for (const auto& e : manifest.entries) {
        json j;
        j["source"] = e.source;
        j["label"] = std::string{to_string(e.label)};
        j["chain_id"] = e.chain_id;
        out << j.dump() << '\n';
    }
}

void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
    std::ofstream out{path};
    if (!out) throw Error{ErrorCode::kIo, "cannot write manifest " + path.string()};
    write_manifest(out, manifest);
}

}  // namespace bridgeguard::ingest
