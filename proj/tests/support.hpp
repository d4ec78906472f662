// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include <bridgeguard/common/random.hpp>
#include <bridgeguard/common/stable_hash.hpp>
#include <bridgeguard/ingest/trace.hpp>
#include <bridgeguard/xteg/digraph.hpp>
#include <bridgeguard/xteg/xteg.hpp>

namespace bridgeguard::testing {

//! Directory removed on scope exit.
class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("bg-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
};

//! "0x" followed by 40 hex digits encoding `n`.
inline std::string addr(std::uint64_t n) {
    std::string h = hash_hex(n);
    return "0x" + std::string(24, '0') + h;
}

inline nlohmann::json frame(const std::string& type, const std::string& from, const std::string& to,
                            const std::string& input = "0x", nlohmann::json calls = nlohmann::json::array()) {
    nlohmann::json f{{"type", type}, {"from", from}, {"to", to}, {"input", input}, {"value", "0x0"}};
    if (!calls.empty()) f["calls"] = std::move(calls);
    return f;
}

inline nlohmann::json receipt_log(const std::string& address, const std::vector<std::string>& topics,
                                  std::uint64_t index) {
    return {{"address", address}, {"topics", topics}, {"data", "0x"}, {"logIndex", index}};
}

inline std::vector<xteg::Arc> random_arcs(std::uint32_t n, double p, Rng& rng) {
    std::vector<xteg::Arc> arcs;
    for (std::uint32_t u = 0; u < n; ++u) {
        for (std::uint32_t v = 0; v < n; ++v) {
            if (u != v && bernoulli(rng, p)) arcs.emplace_back(u, v);
        }
    }
    return arcs;
}

//! Random call tree over a small address pool plus random logs, as a document.
inline nlohmann::json random_trace_document(Rng& rng, std::size_t max_frames = 20) {
    const std::size_t pool = 2 + uniform_below(rng, 8);
    const std::size_t n_frames = 1 + uniform_below(rng, max_frames);
    static const char* kTypes[] = {"CALL", "STATICCALL", "DELEGATECALL", "CALLCODE", "CREATE", "CREATE2"};
    static const char* kInputs[] = {"0x", "0xa9059cbb", "0x23b872dd00", "0x095ea7b3"};
    const std::string sender = addr(1000);

    std::vector<nlohmann::json> frames(n_frames);
    std::vector<std::size_t> parent(n_frames, 0);
    std::vector<std::string> callee(n_frames);
    for (std::size_t i = 0; i < n_frames; ++i) {
        const std::string type = i == 0 ? "CALL" : kTypes[uniform_below(rng, 6)];
        callee[i] = addr(uniform_below(rng, pool));
        if (i > 0) parent[i] = uniform_below(rng, i);
        const std::string from = i == 0 ? sender : callee[parent[i]];
        frames[i] = frame(type, from, callee[i], kInputs[uniform_below(rng, 4)]);
    }
    // Attach children bottom-up so nested arrays are complete before insertion.
    std::vector<std::vector<std::size_t>> kids(n_frames);
    for (std::size_t i = 1; i < n_frames; ++i) kids[parent[i]].push_back(i);
    for (std::size_t i = n_frames; i-- > 0;) {
        if (kids[i].empty()) continue;
        nlohmann::json calls = nlohmann::json::array();
        for (auto k : kids[i]) calls.push_back(frames[k]);
        frames[i]["calls"] = calls;
    }
    nlohmann::json logs = nlohmann::json::array();
    const std::size_t n_logs = uniform_below(rng, 5);
    for (std::size_t l = 0; l < n_logs; ++l) {
        const auto emitter = callee[uniform_below(rng, n_frames)];
        std::vector<std::string> topics;
        if (!bernoulli(rng, 0.2)) topics.push_back("0x" + std::string(48, '0') + hash_hex(uniform_below(rng, 3)));
        logs.push_back(receipt_log(emitter, topics, l));
    }
    return {{"trace", frames[0]}, {"logs", logs}};
}

//! Random xTEG built from a random trace document.
inline xteg::Xteg random_xteg(Rng& rng, std::size_t max_frames = 20) {
    return xteg::build_xteg(ingest::parse_document(random_trace_document(rng, max_frames)));
}

//! Same graph with vertex ids permuted by `perm` (old id -> new id).
inline xteg::Xteg permute_vertices(const xteg::Xteg& g, const std::vector<std::uint32_t>& perm) {
    xteg::Xteg out;
    out.tx_hash = g.tx_hash;
    out.vertices.resize(g.vertices.size());
    for (const auto& v : g.vertices) {
        auto nv = v;
        nv.id = perm[v.id];
        out.vertices[nv.id] = nv;
    }
    for (auto e : g.edges) {
        e.src = perm[e.src];
        e.dst = perm[e.dst];
        out.edges.push_back(e);
    }
    return out;
}

}  // namespace bridgeguard::testing
