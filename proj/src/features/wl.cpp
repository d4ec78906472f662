// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/features/wl.hpp>

#include <algorithm>

#include <bridgeguard/common/error.hpp>
#include <bridgeguard/common/stable_hash.hpp>

namespace bridgeguard::features {

std::uint64_t WLDocument::content_hash() const {
    std::uint64_t h = stable_hash("wl-document");
    for (const auto& t : tokens) {
        h = stable_hash(t, h);
        h = stable_hash(";", h);
    }
    return h;
}

std::vector<std::string> initial_labels(const xteg::Xteg& g) {
    const auto n = g.num_vertices();
    std::vector<std::vector<std::string>> incident(n);
    for (const auto& e : g.edges) {
        const auto kind = std::string{xteg::to_string(e.kind)};
        incident[e.src].push_back("o" + kind);
        incident[e.dst].push_back("i" + kind);
    }
    std::vector<std::string> labels(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        auto& parts = incident[v];
        std::sort(parts.begin(), parts.end());
        std::string label{xteg::to_string(g.vertices[v].kind())};
        for (const auto& p : parts) {
            label += '|';
            label += p;
        }
        labels[v] = std::move(label);
    }
    return labels;
}

WLDocument wl_document(const xteg::Xteg& g, std::uint32_t iterations) {
    if (iterations < 1) {
        throw Error{ErrorCode::kInvalidArgument, "WL iterations must be at least 1"};
    }
    const auto n = g.num_vertices();
    WLDocument doc;
    doc.tokens.reserve(static_cast<std::size_t>(n) * (iterations + 1));

    std::vector<std::string> labels = initial_labels(g);
    for (auto& l : labels) {
        l = hash_hex(stable_hash(l));
        doc.tokens.push_back("0:" + l);
    }

    for (std::uint32_t it = 1; it <= iterations; ++it) {
        std::vector<std::vector<std::string>> neigh(n);
        for (const auto& e : g.edges) {
            const auto kind = std::string{xteg::to_string(e.kind)};
            neigh[e.src].push_back(">" + kind + ":" + labels[e.dst]);
            neigh[e.dst].push_back("<" + kind + ":" + labels[e.src]);
        }
        std::vector<std::string> next(n);
        for (std::uint32_t v = 0; v < n; ++v) {
            auto& parts = neigh[v];
            std::sort(parts.begin(), parts.end());
            std::string canonical = labels[v];
            for (const auto& p : parts) {
                canonical += '|';
                canonical += p;
            }
            next[v] = hash_hex(stable_hash(canonical));
            doc.tokens.push_back(std::to_string(it) + ":" + next[v]);
        }
        labels = std::move(next);
    }
    std::sort(doc.tokens.begin(), doc.tokens.end());
    return doc;
}

}  // namespace bridgeguard::features
