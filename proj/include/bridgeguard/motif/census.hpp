// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

#include <bridgeguard/motif/catalog.hpp>
#include <bridgeguard/xteg/xteg.hpp>

namespace bridgeguard::motif {

//! Triad census: counts[i] is the number of vertex triples whose induced subgraph is in class M(i+1).
struct LocalFeature {
    std::array<std::uint64_t, kNumMotifs> counts{};

    [[nodiscard]] std::uint64_t total() const noexcept;
    //! Sum over the 13 classes with a connected underlying graph.
    [[nodiscard]] std::uint64_t connected_total() const noexcept;

    friend bool operator==(const LocalFeature&, const LocalFeature&) = default;
};

constexpr std::uint64_t choose3(std::uint64_t n) noexcept { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

//! Census via products of the mutual (B = A and A^T) and asymmetric (U = A - B) parts of the
//! adjacency matrix, evaluated sparsely; the open and dyadic classes follow by inclusion-exclusion.
LocalFeature motif_census_matrix(const xteg::SimpleDigraph& g);

//! Validating entry point for raw arc lists: throws Error{kSelfLoopPresent} / Error{kMultiEdgePresent}.
LocalFeature motif_census_matrix(std::uint32_t n, const std::vector<xteg::Arc>& arcs);

inline constexpr std::uint32_t kBruteForceMaxVertices = 64;

//! Enumerates every triple; throws Error{kGraphTooLarge} above 64 vertices.
LocalFeature triad_census_bruteforce(const xteg::SimpleDigraph& g);

//! Simple-digraph reduction followed by the matrix census.
LocalFeature local_feature(const xteg::Xteg& g);

}  // namespace bridgeguard::motif
