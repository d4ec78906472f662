// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <bridgeguard/xteg/xteg.hpp>

namespace bridgeguard::features {

inline constexpr std::uint32_t kDefaultWlIterations = 2;

//! A graph viewed as a document of rooted-subgraph labels. Tokens are kept sorted, so two
//! documents are multiset-equal iff their token vectors are equal.
struct WLDocument {
    std::vector<std::string> tokens;

    //! Stable 64-bit hash of the token multiset.
    [[nodiscard]] std::uint64_t content_hash() const;

    friend bool operator==(const WLDocument&, const WLDocument&) = default;
};

//! Initial label of a vertex: kind tag plus the sorted multiset of incident edge kinds
//! (direction-tagged). Addresses, selectors and topics never enter a label.
std::vector<std::string> initial_labels(const xteg::Xteg& g);

//! Weisfeiler-Lehman relabelling. Iteration k relabels each vertex with the hash of its
//! previous label and the sorted in/out neighbour labels paired with edge kinds.
//! Produces |V| * (iterations + 1) tokens of the form "<iteration>:<16 hex digits>".
WLDocument wl_document(const xteg::Xteg& g, std::uint32_t iterations = kDefaultWlIterations);

}  // namespace bridgeguard::features
