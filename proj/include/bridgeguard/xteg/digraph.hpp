// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace bridgeguard::xteg {

using Arc = std::pair<std::uint32_t, std::uint32_t>;

//! Directed simple graph: no self-loops, no parallel arcs. Out-neighbour lists are sorted.
class SimpleDigraph {
  public:
    SimpleDigraph() = default;
    explicit SimpleDigraph(std::uint32_t n) : out_(n) {}

    //! Throws Error{kSelfLoopPresent} or Error{kMultiEdgePresent}; vertex ids must be < n.
    static SimpleDigraph from_arcs(std::uint32_t n, const std::vector<Arc>& arcs);

    //! Drops self-loops and duplicate arcs instead of rejecting them.
    static SimpleDigraph simplify(std::uint32_t n, const std::vector<Arc>& arcs);

    [[nodiscard]] std::uint32_t num_vertices() const noexcept { return static_cast<std::uint32_t>(out_.size()); }
    [[nodiscard]] std::size_t num_arcs() const noexcept;
    [[nodiscard]] const std::vector<std::uint32_t>& out(std::uint32_t v) const { return out_[v]; }
    [[nodiscard]] bool has_arc(std::uint32_t u, std::uint32_t v) const;
    [[nodiscard]] std::vector<Arc> arcs() const;

    friend bool operator==(const SimpleDigraph&, const SimpleDigraph&) = default;

  private:
    std::vector<std::vector<std::uint32_t>> out_;
};

}  // namespace bridgeguard::xteg
