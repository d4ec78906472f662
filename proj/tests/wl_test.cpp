// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <numeric>
#include <regex>

#include <bridgeguard/common/error.hpp>
#include <bridgeguard/features/wl.hpp>

#include "support.hpp"

using namespace bridgeguard;
using namespace bridgeguard::features;

namespace {

xteg::Xteg graph_of(std::uint32_t n, const std::vector<xteg::Arc>& arcs) {
    xteg::Xteg g;
    for (std::uint32_t i = 0; i < n; ++i) {
        xteg::Vertex v;
        v.id = i;
        v.key.kind = i == 0 ? xteg::VertexKind::kEoa : xteg::VertexKind::kContractFunction;
        v.key.address.bytes[19] = static_cast<std::uint8_t>(i);
        g.vertices.push_back(v);
    }
    std::uint32_t order = 0;
    for (auto [u, v] : arcs) g.edges.push_back({u, v, xteg::EdgeKind::kCall, order++, 1});
    return g;
}

}  // namespace

TEST_CASE("single edge yields six tokens", "[wl]") {
    const auto doc = wl_document(graph_of(2, {{0, 1}}), 2);
    REQUIRE(doc.tokens.size() == 6);
    const std::regex shape{"[0-2]:[0-9a-f]{16}"};
    for (const auto& t : doc.tokens) CHECK(std::regex_match(t, shape));
    CHECK(std::is_sorted(doc.tokens.begin(), doc.tokens.end()));
}

TEST_CASE("token count is |V| times iterations plus one", "[wl]") {
    Rng rng{11};
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = testing::random_xteg(rng, 15);
        const std::uint32_t h = 1 + static_cast<std::uint32_t>(uniform_below(rng, 4));
        CHECK(wl_document(g, h).tokens.size() == g.num_vertices() * (h + 1));
    }
}

TEST_CASE("star and path with equal size differ", "[wl]") {
    const auto star = wl_document(graph_of(4, {{0, 1}, {0, 2}, {0, 3}}));
    const auto path = wl_document(graph_of(4, {{0, 1}, {1, 2}, {2, 3}}));
    CHECK(star.tokens.size() == path.tokens.size());
    CHECK(star != path);
    CHECK(star.content_hash() != path.content_hash());
}

TEST_CASE("labels ignore addresses", "[wl]") {
    auto a = graph_of(3, {{0, 1}, {1, 2}});
    auto b = a;
    for (auto& v : b.vertices) v.key.address.bytes[0] = 0xee;
    CHECK(wl_document(a) == wl_document(b));
}

TEST_CASE("documents are invariant under vertex relabelling", "[wl][property]") {
    Rng rng{23};
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = testing::random_xteg(rng, 25);
        std::vector<std::uint32_t> perm(g.num_vertices());
        std::iota(perm.begin(), perm.end(), 0u);
        shuffle(perm, rng);
        const auto p = testing::permute_vertices(g, perm);
        CHECK(wl_document(g) == wl_document(p));
        CHECK(wl_document(g).content_hash() == wl_document(p).content_hash());
    }
}

TEST_CASE("edge kinds change labels", "[wl]") {
    auto a = graph_of(2, {{0, 1}});
    auto b = a;
    b.edges[0].kind = xteg::EdgeKind::kDelegateCall;
    CHECK(wl_document(a) != wl_document(b));
}

TEST_CASE("zero iterations are rejected", "[wl][errors]") {
    try {
        (void)wl_document(graph_of(2, {{0, 1}}), 0);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kInvalidArgument);
    }
}
