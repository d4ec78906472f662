// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <chrono>
#include <fstream>
#include <numeric>
#include <sstream>

#include <bridgeguard/common/error.hpp>
#include <bridgeguard/motif/catalog.hpp>
#include <bridgeguard/motif/census.hpp>

#include "support.hpp"

using namespace bridgeguard;
using namespace bridgeguard::motif;
using xteg::Arc;
using xteg::SimpleDigraph;

namespace {

// Reference triad classification (1-based class per 6-bit code) with the MAN names in census
// order, as used by networkx.triads.
constexpr std::array<int, 64> kTricodes = {
    1, 2, 2, 3, 2, 4, 6, 8, 2, 6, 5, 7, 3, 8, 7, 11, 2, 6, 4, 8, 5, 9, 9, 13, 6, 10, 9, 14, 7, 14, 12, 15,
    2, 5, 6, 7, 6, 9, 10, 14, 4, 9, 9, 12, 8, 13, 14, 15, 3, 7, 8, 11, 7, 12, 14, 15, 8, 14, 13, 15, 11, 15, 15, 16};
constexpr std::array<std::string_view, 16> kNames = {"003", "012", "102", "021D", "021U", "021C", "111D", "111U",
                                                     "030T", "030C", "201", "120D", "120U", "120C", "210", "300"};

// Independent census: classify each triple with the reference table.
std::array<std::uint64_t, 16> oracle_census(std::uint32_t n, const std::vector<Arc>& arcs) {
    std::vector<std::vector<bool>> a(n, std::vector<bool>(n));
    for (auto [u, v] : arcs) a[u][v] = true;
    std::array<std::uint64_t, 16> c{};
    for (std::uint32_t x = 0; x < n; ++x) {
        for (std::uint32_t y = x + 1; y < n; ++y) {
            for (std::uint32_t z = y + 1; z < n; ++z) {
                const int code = a[x][y] | a[y][x] << 1 | a[x][z] << 2 | a[z][x] << 3 | a[y][z] << 4 | a[z][y] << 5;
                ++c[kTricodes[code] - 1];
            }
        }
    }
    return c;
}

std::size_t index_of_name(std::string_view name) {
    return static_cast<std::size_t>(std::find(kNames.begin(), kNames.end(), name) - kNames.begin());
}

}  // namespace

TEST_CASE("catalog order and class table", "[motif]") {
    const auto& catalog = motif_catalog();
    for (std::size_t i = 0; i < kNumMotifs; ++i) {
        CHECK(catalog[i].name == kNames[i]);
        CHECK(catalog[i].id == "M" + std::to_string(i + 1));
        // The representative arcs must land in their own class.
        std::array<std::array<bool, 3>, 3> a{};
        for (auto [u, v] : catalog[i].arcs) a[u][v] = true;
        const auto code = triad_code(a[0][1], a[1][0], a[0][2], a[2][0], a[1][2], a[2][1]);
        CHECK(kTricodes[code] - 1 == static_cast<int>(i));
    }
    const auto& table = triad_class_table();
    for (unsigned code = 0; code < 64; ++code) CHECK(table[code] + 1 == kTricodes[code]);

    // Exactly 003, 012 and 102 have a disconnected underlying graph.
    for (std::size_t i = 0; i < kNumMotifs; ++i) CHECK(catalog[i].connected == (i >= 3));
}

TEST_CASE("matrix census equals enumeration on random graphs", "[motif][property]") {
    Rng rng{41};
    for (int trial = 0; trial < 300; ++trial) {
        const auto n = static_cast<std::uint32_t>(uniform_below(rng, 16));
        const double p = 0.05 + 0.6 * uniform01(rng);
        const auto arcs = testing::random_arcs(n, p, rng);
        const auto g = SimpleDigraph::from_arcs(n, arcs);
        const auto expected = oracle_census(n, arcs);
        CHECK(motif_census_matrix(g).counts == expected);
        CHECK(triad_census_bruteforce(g).counts == expected);
        CHECK(motif_census_matrix(g).total() == choose3(n));
    }
}

TEST_CASE("census partitions the triples on larger graphs", "[motif][property]") {
    Rng rng{43};
    for (int trial = 0; trial < 50; ++trial) {
        const auto n = 3 + static_cast<std::uint32_t>(uniform_below(rng, 38));
        const auto arcs = testing::random_arcs(n, 0.02 + 0.3 * uniform01(rng), rng);
        const auto f = motif_census_matrix(n, arcs);
        const auto sum = std::accumulate(f.counts.begin(), f.counts.end(), std::uint64_t{0});
        CHECK(sum == choose3(n));
        CHECK(f.total() == sum);
        CHECK(f.connected_total() == sum - f.counts[0] - f.counts[1] - f.counts[2]);
    }
}

TEST_CASE("hand-checked censuses", "[motif]") {
    SECTION("directed 3-cycle") {
        const auto f = motif_census_matrix(3, {{0, 1}, {1, 2}, {2, 0}});
        CHECK(f.counts[index_of_name("030C")] == 1);
        CHECK(f.total() == 1);
    }
    SECTION("empty graph on four vertices") {
        const auto f = motif_census_matrix(4, {});
        CHECK(f.counts[index_of_name("003")] == 4);
    }
    SECTION("one mutual pair among four vertices") {
        const auto f = motif_census_matrix(4, {{0, 1}, {1, 0}});
        CHECK(f.counts[index_of_name("102")] == 2);
        CHECK(f.counts[index_of_name("003")] == 2);
    }
    SECTION("out-star") {
        const auto f = motif_census_matrix(4, {{0, 1}, {0, 2}, {0, 3}});
        CHECK(f.counts[index_of_name("021D")] == 3);
        CHECK(f.counts[index_of_name("003")] == 1);
    }
}

TEST_CASE("census is invariant under relabelling", "[motif][property]") {
    Rng rng{47};
    for (int trial = 0; trial < 50; ++trial) {
        const auto n = 1 + static_cast<std::uint32_t>(uniform_below(rng, 20));
        const auto arcs = testing::random_arcs(n, 0.3, rng);
        std::vector<std::uint32_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0u);
        shuffle(perm, rng);
        std::vector<Arc> moved;
        for (auto [u, v] : arcs) moved.emplace_back(perm[u], perm[v]);
        CHECK(motif_census_matrix(n, arcs) == motif_census_matrix(n, moved));
    }
}

TEST_CASE("input validation", "[motif][errors]") {
    auto code = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::kIo;
    };
    CHECK(code([] { motif_census_matrix(3, {{1, 1}}); }) == ErrorCode::kSelfLoopPresent);
    CHECK(code([] { motif_census_matrix(3, {{0, 1}, {0, 1}}); }) == ErrorCode::kMultiEdgePresent);
    CHECK(code([] { triad_census_bruteforce(SimpleDigraph{65}); }) == ErrorCode::kGraphTooLarge);
    CHECK(triad_census_bruteforce(SimpleDigraph{64}).counts[0] == choose3(64));
}

TEST_CASE("local feature of an xTEG uses the simple digraph", "[motif]") {
    Rng rng{53};
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = testing::random_xteg(rng, 25);
        std::vector<Arc> arcs;
        for (const auto& e : g.edges) {
            if (e.src != e.dst) arcs.emplace_back(e.src, e.dst);
        }
        std::sort(arcs.begin(), arcs.end());
        arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
        CHECK(local_feature(g).counts == oracle_census(g.num_vertices(), arcs));
    }
}

TEST_CASE("sparse census scales to thousands of vertices", "[motif][perf]") {
    Rng rng{59};
    const std::uint32_t n = 1000;
    std::vector<Arc> arcs;
    while (arcs.size() < 5000) {
        const auto u = static_cast<std::uint32_t>(uniform_below(rng, n));
        const auto v = static_cast<std::uint32_t>(uniform_below(rng, n));
        if (u != v) arcs.emplace_back(u, v);
    }
    const auto start = std::chrono::steady_clock::now();
    const auto f = motif_census_matrix(SimpleDigraph::simplify(n, arcs));
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(f.total() == choose3(n));
    CHECK(elapsed < 2.0);
}

TEST_CASE("catalog reference document is current", "[motif]") {
    std::ifstream in{std::string{BRIDGEGUARD_SOURCE_DIR} + "/docs/motif_catalog.md"};
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == motif_catalog_markdown());
}
