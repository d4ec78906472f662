// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <bridgeguard/classify/features.hpp>
#include <bridgeguard/common/error.hpp>
#include <bridgeguard/common/keccak.hpp>
#include <bridgeguard/features/global.hpp>

#include "support.hpp"

using namespace bridgeguard;
using namespace bridgeguard::features;

namespace {

ingest::LogEntry log_with(std::string_view signature) {
    ingest::LogEntry l;
    l.topic0 = event_topic(signature);
    return l;
}

}  // namespace

TEST_CASE("density on hand examples", "[global]") {
    CHECK(density(5, 4) == 0.4);
    CHECK(density(2, 1) == 1.0);
    CHECK(density(2, 2) == 2.0);
    CHECK(density(1, 0) == 0.0);
    CHECK(density(0, 0) == 0.0);
}

TEST_CASE("graph statistics on random xTEGs", "[global][property]") {
    Rng rng{31};
    for (int trial = 0; trial < 300; ++trial) {
        const auto rec = ingest::parse_document(testing::random_trace_document(rng, 25));
        const auto g = xteg::build_xteg(rec);
        const auto s = graph_stats(g);
        CHECK(s.n_vertices == g.vertices.size());
        CHECK(s.n_edges == g.edges.size());
        CHECK(s.n_logs == rec.logs.size());
        const double v = static_cast<double>(g.vertices.size());
        const double expected = 2.0 * static_cast<double>(g.edges.size()) / (v * (v - 1.0));
        CHECK(std::abs(s.density - expected) <= 1e-12);
    }
}

TEST_CASE("direction flag", "[global]") {
    const auto cfg = SignatureConfig::defaults();
    const std::vector<ingest::LogEntry> none;
    const std::vector<ingest::LogEntry> deposit{log_with("Lock(address,address,uint256)")};
    const std::vector<ingest::LogEntry> withdrawal{log_with("Unlock(address,address,uint256)")};
    const std::vector<ingest::LogEntry> both{log_with("Lock(address,address,uint256)"),
                                             log_with("Unlock(address,address,uint256)")};
    const std::vector<ingest::LogEntry> unrelated{log_with("Transfer(address,address,uint256)"), ingest::LogEntry{}};
    CHECK(direction_flag(none, cfg) == kUnknownFlag);
    CHECK(direction_flag(deposit, cfg) == kDepositFlag);
    CHECK(direction_flag(withdrawal, cfg) == kWithdrawalFlag);
    CHECK(direction_flag(both, cfg) == kUnknownFlag);
    CHECK(direction_flag(unrelated, cfg) == kUnknownFlag);
}

TEST_CASE("signature configuration", "[global]") {
    const auto j = nlohmann::json{{"deposit", {"Sent(uint256)"}},
                                  {"withdrawal", {event_topic("Received(uint256)").hex()}}};
    const auto cfg = SignatureConfig::from_json(j);
    CHECK(direction_flag(std::vector{log_with("Sent(uint256)")}, cfg) == kDepositFlag);
    CHECK(direction_flag(std::vector{log_with("Received(uint256)")}, cfg) == kWithdrawalFlag);
    CHECK(SignatureConfig::from_json(cfg.to_json()).topics == cfg.topics);
    CHECK_THROWS_AS(SignatureConfig::from_json({{"deposit", {"0x12"}}}), Error);
}

TEST_CASE("global vector assembly", "[global]") {
    std::vector<double> emb(kEmbeddingDim);
    for (std::size_t i = 0; i < emb.size(); ++i) emb[i] = 0.1 * static_cast<double>(i);
    const GraphStats stats{6, 5, 2, density(6, 5)};
    const auto f = assemble_global(emb, stats, kDepositFlag);
    const auto v = f.values();
    REQUIRE(v.size() == 21);
    for (std::size_t i = 0; i < kEmbeddingDim; ++i) CHECK(v[i] == emb[i]);
    CHECK(v[16] == 6.0);
    CHECK(v[17] == 5.0);
    CHECK(v[18] == 2.0);
    CHECK(v[19] == Catch::Approx(10.0 / 30.0));
    CHECK(v[20] == 1.0);

    const auto& layout = global_layout();
    CHECK(GlobalFeature::from_values(v, layout) == f);

    auto shuffled = layout;
    std::swap(shuffled[16], shuffled[17]);
    try {
        (void)GlobalFeature::from_values(v, shuffled);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kLayoutMismatch);
    }
    std::vector<double> short_emb(15);
    CHECK_THROWS_AS(assemble_global(short_emb, stats, kDepositFlag), Error);
}

TEST_CASE("feature dimensions", "[global]") {
    CHECK(kGlobalFeatureDim == 21);
    CHECK(motif::kNumMotifs == 16);
    CHECK(classify::FeatureVector::size() == 37);
    const auto& layout = classify::feature_layout();
    CHECK(layout.size() == 37);
    for (std::size_t i = 0; i < kGlobalFeatureDim; ++i) CHECK(layout[i] == global_layout()[i]);

    std::vector<double> g(21, 1.0);
    std::vector<double> l(16, 2.0);
    const auto fv = classify::concat_features(g, l);
    CHECK(fv[20] == 1.0);
    CHECK(fv[21] == 2.0);
    CHECK(fv[36] == 2.0);
    l.pop_back();
    CHECK_THROWS_AS(classify::concat_features(g, l), Error);
}
