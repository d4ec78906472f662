// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <fstream>
#include <map>
#include <sstream>

#include <commands.hpp>

#include <bridgeguard/common/error.hpp>
#include <bridgeguard/ingest/manifest.hpp>
#include <bridgeguard/pipeline/bench.hpp>
#include <bridgeguard/pipeline/config.hpp>
#include <bridgeguard/pipeline/experiment.hpp>
#include <bridgeguard/pipeline/featurizer.hpp>
#include <bridgeguard/pipeline/model_file.hpp>
#include <bridgeguard/synth/generator.hpp>

#include "support.hpp"

using namespace bridgeguard;
using namespace bridgeguard::pipeline;
using nlohmann::json;

namespace {

EnvLookup env_of(std::map<std::string, std::string> vars) {
    return [vars = std::move(vars)](const char* name) -> std::optional<std::string> {
        auto it = vars.find(name);
        if (it == vars.end()) return std::nullopt;
        return it->second;
    };
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out{p};
    out << text;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in{p, std::ios::binary};
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::kIo;
}

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

synth::GenConfig small_corpus_config() {
    synth::GenConfig cfg;
    cfg.n_normal = 150;
    cfg.attack_rate = 0.1;
    cfg.seed = 2;
    return cfg;
}

RunConfig fast_config() {
    RunConfig c;
    c.embedding.epochs = 30;
    c.runs = 2;
    return c;
}

// Shared small corpus: records, labels and analyses.
struct Fixture {
    synth::Dataset dataset = synth::gen_dataset(small_corpus_config());
    std::vector<ingest::TxRecord> records;
    std::vector<Label> labels;
    std::vector<TxAnalysis> analyses;

    Fixture() {
        for (const auto& tx : dataset.txs) {
            records.push_back(tx.record);
            labels.push_back(tx.label);
        }
        analyses = analyze_all(records, fast_config());
    }
};

const Fixture& fixture() {
    static const Fixture f;
    return f;
}

}  // namespace

TEST_CASE("configuration precedence", "[config]") {
    testing::TempDir dir{"config"};
    const auto file = dir.path() / "run.json";
    write_file(file, R"({"seed": 5, "workers": 3, "rpc_url": "http://file", "classifier": {"k": 7}})");

    const auto defaults = resolve_run_config(std::nullopt, json::object(), env_of({}));
    CHECK(defaults.seed == 0);
    CHECK(defaults.classifier.k == 5);
    CHECK_FALSE(defaults.rpc_url.has_value());

    const auto from_file = resolve_run_config(file, json::object(), env_of({}));
    CHECK(from_file.seed == 5);
    CHECK(from_file.classifier.k == 7);
    CHECK(from_file.classifier.kind == "knn");

    const auto from_env = resolve_run_config(file, json::object(),
                                             env_of({{"BRIDGEGUARD_SEED", "9"}, {"BRIDGEGUARD_RPC_URL", "http://env"}}));
    CHECK(from_env.seed == 9);
    CHECK(from_env.workers == 3);
    CHECK(from_env.rpc_url == "http://env");

    const auto from_flags = resolve_run_config(file, json{{"seed", 11}}, env_of({{"BRIDGEGUARD_SEED", "9"}}));
    CHECK(from_flags.seed == 11);

    CHECK(code_of([&] { resolve_run_config(std::nullopt, json::object(), env_of({{"BRIDGEGUARD_SEED", "x"}})); }) ==
          ErrorCode::kInvalidConfig);
    write_file(file, R"({"sede": 5})");
    CHECK(code_of([&] { resolve_run_config(file, json::object(), env_of({})); }) == ErrorCode::kInvalidConfig);
}

TEST_CASE("configuration hash and round trip", "[config]") {
    RunConfig a;
    RunConfig b;
    CHECK(a.hash() == b.hash());
    CHECK(a.hash().size() == 16);
    b.seed = 1;
    CHECK(a.hash() != b.hash());
    const auto back = RunConfig::from_json(b.to_json());
    CHECK(back.to_json() == b.to_json());
    CHECK(back.hash() == b.hash());
}

TEST_CASE("detector model file", "[model]") {
    const auto& f = fixture();
    const auto det = train_detector(f.analyses, f.labels, fast_config());
    testing::TempDir dir{"model"};
    const auto path = dir.path() / "model.json";
    save_detector(path, det);
    const auto back = load_detector(path);
    CHECK(back.config.hash() == det.config.hash());
    for (std::size_t i = 0; i < 40; ++i) {
        const auto a = det.detect(f.analyses[i]);
        const auto b = back.detect(f.records[i]);
        CHECK(a.label == b.label);
        CHECK(a.distribution == b.distribution);
    }

    auto j = detector_to_json(det);
    CHECK(j["format"] == "bridgeguard-model");
    CHECK(j["feature_layout"].size() == 37);
    auto old = j;
    old["version"] = 0;
    CHECK(code_of([&] { detector_from_json(old); }) == ErrorCode::kVersionMismatch);
    auto relaid = j;
    relaid["feature_layout"][0] = "something_else";
    CHECK(code_of([&] { detector_from_json(relaid); }) == ErrorCode::kLayoutMismatch);
    CHECK(code_of([&] { load_detector(dir.path() / "absent.json"); }) == ErrorCode::kModelMissing);
}

TEST_CASE("experiment report is deterministic", "[experiment]") {
    const auto& f = fixture();
    classify::ClassifierConfig knn;
    classify::ClassifierConfig tree;
    tree.kind = "dtree";
    const std::vector<classify::ClassifierConfig> both{knn, tree};
    const auto a = run_experiment(f.analyses, f.labels, fast_config(), both);
    const auto b = run_experiment(f.analyses, f.labels, fast_config(), both);
    CHECK(a.to_json().dump() == b.to_json().dump());
    REQUIRE(a.results.size() == 2);
    CHECK(a.results[0].runs.size() == 2);
    CHECK(a.n_samples == f.records.size());
    CHECK(a.class_counts[index_of(Label::kAttackSrc)] == 8);
    CHECK(a.class_counts[index_of(Label::kAttackTgt)] == 7);
    const auto j = a.to_json();
    CHECK(j["report"] == "bridgeguard-metrics");
    CHECK(j["config_hash"] == fast_config().hash());
    CHECK(a.table().find("AttackTgt") != std::string::npos);
}

TEST_CASE("bench accounting", "[bench]") {
    const auto& f = fixture();
    const auto det = train_detector(f.analyses, f.labels, fast_config());
    const auto report = run_bench(f.records, det);
    CHECK(report.n_transactions == f.records.size());
    double sum = 0.0;
    for (double s : report.stage_mean_ms) {
        CHECK(s >= 0.0);
        sum += s;
    }
    CHECK(report.total_mean_ms == Catch::Approx(sum).epsilon(1e-9));
    CHECK(report.tps > 0.0);
    CHECK(report.max_stage() < kNumStages);
    const auto j = report.to_json();
    CHECK(j.contains("reference"));

    const std::vector<ingest::TxRecord> few(f.records.begin(), f.records.begin() + 99);
    CHECK(code_of([&] { run_bench(few, det); }) == ErrorCode::kCorpusTooSmall);
}

TEST_CASE("command-line workflow", "[cli]") {
    testing::TempDir dir{"cli"};
    const auto corpus = (dir.path() / "corpus").string();
    const auto model = (dir.path() / "model.json").string();
    const auto manifest = corpus + "/manifest.jsonl";

    auto r = run_cli({"synth", "--out", corpus, "--n-normal", "150", "--attack-rate", "0.1", "--seed", "2"});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(std::filesystem::exists(manifest));

    r = run_cli({"train", "--manifest", manifest, "--model", model, "--full"});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(std::filesystem::exists(model));

    SECTION("detect with no inputs") {
        r = run_cli({"detect", "--model", model});
        CHECK(r.code == cli::kExitOk);
    }
    SECTION("detect labels a fresh target-side attack") {
        const auto trace = dir.path() / "attack.json";
        ingest::write_trace_file(trace, synth::gen_attack_tgt(777, {}, synth::BridgeAddresses::derive(2)).record);
        r = run_cli({"--format", "json", "detect", "--model", model, trace.string()});
        CHECK(r.code == cli::kExitOk);
        const auto j = json::parse(r.out);
        REQUIRE(j["results"].size() == 1);
        CHECK(j["results"][0]["label"] == "AttackTgt");
    }
    SECTION("corrupt inputs are partial failures") {
        const auto good = dir.path() / "good.json";
        const auto bad = dir.path() / "bad.json";
        ingest::write_trace_file(good, synth::gen_normal_deposit(1).record);
        write_file(bad, "{ not json");
        r = run_cli({"--format", "json", "detect", "--model", model, good.string(), bad.string()});
        CHECK(r.code == cli::kExitPartial);
        const auto j = json::parse(r.out);
        CHECK(j["results"].size() == 1);
        CHECK(j["failures"].size() == 1);
    }
    SECTION("missing model is fatal") {
        r = run_cli({"detect", "--model", (dir.path() / "none.json").string()});
        CHECK(r.code == cli::kExitFatal);
        CHECK(r.err.find("ModelMissing") != std::string::npos);
    }
    SECTION("evaluate output is reproducible") {
        const auto out1 = (dir.path() / "m1.json").string();
        const auto out2 = (dir.path() / "m2.json").string();
        CHECK(run_cli({"evaluate", "--manifest", manifest, "--runs", "2", "--out", out1}).code == cli::kExitOk);
        CHECK(run_cli({"evaluate", "--manifest", manifest, "--runs", "2", "--out", out2}).code == cli::kExitOk);
        CHECK(slurp(out1) == slurp(out2));
        const auto j = json::parse(slurp(out1));
        CHECK(j["results"].size() == 2);
    }
}
