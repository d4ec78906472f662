// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include <bridgeguard/classify/split.hpp>
#include <bridgeguard/common/error.hpp>
#include <bridgeguard/ingest/manifest.hpp>
#include <bridgeguard/ingest/rpc.hpp>
#include <bridgeguard/pipeline/bench.hpp>
#include <bridgeguard/pipeline/config.hpp>
#include <bridgeguard/pipeline/experiment.hpp>
#include <bridgeguard/pipeline/featurizer.hpp>
#include <bridgeguard/pipeline/model_file.hpp>
#include <bridgeguard/synth/generator.hpp>
#include <bridgeguard/xteg/xteg.hpp>

namespace bridgeguard::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

    struct GlobalOptions {
        std::optional<std::string> config_path;
        std::optional<std::string> rpc_url;
        std::optional<std::uint64_t> seed;
        std::optional<std::size_t> workers;
        std::string format{"table"};
    };

    pipeline::RunConfig resolve(const GlobalOptions& g, json overrides = json::object()) {
        if (g.rpc_url) overrides["rpc_url"] = *g.rpc_url;
        if (g.seed) overrides["seed"] = *g.seed;
        if (g.workers) overrides["workers"] = *g.workers;
        std::optional<fs::path> file;
        if (g.config_path) file = fs::path{*g.config_path};
        return pipeline::resolve_run_config(file, overrides);
    }

    std::unique_ptr<ingest::RpcClient> make_rpc(const pipeline::RunConfig& cfg) {
        if (!cfg.rpc_url) return nullptr;
        ingest::RpcConfig rc;
        rc.url = *cfg.rpc_url;
        rc.chain_id = cfg.chain_id;
        rc.cache_dir = cfg.rpc_cache_dir;
        rc.timeout = std::chrono::seconds{cfg.rpc_timeout_s};
        rc.max_concurrency = cfg.rpc_concurrency;
        return std::make_unique<ingest::RpcClient>(rc);
    }

    //! Positional inputs become an in-memory manifest; each is a file path or a 0x hash.
    ingest::DatasetManifest inputs_manifest(const std::vector<std::string>& inputs, std::uint64_t chain_id) {
        ingest::DatasetManifest m;
        for (const auto& s : inputs) m.entries.push_back({s, Label::kNormal, chain_id});
        return m;
    }

    void write_text(const fs::path& path, const std::string& text) {
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        std::ofstream f{path};
        if (!f) throw Error{ErrorCode::kIo, "cannot write " + path.string()};
        f << text;
    }

    json failures_json(const std::vector<pipeline::InputFailure>& failures) {
        json arr = json::array();
        for (const auto& f : failures) {
            arr.push_back({{"source", f.source}, {"error", std::string{to_string(f.code)}}, {"message", f.message}});
        }
        return arr;
    }

    void report_failures(const std::vector<pipeline::InputFailure>& failures, std::ostream& err) {
        for (const auto& f : failures) err << "failed: " << f.source << ": " << to_string(f.code) << ": " << f.message << '\n';
    }

    pipeline::Corpus load_manifest_corpus(const std::string& manifest_path, const pipeline::RunConfig& cfg,
                                          std::ostream& err) {
        const auto manifest = ingest::read_manifest(manifest_path);
        auto rpc = make_rpc(cfg);
        auto corpus = pipeline::load_corpus(manifest, rpc.get(), cfg.workers);
        report_failures(corpus.failures, err);
        if (corpus.records.empty()) throw Error{ErrorCode::kEmptyCorpus, "no transaction in " + manifest_path + " loaded"};
        return corpus;
    }

    // ---- ingest ----

    struct IngestOptions {
        std::vector<std::string> inputs;
        std::optional<std::string> manifest;
        std::string out_dir;
        std::optional<std::string> graph_dir;
    };

    int cmd_ingest(const GlobalOptions& g, const IngestOptions& o, std::ostream& out, std::ostream& err) {
        const auto cfg = resolve(g);
        auto manifest = o.manifest ? ingest::read_manifest(*o.manifest) : inputs_manifest(o.inputs, cfg.chain_id);
        auto rpc = make_rpc(cfg);
        auto corpus = pipeline::load_corpus(manifest, rpc.get(), cfg.workers);
        report_failures(corpus.failures, err);

        const fs::path dir{o.out_dir};
        fs::create_directories(dir / "traces");
        ingest::DatasetManifest written;
        written.base_dir = dir;
        std::vector<pipeline::InputFailure> graph_failures;
        json rows = json::array();
        for (std::size_t i = 0; i < corpus.records.size(); ++i) {
            const auto& rec = corpus.records[i];
            const std::string rel = "traces/" + rec.tx_hash.hex() + ".json";
            ingest::write_trace_file(dir / rel, rec);
            written.entries.push_back({rel, corpus.labels[i], rec.chain_id});
            json row{{"source", corpus.sources[i]}, {"tx_hash", rec.tx_hash.hex()}, {"file", rel},
                     {"frames", ingest::frame_count(rec.root_frame)}, {"logs", rec.logs.size()}};
            if (o.graph_dir) {
                try {
                    const auto graph = xteg::build_xteg(rec);
                    fs::create_directories(*o.graph_dir);
                    std::ofstream f{fs::path{*o.graph_dir} / (rec.tx_hash.hex() + ".edges")};
                    xteg::write_edge_list(f, graph);
                    row["vertices"] = graph.num_vertices();
                    row["edges"] = graph.edges.size();
                } catch (const Error& e) {
                    graph_failures.push_back({corpus.sources[i], e.code(), e.what()});
                }
            }
            rows.push_back(row);
        }
        ingest::write_manifest(dir / "manifest.jsonl", written);
        report_failures(graph_failures, err);

        auto failures = corpus.failures;
        failures.insert(failures.end(), graph_failures.begin(), graph_failures.end());
        if (g.format == "json") {
            out << json{{"config_hash", cfg.hash()}, {"ingested", rows}, {"failures", failures_json(failures)}}.dump(2)
                << '\n';
        } else {
            for (const auto& r : rows) out << r["tx_hash"].get<std::string>() << "  " << r["file"].get<std::string>() << '\n';
            out << "ingested " << rows.size() << ", failed " << failures.size() << '\n';
        }
        return failures.empty() ? kExitOk : kExitPartial;
    }

    // ---- synth ----

    struct SynthOptions {
        std::string out_dir;
        std::optional<std::size_t> n_normal;
        std::optional<double> attack_rate;
        std::optional<double> src_tgt_ratio;
        std::optional<double> extra_call_prob;
        std::optional<double> depth_jitter;
    };

    int cmd_synth(const GlobalOptions& g, const SynthOptions& o, std::ostream& out) {
        const auto cfg = resolve(g);
        synth::GenConfig gc;
        gc.seed = cfg.seed;
        gc.chain_id = cfg.chain_id;
        if (o.n_normal) gc.n_normal = *o.n_normal;
        if (o.attack_rate) gc.attack_rate = *o.attack_rate;
        if (o.src_tgt_ratio) gc.src_tgt_ratio = *o.src_tgt_ratio;
        if (o.extra_call_prob) gc.noise.extra_call_prob = *o.extra_call_prob;
        if (o.depth_jitter) gc.noise.depth_jitter = *o.depth_jitter;
        const auto dataset = synth::gen_dataset(gc, cfg.workers);
        synth::write_dataset(o.out_dir, dataset, gc);

        std::array<std::size_t, kNumLabels> counts{};
        for (const auto& t : dataset.txs) ++counts[index_of(t.label)];
        if (g.format == "json") {
            json c = json::object();
            for (auto l : kAllLabels) c[std::string{to_string(l)}] = counts[index_of(l)];
            out << json{{"out", o.out_dir}, {"total", dataset.txs.size()}, {"class_counts", c}, {"synth", gc.to_json()}}.dump(2)
                << '\n';
        } else {
            out << "wrote " << dataset.txs.size() << " transactions to " << o.out_dir << '\n';
            for (auto l : kAllLabels) out << "  " << to_string(l) << ": " << counts[index_of(l)] << '\n';
        }
        return kExitOk;
    }

    // ---- train / evaluate ----

    struct TrainOptions {
        std::string manifest;
        std::string model_path{"model.json"};
        std::optional<std::string> metrics_path;
        std::optional<std::string> classifier;
        bool full{false};
    };

    int cmd_train(const GlobalOptions& g, const TrainOptions& o, std::ostream& out, std::ostream& err) {
        json ov = json::object();
        if (o.classifier) ov["classifier"] = {{"kind", *o.classifier}};
        const auto cfg = resolve(g, ov);
        const auto corpus = load_manifest_corpus(o.manifest, cfg, err);
        const auto analyses = pipeline::analyze_all(corpus.records, cfg);

        std::vector<pipeline::TxAnalysis> train;
        std::vector<Label> train_y;
        std::vector<std::size_t> test;
        if (o.full) {
            train = analyses;
            train_y = corpus.labels;
        } else {
            const auto split = classify::split_indices(corpus.labels, cfg.train_ratio, true, cfg.seed);
            for (auto i : split.train) {
                train.push_back(analyses[i]);
                train_y.push_back(corpus.labels[i]);
            }
            test = split.test;
        }
        const auto detector = pipeline::train_detector(train, train_y, cfg);
        pipeline::save_detector(o.model_path, detector);

        json report{{"report", "bridgeguard-train"}, {"version", 1}, {"config_hash", cfg.hash()},
                    {"config", cfg.to_json()},       {"model", o.model_path}, {"n_train", train.size()},
                    {"n_test", test.size()}};
        std::optional<classify::Metrics> metrics;
        if (!test.empty()) {
            std::vector<Label> pred;
            std::vector<Label> truth;
            for (auto i : test) {
                pred.push_back(detector.detect(analyses[i]).label);
                truth.push_back(corpus.labels[i]);
            }
            metrics = classify::evaluate(pred, truth);
            report["holdout"] = metrics->to_json();
        }
        report["failures"] = failures_json(corpus.failures);
        if (o.metrics_path) write_text(*o.metrics_path, report.dump(2) + "\n");
        if (g.format == "json") {
            out << report.dump(2) << '\n';
        } else {
            out << "model written to " << o.model_path << " (" << detector.classifier->kind() << ", " << train.size()
                << " training transactions)\n";
            if (metrics) {
                const std::array<classify::Metrics, 1> one{*metrics};
                out << "holdout (" << test.size() << " transactions):\n" << classify::summarize(one).table();
            }
        }
        return corpus.failures.empty() ? kExitOk : kExitPartial;
    }

    struct EvaluateOptions {
        std::string manifest;
        std::optional<std::string> out_path;
        std::optional<std::size_t> runs;
        std::string classifiers{"both"};
    };

    int cmd_evaluate(const GlobalOptions& g, const EvaluateOptions& o, std::ostream& out, std::ostream& err) {
        json ov = json::object();
        if (o.runs) ov["runs"] = *o.runs;
        if (o.classifiers != "both") ov["classifier"] = {{"kind", o.classifiers}};
        const auto cfg = resolve(g, ov);
        const auto corpus = load_manifest_corpus(o.manifest, cfg, err);
        const auto analyses = pipeline::analyze_all(corpus.records, cfg);

        std::vector<classify::ClassifierConfig> classifiers;
        if (o.classifiers == "both") {
            auto knn = cfg.classifier;
            knn.kind = "knn";
            auto tree = cfg.classifier;
            tree.kind = "dtree";
            classifiers = {knn, tree};
        } else {
            classifiers = {cfg.classifier};
        }
        const auto report = pipeline::run_experiment(analyses, corpus.labels, cfg, classifiers);
        auto j = report.to_json();
        j["failures"] = failures_json(corpus.failures);
        if (o.out_path) write_text(*o.out_path, j.dump(2) + "\n");
        if (g.format == "json") {
            out << j.dump(2) << '\n';
        } else {
            out << report.table();
        }
        return corpus.failures.empty() ? kExitOk : kExitPartial;
    }

    // ---- detect ----

    struct DetectOptions {
        std::string model_path{"model.json"};
        std::vector<std::string> inputs;
        std::optional<std::string> manifest;
    };

    int cmd_detect(const GlobalOptions& g, const DetectOptions& o, std::ostream& out, std::ostream& err) {
        const auto detector = pipeline::load_detector(o.model_path);
        // Feature extraction settings are those the model was trained with; only I/O settings apply.
        auto cfg = resolve(g);
        auto manifest = o.manifest ? ingest::read_manifest(*o.manifest) : inputs_manifest(o.inputs, cfg.chain_id);
        auto rpc = make_rpc(cfg);
        auto corpus = pipeline::load_corpus(manifest, rpc.get(), cfg.workers);

        std::vector<pipeline::InputFailure> failures = corpus.failures;
        json rows = json::array();
        for (std::size_t i = 0; i < corpus.records.size(); ++i) {
            try {
                const auto p = detector.detect(corpus.records[i]);
                json dist = json::object();
                for (auto l : kAllLabels) dist[std::string{to_string(l)}] = p.distribution[index_of(l)];
                rows.push_back({{"source", corpus.sources[i]},
                                {"tx_hash", corpus.records[i].tx_hash.hex()},
                                {"label", std::string{to_string(p.label)}},
                                {"distribution", dist}});
            } catch (const Error& e) {
                failures.push_back({corpus.sources[i], e.code(), e.what()});
            }
        }
        report_failures(failures, err);
        if (g.format == "json") {
            out << json{{"config_hash", detector.config.hash()}, {"results", rows}, {"failures", failures_json(failures)}}
                       .dump(2)
                << '\n';
        } else {
            for (const auto& r : rows) {
                out << r["tx_hash"].get<std::string>() << "  " << std::left << std::setw(10)
                    << r["label"].get<std::string>();
                for (auto l : kAllLabels) {
                    out << "  " << to_string(l) << "=" << std::fixed << std::setprecision(2)
                        << r["distribution"][std::string{to_string(l)}].get<double>();
                }
                out << '\n';
            }
        }
        return failures.empty() ? kExitOk : kExitPartial;
    }

    // ---- bench ----

    struct BenchOptions {
        std::string manifest;
        std::optional<std::string> model_path;
        std::optional<std::string> out_path;
    };

    int cmd_bench(const GlobalOptions& g, const BenchOptions& o, std::ostream& out, std::ostream& err) {
        auto cfg = resolve(g);
        const auto corpus = load_manifest_corpus(o.manifest, cfg, err);
        pipeline::Detector detector;
        if (o.model_path) {
            detector = pipeline::load_detector(*o.model_path);
        } else {
            const auto analyses = pipeline::analyze_all(corpus.records, cfg);
            detector = pipeline::train_detector(analyses, corpus.labels, cfg);
        }
        // Timings always run on one thread, whatever the worker bound.
        const auto report = pipeline::run_bench(corpus.records, detector);
        auto j = report.to_json();
        j["config_hash"] = detector.config.hash();
        if (o.out_path) write_text(*o.out_path, j.dump(2) + "\n");
        if (g.format == "json") {
            out << j.dump(2) << '\n';
        } else {
            out << report.table();
        }
        return corpus.failures.empty() ? kExitOk : kExitPartial;
    }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cross-chain bridge attack detection from transaction execution graphs", "bridgeguard"};
    app.require_subcommand(1);
    // Global options are accepted before or after the subcommand.
    app.fallthrough();
    GlobalOptions g;
    app.add_option("--config", g.config_path, "JSON config file");
    app.add_option("--rpc-url", g.rpc_url, "JSON-RPC endpoint (overrides BRIDGEGUARD_RPC_URL)");
    app.add_option("--seed", g.seed, "Base seed");
    app.add_option("--workers", g.workers, "Worker thread bound");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "table"}));

    IngestOptions ingest_o;
    auto* ingest = app.add_subcommand("ingest", "Fetch or normalize transactions into trace files");
    ingest->add_option("inputs", ingest_o.inputs, "Trace files or 0x transaction hashes");
    ingest->add_option("--manifest", ingest_o.manifest, "Manifest of inputs");
    ingest->add_option("--out", ingest_o.out_dir, "Output directory")->required();
    ingest->add_option("--graphs", ingest_o.graph_dir, "Also write xTEG edge lists here");

    SynthOptions synth_o;
    auto* synth = app.add_subcommand("synth", "Generate a labeled synthetic corpus");
    synth->add_option("--out", synth_o.out_dir, "Output directory")->required();
    synth->add_option("--n-normal", synth_o.n_normal, "Normal transactions");
    synth->add_option("--attack-rate", synth_o.attack_rate, "Attacks per normal transaction");
    synth->add_option("--src-tgt-ratio", synth_o.src_tgt_ratio, "Fraction of attacks that are AttackSrc");
    synth->add_option("--extra-call-prob", synth_o.extra_call_prob, "Benign side-call probability");
    synth->add_option("--depth-jitter", synth_o.depth_jitter, "Proxy indirection probability");

    TrainOptions train_o;
    auto* train = app.add_subcommand("train", "Train a detector and score it on a held-out split");
    train->add_option("--manifest", train_o.manifest, "Labeled manifest")->required();
    train->add_option("--model", train_o.model_path, "Model output path");
    train->add_option("--metrics", train_o.metrics_path, "Metrics JSON output path");
    train->add_option("--classifier", train_o.classifier, "knn or dtree")->check(CLI::IsMember({"knn", "dtree"}));
    train->add_flag("--full", train_o.full, "Train on every transaction (no holdout)");

    EvaluateOptions eval_o;
    auto* evaluate = app.add_subcommand("evaluate", "Repeated split/train/evaluate experiment");
    evaluate->add_option("--manifest", eval_o.manifest, "Labeled manifest")->required();
    evaluate->add_option("--out", eval_o.out_path, "Metrics JSON output path");
    evaluate->add_option("--runs", eval_o.runs, "Number of seeded runs");
    evaluate->add_option("--classifier", eval_o.classifiers, "knn, dtree or both")
        ->check(CLI::IsMember({"knn", "dtree", "both"}));

    DetectOptions detect_o;
    auto* detect = app.add_subcommand("detect", "Label transactions with a trained model");
    detect->add_option("--model", detect_o.model_path, "Model file");
    detect->add_option("inputs", detect_o.inputs, "Trace files or 0x transaction hashes");
    detect->add_option("--manifest", detect_o.manifest, "Manifest of inputs");

    BenchOptions bench_o;
    auto* bench = app.add_subcommand("bench", "Per-stage timing over a corpus");
    bench->add_option("--manifest", bench_o.manifest, "Corpus manifest")->required();
    bench->add_option("--model", bench_o.model_path, "Model file; trained on the corpus when absent");
    bench->add_option("--out", bench_o.out_path, "Report JSON output path");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitFatal;
    }

    try {
        if (*ingest) return cmd_ingest(g, ingest_o, out, err);
        if (*synth) return cmd_synth(g, synth_o, out);
        if (*train) return cmd_train(g, train_o, out, err);
        if (*evaluate) return cmd_evaluate(g, eval_o, out, err);
        if (*detect) return cmd_detect(g, detect_o, out, err);
        if (*bench) return cmd_bench(g, bench_o, out, err);
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return kExitFatal;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFatal;
    }
    return kExitFatal;
}

}  // namespace bridgeguard::cli
