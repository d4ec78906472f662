// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <set>

#include <bridgeguard/classify/classifier.hpp>
#include <bridgeguard/classify/decision_tree.hpp>
#include <bridgeguard/classify/evaluation.hpp>
#include <bridgeguard/classify/knn.hpp>
#include <bridgeguard/classify/metrics.hpp>
#include <bridgeguard/classify/split.hpp>
#include <bridgeguard/common/error.hpp>
#include <bridgeguard/common/random.hpp>

using namespace bridgeguard;
using namespace bridgeguard::classify;

namespace {

struct Data {
    std::vector<FeatureVector> x;
    std::vector<Label> y;
};

// Three Gaussian-ish blobs in the first two dimensions, noise elsewhere.
Data blobs(std::size_t per_class, std::uint64_t seed, double spread = 1.0) {
    Rng rng{seed};
    Data d;
    const double centers[3][2] = {{0.0, 0.0}, {6.0, 0.0}, {0.0, 6.0}};
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < per_class; ++i) {
            FeatureVector f;
            for (std::size_t k = 0; k < kFeatureDim; ++k) f[k] = uniform01(rng) * 0.01;
            f[0] = centers[c][0] + spread * (uniform01(rng) - 0.5) * 2.0;
            f[1] = centers[c][1] + spread * (uniform01(rng) - 0.5) * 2.0;
            d.x.push_back(f);
            d.y.push_back(kAllLabels[c]);
        }
    }
    return d;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::kIo;
}

// Exhaustive nearest-neighbour vote on already standardized data.
Label oracle_knn(const std::vector<FeatureVector>& train, const std::vector<Label>& labels, const FeatureVector& q,
                 std::size_t k) {
    std::vector<std::pair<double, std::size_t>> dist;
    for (std::size_t i = 0; i < train.size(); ++i) {
        double s = 0.0;
        for (std::size_t d = 0; d < kFeatureDim; ++d) s += (train[i][d] - q[d]) * (train[i][d] - q[d]);
        dist.emplace_back(std::sqrt(s), i);
    }
    std::sort(dist.begin(), dist.end());
    std::map<Label, std::pair<int, double>> votes;
    for (std::size_t i = 0; i < k; ++i) {
        auto& v = votes[labels[dist[i].second]];
        ++v.first;
        v.second += dist[i].first;
    }
    Label best = Label::kNormal;
    std::pair<int, double> best_v{-1, 0.0};
    for (auto [label, v] : votes) {
        if (v.first > best_v.first || (v.first == best_v.first && v.second < best_v.second)) {
            best = label;
            best_v = v;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("stratified split sizes", "[split]") {
    std::vector<Label> labels(90, Label::kNormal);
    labels.insert(labels.end(), 10, Label::kAttackSrc);
    const auto s = split_indices(labels, 0.7, true, 4);
    std::map<Label, std::size_t> train;
    std::map<Label, std::size_t> test;
    for (auto i : s.train) ++train[labels[i]];
    for (auto i : s.test) ++test[labels[i]];
    CHECK(train[Label::kNormal] == 63);
    CHECK(train[Label::kAttackSrc] == 7);
    CHECK(test[Label::kNormal] == 27);
    CHECK(test[Label::kAttackSrc] == 3);

    std::set<std::size_t> all(s.train.begin(), s.train.end());
    all.insert(s.test.begin(), s.test.end());
    CHECK(all.size() == labels.size());
    CHECK(split_indices(labels, 0.7, true, 4).train == s.train);
    CHECK(split_indices(labels, 0.7, true, 5).train != s.train);

    CHECK(code_of([&] { split_indices(labels, 1.0); }) == ErrorCode::kInvalidArgument);
    CHECK(code_of([&] { split_indices(labels, 0.0); }) == ErrorCode::kInvalidArgument);
    std::vector<Label> tiny(20, Label::kNormal);
    tiny.push_back(Label::kAttackTgt);
    CHECK(code_of([&] { split_indices(tiny, 0.3); }) == ErrorCode::kClassTooSmall);
}

TEST_CASE("KNN matches exhaustive search", "[knn]") {
    const auto train = blobs(30, 1, 4.0);
    const auto test = blobs(20, 2, 4.0);
    const auto model = knn_train(train.x, train.y, 5);
    std::vector<FeatureVector> z;
    for (const auto& r : train.x) z.push_back(model.standardizer().transform(r));
    for (const auto& q : test.x) {
        CHECK(knn_predict(model, q) == oracle_knn(z, train.y, model.standardizer().transform(q), 5));
    }
}

TEST_CASE("KNN with k equal to the training size predicts the majority", "[knn]") {
    auto d = blobs(5, 3);
    d.x.resize(12);
    d.y.resize(12);  // 5 Normal, 5 AttackSrc, 2 AttackTgt
    d.y[5] = Label::kNormal;
    const auto model = knn_train(d.x, d.y, 12);
    const auto far = blobs(3, 9).x;
    for (const auto& q : far) CHECK(knn_predict(model, q) == Label::kNormal);
}

TEST_CASE("KNN errors", "[knn][errors]") {
    const auto d = blobs(2, 1);
    CHECK(code_of([&] { knn_train(d.x, d.y, 7); }) == ErrorCode::kKTooLarge);
    CHECK(code_of([&] { knn_train({}, {}, 1); }) == ErrorCode::kEmptyTrainingSet);
    CHECK(code_of([&] { knn_train(d.x, d.y, 0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("KNN is invariant to per-dimension affine rescaling", "[knn][property]") {
    const auto train = blobs(25, 5, 5.0);
    const auto test = blobs(15, 6, 5.0);
    Rng rng{8};
    std::array<double, kFeatureDim> a{};
    std::array<double, kFeatureDim> b{};
    for (std::size_t d = 0; d < kFeatureDim; ++d) {
        a[d] = std::ldexp(1.0, static_cast<int>(uniform_below(rng, 8)) - 3);
        b[d] = static_cast<double>(uniform_below(rng, 100));
    }
    auto rescale = [&](FeatureVector f) {
        for (std::size_t d = 0; d < kFeatureDim; ++d) f[d] = a[d] * f[d] + b[d];
        return f;
    };
    std::vector<FeatureVector> train2;
    for (const auto& r : train.x) train2.push_back(rescale(r));
    const auto m1 = knn_train(train.x, train.y, 5);
    const auto m2 = knn_train(train2, train.y, 5);
    for (const auto& q : test.x) CHECK(knn_predict(m1, q) == knn_predict(m2, rescale(q)));
}

TEST_CASE("standardizer is fitted on training rows only", "[knn]") {
    const auto train = blobs(10, 1);
    const auto model = knn_train(train.x, train.y, 3);
    double mean0 = 0.0;
    for (const auto& r : train.x) mean0 += r[0];
    mean0 /= static_cast<double>(train.x.size());
    CHECK(model.standardizer().mean()[0] == Catch::Approx(mean0).epsilon(1e-12));
    // Predicting far outliers must not move the statistics.
    FeatureVector outlier;
    outlier[0] = 1e9;
    (void)knn_predict(model, outlier);
    CHECK(model.standardizer().mean()[0] == Catch::Approx(mean0).epsilon(1e-12));
}

TEST_CASE("tree on a pure set is a single leaf", "[dtree]") {
    auto d = blobs(5, 1);
    std::fill(d.y.begin(), d.y.end(), Label::kAttackTgt);
    const auto tree = dtree_train(d.x, d.y);
    CHECK(tree.nodes().size() == 1);
    CHECK(tree.depth() == 0);
    CHECK(dtree_predict(tree, d.x[0]) == Label::kAttackTgt);
}

TEST_CASE("tree splits separable one-dimensional data once", "[dtree]") {
    std::vector<FeatureVector> x(6);
    std::vector<Label> y;
    for (std::size_t i = 0; i < 6; ++i) {
        x[i][3] = static_cast<double>(i);
        y.push_back(i < 3 ? Label::kNormal : Label::kAttackSrc);
    }
    const auto tree = dtree_train(x, y);
    REQUIRE(tree.nodes().size() == 3);
    CHECK(tree.depth() == 1);
    CHECK(tree.nodes()[0].feature == 3);
    CHECK(tree.nodes()[0].threshold == 2.5);
    FeatureVector q;
    q[3] = 2.5;
    CHECK(dtree_predict(tree, q) == Label::kNormal);
    q[3] = 2.6;
    CHECK(dtree_predict(tree, q) == Label::kAttackSrc);
}

TEST_CASE("tree fits training data at least as well as held-out data", "[dtree][property]") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto train = blobs(20, seed, 7.0);
        const auto test = blobs(20, seed + 100, 7.0);
        const auto tree = dtree_train(train.x, train.y);
        auto accuracy = [&](const Data& d) {
            std::size_t ok = 0;
            for (std::size_t i = 0; i < d.x.size(); ++i) ok += dtree_predict(tree, d.x[i]) == d.y[i] ? 1 : 0;
            return static_cast<double>(ok) / static_cast<double>(d.x.size());
        };
        CHECK(accuracy(train) >= accuracy(test));
        CHECK(tree.depth() <= 12);
    }
}

TEST_CASE("tree predictions survive strictly increasing feature transforms", "[dtree][property]") {
    // Integer-valued data keeps every midpoint away from floating-point rounding.
    Rng rng{12};
    std::vector<FeatureVector> x(60);
    std::vector<Label> y;
    for (auto& f : x) {
        for (std::size_t d = 0; d < 4; ++d) f[d] = static_cast<double>(uniform_below(rng, 10));
        y.push_back(f[0] + f[1] > 9 ? Label::kAttackSrc : (f[2] > 6 ? Label::kAttackTgt : Label::kNormal));
    }
    auto warp = [](FeatureVector f) {
        for (std::size_t d = 0; d < 4; ++d) f[d] = f[d] * f[d] * f[d] + 2.0 * f[d];
        return f;
    };
    std::vector<FeatureVector> xw;
    for (const auto& f : x) xw.push_back(warp(f));
    const auto t1 = dtree_train(x, y);
    const auto t2 = dtree_train(xw, y);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(dtree_predict(t1, x[i]) == dtree_predict(t2, xw[i]));
}

TEST_CASE("tree errors and weighting", "[dtree]") {
    CHECK(code_of([] { dtree_train({}, {}); }) == ErrorCode::kEmptyTrainingSet);
    // One minority point among identical majority points: weighting does not change purity of leaves.
    const auto d = blobs(10, 4);
    TreeParams p;
    p.class_weighting = true;
    const auto tree = dtree_train(d.x, d.y, p);
    for (std::size_t i = 0; i < d.x.size(); ++i) CHECK(dtree_predict(tree, d.x[i]) == d.y[i]);
}

TEST_CASE("classifier serialization", "[classify]") {
    const auto train = blobs(15, 2, 3.0);
    const auto test = blobs(10, 3, 3.0);
    for (const char* kind : {"knn", "dtree"}) {
        ClassifierConfig cfg;
        cfg.kind = kind;
        auto model = make_classifier(cfg);
        model->fit(train.x, train.y);
        const auto restored = classifier_from_json(nlohmann::json::parse(model->to_json().dump()));
        CHECK(restored->kind() == kind);
        for (const auto& q : test.x) {
            const auto a = model->predict(q);
            const auto b = restored->predict(q);
            CHECK(a.label == b.label);
            CHECK(a.distribution == b.distribution);
        }
        CHECK(ClassifierConfig::from_json(cfg.to_json()) == cfg);
    }
    ClassifierConfig bad;
    bad.kind = "svm";
    CHECK(code_of([&] { make_classifier(bad); }) == ErrorCode::kInvalidConfig);
}

TEST_CASE("per-class metrics", "[metrics]") {
    const auto m = class_metrics(3, 1, 2);
    CHECK(m.precision == 0.75);
    CHECK(m.recall == 0.6);
    CHECK(m.f1 == Catch::Approx(2 * 0.75 * 0.6 / 1.35));
    const auto z = class_metrics(0, 0, 0);
    CHECK(z.precision == 0.0);
    CHECK(z.recall == 0.0);
    CHECK(z.f1 == 0.0);
}

TEST_CASE("metrics from predictions", "[metrics]") {
    using L = Label;
    const std::vector<L> truth{L::kNormal, L::kNormal, L::kNormal, L::kAttackSrc, L::kAttackSrc, L::kAttackTgt};
    const std::vector<L> pred{L::kNormal, L::kNormal, L::kAttackSrc, L::kAttackTgt, L::kAttackSrc, L::kNormal};
    const auto m = evaluate(pred, truth);
    CHECK(m.confusion[0][0] == 2);
    CHECK(m.confusion[0][1] == 1);
    CHECK(m.confusion[1][2] == 1);
    CHECK(m.accuracy == Catch::Approx(3.0 / 6.0));
    CHECK(m.per_class[0].recall == Catch::Approx(2.0 / 3.0));
    CHECK(m.per_class[2].precision == 0.0);
    // Binary: attack = src or tgt. Truth attacks {3,4,5}; predicted attacks {2,3,4}.
    CHECK(m.attack_binary.precision == Catch::Approx(2.0 / 3.0));
    CHECK(m.attack_binary.recall == Catch::Approx(2.0 / 3.0));
    const double macro_f1 = (m.per_class[0].f1 + m.per_class[1].f1 + m.per_class[2].f1) / 3.0;
    CHECK(m.macro.f1 == Catch::Approx(macro_f1));

    std::set<std::string> names;
    for (const auto& [name, value] : m.flatten()) names.insert(name);
    for (auto n : {"Normal.precision", "AttackSrc.recall", "AttackTgt.f1", "macro.f1", "attack.recall",
                   "micro.precision", "accuracy"}) {
        CHECK(names.count(n) == 1);
    }

    CHECK(code_of([&] { evaluate(std::vector<L>{L::kNormal}, truth); }) == ErrorCode::kLengthMismatch);
    CHECK(code_of([&] { evaluate(std::vector<L>{}, std::vector<L>{}); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("metric identities on random confusion matrices", "[metrics][property]") {
    Rng rng{17};
    for (int trial = 0; trial < 1000; ++trial) {
        Confusion c{};
        std::size_t total = 0;
        for (auto& row : c) {
            for (auto& cell : row) {
                cell = uniform_below(rng, 20);
                total += cell;
            }
        }
        if (total == 0) continue;
        const auto m = Metrics::from_confusion(c);
        const double acc = static_cast<double>(c[0][0] + c[1][1] + c[2][2]) / static_cast<double>(total);
        CHECK(std::abs(m.micro_precision - acc) <= 1e-12);
        CHECK(std::abs(m.micro_recall - acc) <= 1e-12);
        CHECK(std::abs(m.accuracy - acc) <= 1e-12);
        for (const auto& k : m.per_class) {
            const double hm = k.precision + k.recall > 0 ? 2 * k.precision * k.recall / (k.precision + k.recall) : 0.0;
            CHECK(std::abs(k.f1 - hm) <= 1e-12);
        }
    }
}

TEST_CASE("repeated evaluation", "[evaluation]") {
    const auto d = blobs(20, 7, 5.0);
    std::vector<LabeledSample> samples;
    for (std::size_t i = 0; i < d.x.size(); ++i) samples.push_back({Hash32{}, d.x[i], d.y[i]});
    ClassifierConfig cfg;

    const auto one = repeated_eval(samples, 1, cfg, 3);
    for (const auto& [name, ms] : one.summary.entries) CHECK(ms.std == 0.0);

    const auto a = repeated_eval(samples, 4, cfg, 3, 0.7, 1);
    const auto b = repeated_eval(samples, 4, cfg, 3, 0.7, 2);
    CHECK(a.summary.to_json() == b.summary.to_json());
    REQUIRE(a.runs.size() == 4);
    const auto& acc = a.summary.at("accuracy");
    double mean = 0.0;
    for (const auto& r : a.runs) mean += r.accuracy;
    mean /= 4.0;
    double var = 0.0;
    for (const auto& r : a.runs) var += (r.accuracy - mean) * (r.accuracy - mean);
    CHECK(acc.mean == Catch::Approx(mean));
    CHECK(acc.std == Catch::Approx(std::sqrt(var / 4.0)).margin(1e-12));

    const auto table = a.summary.table();
    for (auto row : {"Normal", "AttackSrc", "AttackTgt", "macro", "attack"}) CHECK(table.find(row) != std::string::npos);

    // A single-class dataset still evaluates; attack metrics are zero.
    std::vector<LabeledSample> normals(samples.begin(), samples.begin() + 20);
    const auto single = repeated_eval(normals, 2, cfg, 0);
    CHECK(single.summary.at("accuracy").mean == 1.0);
    CHECK(single.summary.at("attack.f1").mean == 0.0);

    CHECK(code_of([&] { repeated_eval(samples, 0, cfg, 0); }) == ErrorCode::kInvalidArgument);
}
