// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/classify/evaluation.hpp>

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <bridgeguard/classify/split.hpp>
#include <bridgeguard/common/error.hpp>
#include <bridgeguard/common/parallel.hpp>

namespace bridgeguard::classify {

const MeanStd& MetricsSummary::at(std::string_view name) const {
    for (const auto& [n, v] : entries) {
        if (n == name) return v;
    }
    throw std::out_of_range{"no metric named " + std::string{name}};
}

nlohmann::json MetricsSummary::to_json() const {
    nlohmann::json metrics = nlohmann::json::object();
    for (const auto& [n, v] : entries) metrics[n] = {{"mean", v.mean}, {"std", v.std}};
    return {{"runs", runs}, {"metrics", metrics}};
}

std::string MetricsSummary::table() const {
    std::ostringstream out;
    auto cell = [&](const std::string& key) {
        const auto& v = at(key);
        std::ostringstream c;
        c << std::fixed << std::setprecision(4) << v.mean << " ± " << v.std;
        return c.str();
    };
    auto support = [&](const std::string& key) {
        std::ostringstream c;
        c << std::fixed << std::setprecision(1) << at(key).mean;
        return c.str();
    };
    // "±" is two bytes but one column, so pad with explicit widths.
    auto pad = [](const std::string& s, std::size_t width) {
        std::size_t cols = 0;
        for (unsigned char ch : s) cols += (ch & 0xC0) != 0x80 ? 1 : 0;
        return s + std::string(width > cols ? width - cols : 0, ' ');
    };
    constexpr std::size_t kName = 12;
    constexpr std::size_t kCell = 19;
    out << pad("class", kName) << pad("precision", kCell) << pad("recall", kCell) << pad("f1", kCell) << "support\n";
    std::vector<std::pair<std::string, std::string>> rows;
    for (auto l : kAllLabels) rows.emplace_back(std::string{to_string(l)}, std::string{to_string(l)});
    rows.emplace_back("macro", "macro");
    rows.emplace_back("attack", "attack");
    for (const auto& [title, key] : rows) {
        out << pad(title, kName) << pad(cell(key + ".precision"), kCell) << pad(cell(key + ".recall"), kCell)
            << pad(cell(key + ".f1"), kCell) << support(key + ".support") << '\n';
    }
    out << pad("accuracy", kName) << cell("accuracy") << '\n';
    out << "runs: " << runs << '\n';
    return out.str();
}

MetricsSummary summarize(std::span<const Metrics> runs) {
    if (runs.empty()) throw Error{ErrorCode::kInvalidArgument, "no runs to summarize"};
    MetricsSummary s;
    s.runs = runs.size();
    const auto first = runs.front().flatten();
    std::vector<std::vector<double>> values(first.size());
    for (const auto& m : runs) {
        const auto flat = m.flatten();
        for (std::size_t i = 0; i < flat.size(); ++i) values[i].push_back(flat[i].second);
    }
    for (std::size_t i = 0; i < first.size(); ++i) {
        double mean = 0.0;
        for (auto v : values[i]) mean += v;
        mean /= static_cast<double>(values[i].size());
        double var = 0.0;
        for (auto v : values[i]) var += (v - mean) * (v - mean);
        var /= static_cast<double>(values[i].size());
        s.entries.emplace_back(first[i].first, MeanStd{mean, std::sqrt(var)});
    }
    return s;
}

RepeatedEvalResult repeated_eval(std::span<const LabeledSample> samples, std::size_t runs,
                                 const ClassifierConfig& config, std::uint64_t base_seed, double ratio,
                                 std::size_t workers) {
    if (runs == 0) throw Error{ErrorCode::kInvalidArgument, "runs must be at least 1"};
    std::vector<Label> labels;
    labels.reserve(samples.size());
    for (const auto& s : samples) labels.push_back(s.label);

    RepeatedEvalResult result;
    result.runs.resize(runs);
    parallel_for(runs, workers, [&](std::size_t r) {
        const std::uint64_t seed = base_seed + r;
        const auto split = split_indices(labels, ratio, true, seed);
        std::vector<FeatureVector> train_x;
        std::vector<Label> train_y;
        for (auto i : split.train) {
            train_x.push_back(samples[i].features);
            train_y.push_back(samples[i].label);
        }
        auto cfg = config;
        cfg.seed = seed;
        auto model = make_classifier(cfg);
        model->fit(train_x, train_y);
        std::vector<Label> pred;
        std::vector<Label> truth;
        for (auto i : split.test) {
            pred.push_back(model->predict(samples[i].features).label);
            truth.push_back(samples[i].label);
        }
        result.runs[r] = evaluate(pred, truth);
    });
    result.summary = summarize(result.runs);
    return result;
}

}  // namespace bridgeguard::classify
