// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/classify/metrics.hpp>

#include <bridgeguard/common/error.hpp>

namespace bridgeguard::classify {

namespace {

    double ratio(std::size_t num, std::size_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    }

    nlohmann::json class_json(const ClassMetrics& m) {
        return {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"support", m.support}};
    }

}  // namespace

ClassMetrics class_metrics(std::size_t tp, std::size_t fp, std::size_t fn) {
    ClassMetrics m;
    m.precision = ratio(tp, tp + fp);
    m.recall = ratio(tp, tp + fn);
    const double s = m.precision + m.recall;
    m.f1 = s > 0.0 ? 2.0 * m.precision * m.recall / s : 0.0;
    m.support = tp + fn;
    return m;
}

Metrics Metrics::from_confusion(const Confusion& confusion) {
    Metrics m;
    m.confusion = confusion;
    std::size_t total = 0;
    std::size_t correct = 0;
    std::size_t fp_sum = 0;
    std::size_t fn_sum = 0;
    for (std::size_t c = 0; c < kNumLabels; ++c) {
        std::size_t fp = 0;
        std::size_t fn = 0;
        for (std::size_t o = 0; o < kNumLabels; ++o) {
            total += confusion[c][o];
            if (o == c) continue;
            fp += confusion[o][c];
            fn += confusion[c][o];
        }
        correct += confusion[c][c];
        fp_sum += fp;
        fn_sum += fn;
        m.per_class[c] = class_metrics(confusion[c][c], fp, fn);
        m.macro.precision += m.per_class[c].precision / kNumLabels;
        m.macro.recall += m.per_class[c].recall / kNumLabels;
        m.macro.f1 += m.per_class[c].f1 / kNumLabels;
    }
    m.macro.support = total;
    m.micro_precision = ratio(correct, correct + fp_sum);
    m.micro_recall = ratio(correct, correct + fn_sum);
    const double s = m.micro_precision + m.micro_recall;
    m.micro_f1 = s > 0.0 ? 2.0 * m.micro_precision * m.micro_recall / s : 0.0;
    m.accuracy = ratio(correct, total);

    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    for (auto t : kAllLabels) {
        for (auto p : kAllLabels) {
            const auto n = confusion[index_of(t)][index_of(p)];
            if (is_attack(t) && is_attack(p)) tp += n;
            if (!is_attack(t) && is_attack(p)) fp += n;
            if (is_attack(t) && !is_attack(p)) fn += n;
        }
    }
    m.attack_binary = class_metrics(tp, fp, fn);
    return m;
}

std::vector<std::pair<std::string, double>> Metrics::flatten() const {
    std::vector<std::pair<std::string, double>> out;
    auto add_class = [&](const std::string& prefix, const ClassMetrics& c) {
        out.emplace_back(prefix + ".precision", c.precision);
        out.emplace_back(prefix + ".recall", c.recall);
        out.emplace_back(prefix + ".f1", c.f1);
        out.emplace_back(prefix + ".support", static_cast<double>(c.support));
    };
    for (auto l : kAllLabels) add_class(std::string{to_string(l)}, per_class[index_of(l)]);
    add_class("macro", macro);
    add_class("attack", attack_binary);
    out.emplace_back("micro.precision", micro_precision);
    out.emplace_back("micro.recall", micro_recall);
    out.emplace_back("micro.f1", micro_f1);
    out.emplace_back("accuracy", accuracy);
    return out;
}

nlohmann::json Metrics::to_json() const {
    nlohmann::json classes = nlohmann::json::object();
    for (auto l : kAllLabels) classes[std::string{to_string(l)}] = class_json(per_class[index_of(l)]);
    return {{"per_class", classes},
            {"macro", class_json(macro)},
            {"micro", {{"precision", micro_precision}, {"recall", micro_recall}, {"f1", micro_f1}}},
            {"accuracy", accuracy},
            {"attack_binary", class_json(attack_binary)},
            {"confusion", confusion}};
}

Metrics evaluate(std::span<const Label> predictions, std::span<const Label> labels) {
    if (predictions.size() != labels.size()) {
        throw Error{ErrorCode::kLengthMismatch, "predictions and labels differ in length"};
    }
    if (labels.empty()) throw Error{ErrorCode::kInvalidArgument, "nothing to evaluate"};
    Confusion c{};
    for (std::size_t i = 0; i < labels.size(); ++i) ++c[index_of(labels[i])][index_of(predictions[i])];
    return Metrics::from_confusion(c);
}

}  // namespace bridgeguard::classify
