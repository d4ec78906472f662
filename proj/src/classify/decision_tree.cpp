// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/classify/decision_tree.hpp>

#include <algorithm>
#include <functional>

#include <bridgeguard/common/error.hpp>

namespace bridgeguard::classify {

namespace {

    constexpr double kMinGain = 1e-12;

    double gini(const std::array<double, kNumLabels>& w, double total) {
        if (total <= 0.0) return 0.0;
        double s = 1.0;
        for (auto x : w) {
            const double p = x / total;
            s -= p * p;
        }
        return s;
    }

    double sum(const std::array<double, kNumLabels>& w) { return w[0] + w[1] + w[2]; }

}  // namespace

void DecisionTreeModel::fit(std::span<const FeatureVector> rows, std::span<const Label> labels) {
    if (rows.empty()) throw Error{ErrorCode::kEmptyTrainingSet, "decision tree needs at least one training row"};
    if (rows.size() != labels.size()) throw Error{ErrorCode::kLengthMismatch, "rows and labels differ in length"};
    if (params_.min_samples_leaf == 0) throw Error{ErrorCode::kInvalidArgument, "min_samples_leaf must be positive"};

    std::array<double, kNumLabels> class_weight{1.0, 1.0, 1.0};
    if (params_.class_weighting) {
        std::array<std::size_t, kNumLabels> counts{};
        for (auto l : labels) ++counts[index_of(l)];
        std::size_t present = 0;
        for (auto c : counts) present += c > 0 ? 1 : 0;
        for (std::size_t c = 0; c < kNumLabels; ++c) {
            class_weight[c] = counts[c] == 0 ? 0.0
                                             : static_cast<double>(rows.size()) /
                                                   (static_cast<double>(present) * static_cast<double>(counts[c]));
        }
    }

    nodes_.clear();
    std::vector<std::size_t> idx(rows.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    grow(idx, 0, rows, labels, class_weight);
}

std::uint32_t DecisionTreeModel::grow(std::vector<std::size_t>& idx, std::size_t depth,
                                      std::span<const FeatureVector> rows, std::span<const Label> labels,
                                      const std::array<double, kNumLabels>& class_weight) {
    const auto self = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();

    std::array<double, kNumLabels> w{};
    for (auto i : idx) w[index_of(labels[i])] += class_weight[index_of(labels[i])];
    const double total = sum(w);
    const double impurity = gini(w, total);
    {
        auto& node = nodes_[self];
        node.impurity = impurity;
        node.weight = total;
        for (std::size_t c = 0; c < kNumLabels; ++c) node.distribution[c] = total > 0.0 ? w[c] / total : 0.0;
    }

    const std::size_t min_leaf = params_.min_samples_leaf;
    if (depth >= params_.max_depth || impurity <= 0.0 || idx.size() < 2 * min_leaf) {
        return self;
    }

    double best_gain = kMinGain;
    std::uint32_t best_feature = Node::kLeaf;
    double best_threshold = 0.0;
    std::vector<std::size_t> order = idx;
    for (std::uint32_t d = 0; d < kFeatureDim; ++d) {
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return rows[a][d] < rows[b][d]; });
        std::array<double, kNumLabels> left{};
        for (std::size_t pos = 0; pos + 1 < order.size(); ++pos) {
            const auto c = index_of(labels[order[pos]]);
            left[c] += class_weight[c];
            const double lo = rows[order[pos]][d];
            const double hi = rows[order[pos + 1]][d];
            if (!(lo < hi)) continue;
            const std::size_t n_left = pos + 1;
            const std::size_t n_right = order.size() - n_left;
            if (n_left < min_leaf || n_right < min_leaf) continue;
            std::array<double, kNumLabels> right{};
            for (std::size_t k = 0; k < kNumLabels; ++k) right[k] = w[k] - left[k];
            const double wl = sum(left);
            const double wr = total - wl;
            const double weighted = (wl * gini(left, wl) + wr * gini(right, wr)) / total;
            const double gain = impurity - weighted;
            if (gain > best_gain + (best_feature == Node::kLeaf ? 0.0 : kMinGain)) {
                best_gain = gain;
                best_feature = d;
                double t = lo + (hi - lo) / 2.0;
                if (!(t < hi)) t = lo;
                best_threshold = t;
            }
        }
    }
    if (best_feature == Node::kLeaf) return self;

    std::vector<std::size_t> left_idx;
    std::vector<std::size_t> right_idx;
    for (auto i : idx) (rows[i][best_feature] <= best_threshold ? left_idx : right_idx).push_back(i);
    idx.clear();
    idx.shrink_to_fit();

    const auto l = grow(left_idx, depth + 1, rows, labels, class_weight);
    const auto r = grow(right_idx, depth + 1, rows, labels, class_weight);
    auto& node = nodes_[self];
    node.feature = best_feature;
    node.threshold = best_threshold;
    node.left = l;
    node.right = r;
    return self;
}

Prediction DecisionTreeModel::predict(const FeatureVector& x) const {
    if (nodes_.empty()) throw Error{ErrorCode::kModelMissing, "decision tree is not trained"};
    std::uint32_t n = 0;
    while (!nodes_[n].is_leaf()) {
        n = x[nodes_[n].feature] <= nodes_[n].threshold ? nodes_[n].left : nodes_[n].right;
    }
    Prediction p;
    p.distribution = nodes_[n].distribution;
    std::size_t best = 0;
    for (std::size_t c = 1; c < kNumLabels; ++c) {
        if (p.distribution[c] > p.distribution[best]) best = c;
    }
    p.label = kAllLabels[best];
    return p;
}

std::size_t DecisionTreeModel::depth() const {
    if (nodes_.empty()) return 0;
    std::function<std::size_t(std::uint32_t)> rec = [&](std::uint32_t n) -> std::size_t {
        if (nodes_[n].is_leaf()) return 0;
        return 1 + std::max(rec(nodes_[n].left), rec(nodes_[n].right));
    };
    return rec(0);
}

nlohmann::json DecisionTreeModel::to_json() const {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : nodes_) {
        nodes.push_back({{"feature", n.is_leaf() ? -1 : static_cast<std::int64_t>(n.feature)},
                         {"threshold", n.threshold},
                         {"left", n.left},
                         {"right", n.right},
                         {"distribution", n.distribution},
                         {"impurity", n.impurity},
                         {"weight", n.weight}});
    }
    return {{"kind", "dtree"},
            {"max_depth", params_.max_depth},
            {"min_samples_leaf", params_.min_samples_leaf},
            {"class_weighting", params_.class_weighting},
            {"seed", params_.seed},
            {"nodes", nodes}};
}

DecisionTreeModel DecisionTreeModel::from_json(const nlohmann::json& j) {
    TreeParams p;
    p.max_depth = j.at("max_depth").get<std::size_t>();
    p.min_samples_leaf = j.at("min_samples_leaf").get<std::size_t>();
    p.class_weighting = j.at("class_weighting").get<bool>();
    p.seed = j.at("seed").get<std::uint64_t>();
    DecisionTreeModel m{p};
    for (const auto& nj : j.at("nodes")) {
        Node n;
        const auto f = nj.at("feature").get<std::int64_t>();
        n.feature = f < 0 ? Node::kLeaf : static_cast<std::uint32_t>(f);
        n.threshold = nj.at("threshold").get<double>();
        n.left = nj.at("left").get<std::uint32_t>();
        n.right = nj.at("right").get<std::uint32_t>();
        n.distribution = nj.at("distribution").get<std::array<double, kNumLabels>>();
        n.impurity = nj.at("impurity").get<double>();
        n.weight = nj.at("weight").get<double>();
        m.nodes_.push_back(n);
    }
    for (const auto& n : m.nodes_) {
        if (!n.is_leaf() && (n.feature >= kFeatureDim || n.left >= m.nodes_.size() || n.right >= m.nodes_.size())) {
            throw Error{ErrorCode::kVersionMismatch, "inconsistent decision tree model"};
        }
    }
    return m;
}

DecisionTreeModel dtree_train(std::span<const FeatureVector> rows, std::span<const Label> labels,
                              const TreeParams& params) {
    DecisionTreeModel m{params};
    m.fit(rows, labels);
    return m;
}

Label dtree_predict(const DecisionTreeModel& model, const FeatureVector& x) { return model.predict(x).label; }

}  // namespace bridgeguard::classify
