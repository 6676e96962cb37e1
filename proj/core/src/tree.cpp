#include "loh/learners/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace loh {

namespace {

struct NodeStats {
    std::size_t ones = 0;
    std::size_t count = 0;

    std::size_t zeros() const { return count - ones; }
    int prevalent() const { return ones > zeros() ? 1 : 0; }
    std::size_t miscount() const { return std::min(ones, zeros()); }
    double share() const {
        return static_cast<double>(std::max(ones, zeros())) / static_cast<double>(count);
    }
};

NodeStats stats_of(const LabeledDataset& s, const std::vector<std::size_t>& rows) {
    NodeStats st;
    st.count = rows.size();
    for (auto r : rows) st.ones += s.ys[r] == 1.0 ? 1 : 0;
    return st;
}

struct SplitChoice {
    bool found = false;
    int feature = -1;
    double cut = 0.0;
    std::size_t miscount = 0;
};

SplitChoice best_split(const LabeledDataset& s, const std::vector<std::size_t>& rows) {
    SplitChoice best;
    for (std::size_t f = 0; f < s.x_dim; ++f) {
        std::vector<double> values;
        values.reserve(rows.size());
        for (auto r : rows) values.push_back(s.xs[r][f]);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        if (values.size() < 2) continue;
        // Any observed value except the largest splits into two nonempty sides.
        for (std::size_t vi = 0; vi + 1 < values.size(); ++vi) {
            const double cut = values[vi];
            NodeStats left, right;
            for (auto r : rows) {
                auto& side = s.xs[r][f] <= cut ? left : right;
                ++side.count;
                side.ones += s.ys[r] == 1.0 ? 1 : 0;
            }
            const std::size_t mis = left.miscount() + right.miscount();
            if (!best.found || mis < best.miscount) {
                best = {true, static_cast<int>(f), cut, mis};
            }
        }
    }
    return best;
}

std::unique_ptr<TreeNode> build(const LabeledDataset& s, const std::vector<std::size_t>& rows,
                                const TreeConfig& cfg, std::size_t& leaf_count) {
    const NodeStats st = stats_of(s, rows);
    auto node = std::make_unique<TreeNode>();
    node->count = st.count;
    node->label = st.prevalent();
    node->error_rate = static_cast<double>(st.miscount()) / static_cast<double>(st.count);

    const bool small = st.count < cfg.min_count;
    const bool pure_enough = st.share() > cfg.purity;
    if (!small && !pure_enough) {
        const SplitChoice split = best_split(s, rows);
        if (split.found) {
            std::vector<std::size_t> left_rows, right_rows;
            for (auto r : rows) {
                (s.xs[r][static_cast<std::size_t>(split.feature)] <= split.cut ? left_rows : right_rows)
                    .push_back(r);
            }
            node->feature = split.feature;
            node->cut = split.cut;
            node->left = build(s, left_rows, cfg, leaf_count);
            node->right = build(s, right_rows, cfg, leaf_count);
            return node;
        }
    }
    ++leaf_count;
    return node;
}

}  // namespace

DecisionTree tree_train(const LabeledDataset& s, const TreeConfig& cfg) {
    s.validate();
    s.validate_labels({0.0, 1.0});
    if (s.size() == 0) throw DomainError("tree training needs at least one row");
    if (cfg.purity <= 0.5) throw DomainError("purity threshold must exceed 1/2");

    DecisionTree tree;
    tree.bounds.resize(s.x_dim);
    for (std::size_t f = 0; f < s.x_dim; ++f) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& x : s.xs) {
            lo = std::min(lo, x[f]);
            hi = std::max(hi, x[f]);
        }
        tree.bounds[f] = {lo, hi};
    }

    std::vector<std::size_t> rows(s.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    tree.root = build(s, rows, cfg, tree.leaf_count);
    return tree;
}

Decision tree_predict(const DecisionTree& tree, const DataPoint& x) {
    if (!tree.root) throw DomainError("tree has not been trained");
    if (x.size() != tree.bounds.size()) throw DomainError("query dimension does not match tree");

    Decision decision;
    for (std::size_t f = 0; f < x.size(); ++f) {
        if (x[f] < tree.bounds[f].first || x[f] > tree.bounds[f].second) {
            decision.abstained = true;
            decision.trace.push_back({"Focusing", {{"outside_feature", static_cast<double>(f + 1)}}});
            return decision;
        }
    }

    const TreeNode* node = tree.root.get();
    double depth = 0.0;
    while (!node->is_leaf()) {
        node = x[static_cast<std::size_t>(node->feature)] <= node->cut ? node->left.get()
                                                                       : node->right.get();
        depth += 1.0;
    }
    decision.payload = node->label;
    decision.loss = node->error_rate;
    decision.trace = {
        {"Focusing", {{"depth", depth}, {"count", static_cast<double>(node->count)}}},
        {"Fitting", {{"error_rate", node->error_rate}}},
        {"Optimal selection", {{"label", static_cast<double>(node->label)}}},
    };
    return decision;
}

}  // namespace loh
