#ifndef LOH_LEARNERS_TREE_HPP
#define LOH_LEARNERS_TREE_HPP

#include <memory>
#include <utility>

#include "loh/learners/dataset.hpp"

namespace loh {

struct TreeConfig {
    std::size_t min_count = 2;  // a node this small becomes a leaf
    double purity = 0.9;        // prevalent-class share above this makes a leaf
};

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double cut = 0.0;  // left child takes x[feature] <= cut
    int label = 0;     // leaf decision (prevalent class, 0 on ties)
    std::size_t count = 0;
    double error_rate = 0.0;
    std::unique_ptr<TreeNode> left;
    std::unique_ptr<TreeNode> right;

    bool is_leaf() const { return feature < 0; }
};

struct DecisionTree {
    std::unique_ptr<TreeNode> root;
    // Observed [min, max] per feature; queries outside are undefined.
    std::vector<std::pair<double, double>> bounds;
    std::size_t leaf_count = 0;
};

// Greedy splitting on ordinal features and {0,1} labels: each split picks
// the (feature, cut) minimizing the summed child misclassification count,
// preferring the lowest feature then the lowest cut on ties. Nodes with no
// viable cut become leaves regardless of the stopping rules.
DecisionTree tree_train(const LabeledDataset& s, const TreeConfig& cfg = {});

// Walks the tree; abstains on queries outside the trained bounds.
Decision tree_predict(const DecisionTree& tree, const DataPoint& x);

}  // namespace loh

#endif
