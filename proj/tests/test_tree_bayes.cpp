#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "doctest.h"
#include "loh/learners/bayes.hpp"
#include "loh/learners/tree.hpp"

using namespace loh;

namespace {

LabeledDataset xor_corners() {
    LabeledDataset s;
    s.x_dim = 2;
    s.add(DataPoint{0.0, 0.0}, 0.0);
    s.add(DataPoint{0.0, 1.0}, 1.0);
    s.add(DataPoint{1.0, 0.0}, 1.0);
    s.add(DataPoint{1.0, 1.0}, 0.0);
    return s;
}

}  // namespace

TEST_CASE("xor corners split down to four pure leaves") {
    const DecisionTree tree = tree_train(xor_corners(), {.min_count = 1, .purity = 1.0});
    CHECK(tree.leaf_count == 4);
    // Every split is a 2-2 tie at the root, so the lowest feature and cut win.
    REQUIRE(tree.root);
    CHECK(tree.root->feature == 0);
    CHECK(tree.root->cut == 0.0);

    const int expected[4] = {0, 1, 1, 0};
    const DataPoint queries[4] = {{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}};
    for (int i = 0; i < 4; ++i) {
        const Decision d = tree_predict(tree, queries[i]);
        CHECK_FALSE(d.abstained);
        CHECK(std::get<int>(d.payload) == expected[i]);
        CHECK(d.loss == 0.0);
        REQUIRE(d.trace.size() == 3);
        CHECK(d.trace[0] == TraceStep{"Focusing", {{"depth", 2.0}, {"count", 1.0}}});
        CHECK(d.trace[1] == TraceStep{"Fitting", {{"error_rate", 0.0}}});
        CHECK(d.trace[2] ==
              TraceStep{"Optimal selection", {{"label", static_cast<double>(expected[i])}}});
    }
}

TEST_CASE("queries outside the trained bounds abstain") {
    const DecisionTree tree = tree_train(xor_corners(), {.min_count = 1, .purity = 1.0});
    const Decision d = tree_predict(tree, DataPoint{2.0, 0.0});
    CHECK(d.abstained);
    CHECK(std::holds_alternative<std::monostate>(d.payload));
    REQUIRE(d.trace.size() == 1);
    CHECK(d.trace[0] == TraceStep{"Focusing", {{"outside_feature", 1.0}}});
    const Decision d2 = tree_predict(tree, DataPoint{0.0, -0.5});
    CHECK(d2.abstained);
    CHECK(d2.trace[0] == TraceStep{"Focusing", {{"outside_feature", 2.0}}});
}

TEST_CASE("small nodes become leaves and ties label 0") {
    const DecisionTree tree = tree_train(xor_corners(), {.min_count = 5, .purity = 1.0});
    CHECK(tree.leaf_count == 1);
    const Decision d = tree_predict(tree, DataPoint{0.0, 1.0});
    CHECK(std::get<int>(d.payload) == 0);  // 2-2 tie at the root leaf
    CHECK(d.loss == 0.5);
    CHECK(d.trace[0] == TraceStep{"Focusing", {{"depth", 0.0}, {"count", 4.0}}});
}

TEST_CASE("prevalent-class share above the purity threshold stops splitting") {
    LabeledDataset s;
    s.x_dim = 1;
    s.add(DataPoint{0.0}, 1.0);
    s.add(DataPoint{1.0}, 1.0);
    s.add(DataPoint{2.0}, 1.0);
    s.add(DataPoint{3.0}, 0.0);

    const DecisionTree stopped = tree_train(s, {.min_count = 1, .purity = 0.7});
    CHECK(stopped.leaf_count == 1);  // share 3/4 exceeds 0.7
    const Decision at3 = tree_predict(stopped, DataPoint{3.0});
    CHECK(std::get<int>(at3.payload) == 1);
    CHECK(at3.loss == 0.25);

    // share 3/4 does not exceed 0.75, so the node splits; the best cut (2)
    // separates the classes exactly.
    const DecisionTree split = tree_train(s, {.min_count = 1, .purity = 0.75});
    CHECK(split.leaf_count == 2);
    REQUIRE(split.root);
    CHECK(split.root->feature == 0);
    CHECK(split.root->cut == 2.0);
    CHECK(std::get<int>(tree_predict(split, DataPoint{3.0}).payload) == 0);
    CHECK(tree_predict(split, DataPoint{3.0}).loss == 0.0);
    CHECK(std::get<int>(tree_predict(split, DataPoint{0.5}).payload) == 1);
}

TEST_CASE("a node with one distinct value per feature is a leaf regardless") {
    LabeledDataset s;
    s.x_dim = 1;
    s.add(DataPoint{5.0}, 1.0);
    s.add(DataPoint{5.0}, 1.0);
    s.add(DataPoint{5.0}, 0.0);
    const DecisionTree tree = tree_train(s, {.min_count = 1, .purity = 1.0});
    CHECK(tree.leaf_count == 1);
    const Decision d = tree_predict(tree, DataPoint{5.0});
    CHECK(std::get<int>(d.payload) == 1);
    CHECK(d.loss == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("tree guards") {
    CHECK_THROWS_AS(tree_train(xor_corners(), {.min_count = 1, .purity = 0.5}), DomainError);
    LabeledDataset empty;
    empty.x_dim = 1;
    CHECK_THROWS_AS(tree_train(empty), DomainError);
    LabeledDataset bad;
    bad.x_dim = 1;
    bad.add(DataPoint{0.0}, 2.0);
    CHECK_THROWS_AS(tree_train(bad), DomainError);

    const DecisionTree tree = tree_train(xor_corners(), {.min_count = 1, .purity = 1.0});
    CHECK_THROWS_AS(tree_predict(tree, DataPoint{0.0}), DomainError);
    CHECK_THROWS_AS(tree_predict(DecisionTree{}, DataPoint{0.0}), DomainError);
}

TEST_CASE("per-class mismatch: worked example with both coordinates at error 1/2") {
    LabeledDataset s;
    s.x_dim = 2;
    s.add(DataPoint{0.0, 0.0}, 0.0);
    s.add(DataPoint{0.0, 1.0}, 1.0);
    s.add(DataPoint{1.0, 0.0}, 1.0);
    s.add(DataPoint{5.0, 5.0}, 0.0);

    const DataPoint z{0.0, 0.0};
    const BayesBreakdown b0 = naive_bayes_delta(0, z, s);
    REQUIRE(b0.per_coordinate_error.size() == 2);
    CHECK(b0.per_coordinate_error[0] == 0.5);
    CHECK(b0.per_coordinate_error[1] == 0.5);
    CHECK_FALSE(b0.empty_coordinate[0]);
    CHECK_FALSE(b0.empty_coordinate[1]);
    CHECK(b0.delta == 0.75);

    const BayesBreakdown b1 = naive_bayes_delta(1, z, s);
    CHECK(b1.delta == 0.75);

    // Equal deltas: the tie prefers label 0.
    const Decision d = naive_bayes_predict(z, s);
    CHECK(std::get<int>(d.payload) == 0);
    CHECK(d.loss == 0.75);

    REQUIRE(d.trace.size() == 5);  // 2 classes x 2 coordinates + selection
    CHECK(d.trace[0] == TraceStep{"Proper training",
                                  {{"label", 0.0}, {"coordinate", 1.0}, {"error_rate", 0.5},
                                   {"empty_focus", 0.0}}});
    CHECK(d.trace[1] == TraceStep{"Proper training",
                                  {{"label", 0.0}, {"coordinate", 2.0}, {"error_rate", 0.5},
                                   {"empty_focus", 0.0}}});
    CHECK(d.trace[2].values.at("label") == 1.0);
    CHECK(d.trace[3].values.at("coordinate") == 2.0);
    CHECK(d.trace[4] == TraceStep{"Optimal selection",
                                  {{"delta_0", 0.75}, {"delta_1", 0.75}, {"label", 0.0}}});
}

TEST_CASE("the smaller delta wins") {
    LabeledDataset s;
    s.x_dim = 2;
    s.add(DataPoint{0.0, 0.0}, 1.0);
    s.add(DataPoint{0.0, 5.0}, 1.0);
    s.add(DataPoint{5.0, 0.0}, 1.0);
    s.add(DataPoint{5.0, 5.0}, 0.0);
    const Decision d = naive_bayes_predict(DataPoint{0.0, 0.0}, s);
    CHECK(std::get<int>(d.payload) == 1);
    CHECK(d.loss == 0.0);
    CHECK(naive_bayes_delta(0, DataPoint{0.0, 0.0}, s).delta == 1.0);
}

TEST_CASE("a coordinate with no matching rows contributes factor one and is flagged") {
    LabeledDataset s;
    s.x_dim = 2;
    s.add(DataPoint{0.0, 0.0}, 1.0);
    s.add(DataPoint{5.0, 0.0}, 1.0);
    const BayesBreakdown b = naive_bayes_delta(1, DataPoint{9.0, 0.0}, s);
    CHECK(b.empty_coordinate[0]);
    CHECK_FALSE(b.empty_coordinate[1]);
    CHECK(b.per_coordinate_error[0] == 0.0);
    CHECK(b.delta == 0.0);

    const Decision d = naive_bayes_predict(DataPoint{9.0, 0.0}, s);
    CHECK(d.trace[2].values.at("empty_focus") == 1.0);  // class 1, coordinate 1
    CHECK(std::get<int>(d.payload) == 1);
}

TEST_CASE("mismatch score matches an independent double loop on random grids") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = 1 + rng() % 3;
        const int m = 1 + static_cast<int>(rng() % 15);
        LabeledDataset s;
        s.x_dim = dim;
        for (int i = 0; i < m; ++i) {
            DataPoint x;
            for (std::size_t j = 0; j < dim; ++j) x.push_back(static_cast<double>(rng() % 3));
            s.add(x, static_cast<double>(rng() % 2));
        }
        DataPoint z;
        for (std::size_t j = 0; j < dim; ++j) z.push_back(static_cast<double>(rng() % 3));
        const int label = static_cast<int>(rng() % 2);

        double survival = 1.0;
        for (std::size_t j = 0; j < dim; ++j) {
            double matched = 0.0;
            double mismatched = 0.0;
            for (int i = 0; i < m; ++i) {
                if (s.xs[static_cast<std::size_t>(i)][j] != z[j]) continue;
                matched += 1.0;
                if (s.ys[static_cast<std::size_t>(i)] != static_cast<double>(label)) {
                    mismatched += 1.0;
                }
            }
            survival *= matched == 0.0 ? 1.0 : 1.0 - mismatched / matched;
        }
        const double expected = 1.0 - survival;

        CHECK(naive_bayes_delta(label, z, s).delta == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("mismatch-score guards") {
    LabeledDataset s;
    s.x_dim = 1;
    s.add(DataPoint{0.0}, 1.0);
    CHECK_THROWS_AS(naive_bayes_delta(2, DataPoint{0.0}, s), DomainError);
    CHECK_THROWS_AS(naive_bayes_delta(0, DataPoint{0.0, 1.0}, s), DomainError);
    LabeledDataset empty;
    empty.x_dim = 1;
    CHECK_THROWS_AS(naive_bayes_delta(0, DataPoint{0.0}, empty), DomainError);
    LabeledDataset bad;
    bad.x_dim = 1;
    bad.add(DataPoint{0.0}, 0.5);
    CHECK_THROWS_AS(naive_bayes_predict(DataPoint{0.0}, bad), DomainError);
}
