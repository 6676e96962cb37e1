#pragma once

#include "loh/learners/dataset.hpp"

namespace loh {

// Per-class mismatch summary for one query point.
//
// For coordinate j, the focus set holds the training rows whose j-th
// coordinate equals the query's. `per_coordinate_error[j]` is the share of
// those rows labeled differently from the candidate class; an empty focus
// set contributes error 0 (factor 1 in the product) and is flagged in
// `empty_coordinate`. The combined score is
//     delta = 1 - prod_j (1 - per_coordinate_error[j]).
struct BayesBreakdown {
    std::vector<double> per_coordinate_error;
    std::vector<bool> empty_coordinate;
    double delta = 0.0;
};

BayesBreakdown naive_bayes_delta(int label, const DataPoint& z, const LabeledDataset& s);

// Picks the class with the smaller delta; ties prefer label 0. The trace
// holds one "Proper training" row per (class, coordinate) and one
// "Optimal selection" row with both deltas.
Decision naive_bayes_predict(const DataPoint& z, const LabeledDataset& s);

}  // namespace loh
