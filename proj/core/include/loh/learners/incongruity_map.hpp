#pragma once

#include "loh/learners/clustering.hpp"
#include "loh/learners/dataset.hpp"
#include "loh/theory.hpp"

namespace loh {

// Builds the observation side of a formula set from a labeled dataset
// (scalar feedback, default modality group).
FormulaSet dataset_formulas(const LabeledDataset& s, MetricDef x_metric, MetricDef y_metric);

// Each function below evaluates a learner's loss purely through the theory
// engine: it declares the collision condition, deviation, per-aspect
// aggregator, top combiner, and regularization that reproduce the loss, then
// runs total_incongruity. The learner implementations never call these; tests
// compare both sides.

// (1/m) sum |h(x) - y|  — point-wise condition, plain deviation, mean.
double erm_incongruity(const HypothesisSpec& h, const LabeledDataset& s);

// Error rate of the constant c on s — the fitting step of the k-NN family.
double constant_fit_incongruity(double c, const LabeledDataset& s);

// 1 - prod_j (1 - e_{j,label}) — one aspect per coordinate, product-style top.
double naive_bayes_incongruity(int label, const DataPoint& z, const LabeledDataset& s);

// (1/m) sum log(max(|y - sigmoid(f(x))|, floor)) — log deviation, mean.
double logistic_incongruity(const LinearForm& f, const LabeledDataset& s, double floor = 1e-12);

// alpha*||w||^2 + (1/m) sum over disagreeing rows of |y - f(x)| — sign-aware
// feedback distance plus a squared-norm regularizer.
double svm_incongruity(const LinearForm& f, const LabeledDataset& s, double alpha);

// sum max(0, |y - f(x)| - epsilon) + lambda*||w||^2 — mean aspect scaled back
// to a sum by an m-weighted top.
double svr_incongruity(const LinearForm& f, const LabeledDataset& s, double epsilon,
                       double lambda);

// alpha*||w||^2 + (1/m) sum (f(x) - y)^2 — squared deviation, mean, regularized.
double ridge_incongruity(const LinearForm& f, const LabeledDataset& s, double alpha);

// Cluster-merge loss gamma over cross distances between clusters i and j:
// cluster index as x, point vector as y, the j-side re-indexed as hypothetical
// members of i. Aggregator per linkage flavor (min / mean / max).
double linkage_incongruity(const std::vector<DataPoint>& points,
                           const std::vector<std::vector<std::size_t>>& clusters, std::size_t i,
                           std::size_t j, Linkage linkage);

// Mean squared distance over ordered same-cluster pairs (each unordered pair
// counted twice) — symmetric x-equality condition, no hypothesis side.
double kmeans_incongruity(const std::vector<DataPoint>& points, const std::vector<int>& assignment,
                          int k);

}  // namespace loh
