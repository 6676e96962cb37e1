#ifndef LOH_LEARNERS_KNN_HPP
#define LOH_LEARNERS_KNN_HPP

#include "loh/learners/dataset.hpp"

namespace loh {

// Indices of the k nearest rows to x by Euclidean distance, ordered by
// (distance, row index); the index tie-break makes the focus deterministic.
std::vector<std::size_t> knn_focus(const DataPoint& x, const LabeledDataset& s, int k);

// Constant-fit k-NN on {0,1} labels: fit both constants on the focus set,
// pick the one with the lower error rate, preferring 0 on ties.
Decision knn_predict(const DataPoint& x, const LabeledDataset& s, int k);

// c1 * sqrt((ln n + ln(1/delta)) / k).
double ada_threshold(double n, int k, double delta, double c1);

// BoxedErrorRate follows the stepwise rule literally: grow k from k0, stop
// as soon as the focus error rate exceeds the threshold, emit that constant
// if the loop stopped before k = n, abstain otherwise. ProseBias instead
// stops once the prevalent-class bias |p - 1/2| reaches the threshold and
// abstains when it never does.
enum class AdaRule { BoxedErrorRate, ProseBias };

Decision ada_knn_predict(const DataPoint& x, const LabeledDataset& s, int k0, double delta,
                         double c1, AdaRule rule = AdaRule::BoxedErrorRate);

// 2 * exp(-2k(p - 1/2)^2): two-sided bound on the probability that the
// prevalent label is an accident of sampling.
double hoeffding_weight(double p, int k);

// Scans k in [k0, m-1], computing the prevalent-class frequency p and the
// weight W(p, k); decides with the constant fit at the k minimizing W
// (smallest such k on ties). Trace holds exactly one row per candidate k.
Decision hoeffding_knn_predict(const DataPoint& x, const LabeledDataset& s, int k0);

}  // namespace loh

#endif
