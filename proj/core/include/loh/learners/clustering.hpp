#ifndef LOH_LEARNERS_CLUSTERING_HPP
#define LOH_LEARNERS_CLUSTERING_HPP

#include <cstdint>
#include <span>

#include "loh/learners/dataset.hpp"

namespace loh {

enum class Linkage { Single, Average, Max };

// The linkage aggregation over a nonempty multiset of cross-cluster
// distances: min, mean or max.
double linkage_gamma(std::span<const double> dists, Linkage linkage);

struct MergeStep {
    std::size_t i = 0;
    std::size_t j = 0;
    double loss = 0.0;
};

// Cheapest pair of clusters to merge under the linkage criterion;
// lexicographically smallest (i, j) on ties.
MergeStep linkage_merge_step(std::span<const DataPoint> points,
                             const std::vector<std::vector<std::size_t>>& clusters,
                             Linkage linkage);

struct LinkageResult {
    std::vector<std::vector<std::size_t>> clusters;
    std::vector<MergeStep> dendrogram;
};

// Agglomerates from singletons (in point order) down to stop_count clusters.
// A merge folds cluster j into cluster i (i < j), keeping i's position.
LinkageResult linkage_cluster(std::span<const DataPoint> points, Linkage linkage,
                              std::size_t stop_count);

// Within-cluster spread of an assignment, computed in the pairwise form
// (1/2) * sum over same-cluster ordered pairs of squared distance, and
// cross-checked against the size-weighted centroid form
// sum_k l_k * sum ||xi - mean_k||^2; the two must agree to 1e-9 relative.
double kmeans_within_loss(std::span<const DataPoint> points, std::span<const int> assignment, int k);

// Mean squared distance over same-cluster ordered pairs (0 when no such
// pair exists). This is the engine-facing per-assignment loss; the within
// loss above equals it times half the pair count.
double kmeans_pair_mean_loss(std::span<const DataPoint> points, std::span<const int> assignment, int k);

enum class KmeansRule {
    ClosestMean,  // nearest centroid, lowest index on ties
    PairwiseW,    // cluster minimizing the added pairwise spread
};

// Chooses a cluster for x0 given the other points' assignment. ClosestMean
// skips empty clusters; PairwiseW treats joining an empty cluster as adding
// zero spread.
int kmeans_assign_point(const DataPoint& x0, std::span<const DataPoint> points,
                        std::span<const int> assignment, int k,
                        KmeansRule rule = KmeansRule::ClosestMean);

struct KmeansResult {
    std::vector<int> assignment;
    // Per-pass loss. ClosestMean records the within-cluster sum of squares
    // around recomputed centroids (nonincreasing across passes); PairwiseW
    // records kmeans_within_loss.
    std::vector<double> loss_history;
    bool converged = false;
    int passes = 0;
};

// Seeded runs: k distinct points become initial centers, every point joins
// its nearest center, then full passes reassign until a pass changes
// nothing or the pass cap is hit.
KmeansResult kmeans_run(std::span<const DataPoint> points, int k, std::uint64_t seed,
                        KmeansRule rule = KmeansRule::ClosestMean, int max_passes = 100);

}  // namespace loh

#endif
