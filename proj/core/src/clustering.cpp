#include "loh/learners/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace loh {

namespace {

double sq_dist(const DataPoint& a, const DataPoint& b) {
    if (a.size() != b.size()) throw DomainError("points have different dimensions");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double dist(const DataPoint& a, const DataPoint& b) { return std::sqrt(sq_dist(a, b)); }

void check_assignment(std::span<const DataPoint> points, std::span<const int> assignment, int k) {
    if (k < 1) throw DomainError("cluster count must be positive");
    if (points.size() != assignment.size()) throw DomainError("assignment length does not match point count");
    for (int a : assignment) {
        if (a < 0 || a >= k) throw DomainError("assignment index out of range");
    }
}

std::vector<DataPoint> cluster_means(std::span<const DataPoint> points, std::span<const int> assignment,
                                     int k, std::vector<std::size_t>& counts) {
    const std::size_t dim = points.empty() ? 0 : points[0].size();
    std::vector<DataPoint> means(static_cast<std::size_t>(k), DataPoint(dim, 0.0));
    counts.assign(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto c = static_cast<std::size_t>(assignment[i]);
        ++counts[c];
        for (std::size_t d = 0; d < dim; ++d) means[c][d] += points[i][d];
    }
    for (std::size_t c = 0; c < means.size(); ++c) {
        if (counts[c] == 0) continue;
        for (auto& v : means[c]) v /= static_cast<double>(counts[c]);
    }
    return means;
}

// Within-cluster sum of squares around recomputed centroids (no size weight).
double centroid_scatter(std::span<const DataPoint> points, std::span<const int> assignment, int k) {
    std::vector<std::size_t> counts;
    const auto means = cluster_means(points, assignment, k, counts);
    double s = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        s += sq_dist(points[i], means[static_cast<std::size_t>(assignment[i])]);
    }
    return s;
}

}  // namespace

double linkage_gamma(std::span<const double> dists, Linkage linkage) {
    if (dists.empty()) throw DomainError("linkage aggregation over an empty distance set");
    switch (linkage) {
        case Linkage::Single: return *std::min_element(dists.begin(), dists.end());
        case Linkage::Average: {
            double s = 0.0;
            for (double d : dists) s += d;
            return s / static_cast<double>(dists.size());
        }
        case Linkage::Max: return *std::max_element(dists.begin(), dists.end());
    }
    throw DomainError("unknown linkage");
}

MergeStep linkage_merge_step(std::span<const DataPoint> points,
                             const std::vector<std::vector<std::size_t>>& clusters,
                             Linkage linkage) {
    if (clusters.size() < 2) throw DomainError("merging needs at least two clusters");
    for (const auto& c : clusters) {
        if (c.empty()) throw DomainError("clusters must be nonempty");
        for (auto idx : c) {
            if (idx >= points.size()) throw DomainError("cluster member index out of range");
        }
    }

    MergeStep best;
    bool first = true;
    std::vector<double> cross;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        for (std::size_t j = i + 1; j < clusters.size(); ++j) {
            cross.clear();
            for (auto a : clusters[j]) {
                for (auto b : clusters[i]) cross.push_back(dist(points[a], points[b]));
            }
            const double loss = linkage_gamma(cross, linkage);
            if (first || loss < best.loss) {
                best = {i, j, loss};
                first = false;
            }
        }
    }
    return best;
}

LinkageResult linkage_cluster(std::span<const DataPoint> points, Linkage linkage,
                              std::size_t stop_count) {
    if (points.empty()) throw DomainError("clustering needs at least one point");
    if (stop_count < 1 || stop_count > points.size()) {
        throw DomainError("target cluster count must lie in [1, m]");
    }
    LinkageResult result;
    result.clusters.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) result.clusters.push_back({i});

    while (result.clusters.size() > stop_count) {
        const MergeStep step = linkage_merge_step(points, result.clusters, linkage);
        auto& into = result.clusters[step.i];
        auto& from = result.clusters[step.j];
        into.insert(into.end(), from.begin(), from.end());
        result.clusters.erase(result.clusters.begin() + static_cast<std::ptrdiff_t>(step.j));
        result.dendrogram.push_back(step);
    }
    return result;
}

double kmeans_within_loss(std::span<const DataPoint> points, std::span<const int> assignment, int k) {
    check_assignment(points, assignment, k);
    double pairwise = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (assignment[i] == assignment[j]) pairwise += sq_dist(points[i], points[j]);
        }
    }
    pairwise /= 2.0;

    std::vector<std::size_t> counts;
    const auto means = cluster_means(points, assignment, k, counts);
    double centroid = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto c = static_cast<std::size_t>(assignment[i]);
        centroid += static_cast<double>(counts[c]) * sq_dist(points[i], means[c]);
    }

    const double scale = std::max({1.0, std::fabs(pairwise), std::fabs(centroid)});
    if (std::fabs(pairwise - centroid) > 1e-9 * scale) {
        throw std::logic_error("pairwise and centroid within-cluster forms disagree");
    }
    return pairwise;
}

double kmeans_pair_mean_loss(std::span<const DataPoint> points, std::span<const int> assignment, int k) {
    check_assignment(points, assignment, k);
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (i != j && assignment[i] == assignment[j]) {
                sum += sq_dist(points[i], points[j]);
                ++pairs;
            }
        }
    }
    return pairs == 0 ? 0.0 : sum / static_cast<double>(pairs);
}

int kmeans_assign_point(const DataPoint& x0, std::span<const DataPoint> points,
                        std::span<const int> assignment, int k, KmeansRule rule) {
    check_assignment(points, assignment, k);
    if (rule == KmeansRule::ClosestMean) {
        std::vector<std::size_t> counts;
        const auto means = cluster_means(points, assignment, k, counts);
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] == 0) continue;
            const double d = sq_dist(x0, means[static_cast<std::size_t>(c)]);
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
        if (best < 0) throw DomainError("no nonempty cluster to join");
        return best;
    }

    // Added pairwise spread of joining each cluster; empty clusters add none.
    int best = 0;
    double best_w = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
        double added = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (assignment[i] == c) added += sq_dist(x0, points[i]);
        }
        if (added < best_w) {
            best_w = added;
            best = c;
        }
    }
    return best;
}

KmeansResult kmeans_run(std::span<const DataPoint> points, int k, std::uint64_t seed,
                        KmeansRule rule, int max_passes) {
    if (points.empty()) throw DomainError("clustering needs at least one point");
    if (k < 1 || static_cast<std::size_t>(k) > points.size()) {
        throw DomainError("cluster count must lie in [1, m]");
    }
    if (max_passes < 1) throw DomainError("pass cap must be positive");

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<DataPoint> centers;
    centers.reserve(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) centers.push_back(points[order[static_cast<std::size_t>(c)]]);

    KmeansResult result;
    result.assignment.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        int best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c) {
            const double d = sq_dist(points[i], centers[static_cast<std::size_t>(c)]);
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
        result.assignment[i] = best;
    }

    auto record_loss = [&]() {
        result.loss_history.push_back(rule == KmeansRule::ClosestMean
                                          ? centroid_scatter(points, result.assignment, k)
                                          : kmeans_within_loss(points, result.assignment, k));
    };
    record_loss();

    for (int pass = 0; pass < max_passes; ++pass) {
        bool changed = false;
        if (rule == KmeansRule::ClosestMean) {
            std::vector<std::size_t> counts;
            const auto means = cluster_means(points, result.assignment, k, counts);
            for (std::size_t i = 0; i < points.size(); ++i) {
                int best = -1;
                double best_d = std::numeric_limits<double>::infinity();
                for (int c = 0; c < k; ++c) {
                    if (counts[static_cast<std::size_t>(c)] == 0) continue;
                    const double d = sq_dist(points[i], means[static_cast<std::size_t>(c)]);
                    if (d < best_d) {
                        best_d = d;
                        best = c;
                    }
                }
                if (best != result.assignment[i]) {
                    result.assignment[i] = best;
                    changed = true;
                }
            }
        } else {
            for (std::size_t i = 0; i < points.size(); ++i) {
                std::vector<DataPoint> rest;
                std::vector<int> rest_assignment;
                rest.reserve(points.size() - 1);
                rest_assignment.reserve(points.size() - 1);
                for (std::size_t j = 0; j < points.size(); ++j) {
                    if (j == i) continue;
                    rest.push_back(points[j]);
                    rest_assignment.push_back(result.assignment[j]);
                }
                const int c = kmeans_assign_point(points[i], rest, rest_assignment, k, rule);
                if (c != result.assignment[i]) {
                    result.assignment[i] = c;
                    changed = true;
                }
            }
        }
        ++result.passes;
        record_loss();
        if (!changed) {
            result.converged = true;
            break;
        }
    }
    return result;
}

}  // namespace loh
