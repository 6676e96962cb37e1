#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "doctest.h"
#include "loh/learners/clustering.hpp"

using namespace loh;

namespace {

std::vector<DataPoint> line_points(std::vector<double> xs) {
    std::vector<DataPoint> pts;
    pts.reserve(xs.size());
    for (double x : xs) pts.push_back(DataPoint{x});
    return pts;
}

// Ordered same-cluster pairs (i != j), for the pair-count relation.
std::size_t ordered_pair_count(std::span<const int> assignment) {
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        for (std::size_t j = 0; j < assignment.size(); ++j) {
            if (i != j && assignment[i] == assignment[j]) ++pairs;
        }
    }
    return pairs;
}

}  // namespace

TEST_CASE("linkage gamma is min, mean or max of the cross distances") {
    const std::vector<double> dists{5.0, 3.0};
    CHECK(linkage_gamma(dists, Linkage::Single) == 3.0);
    CHECK(linkage_gamma(dists, Linkage::Average) == 4.0);
    CHECK(linkage_gamma(dists, Linkage::Max) == 5.0);
    CHECK(linkage_gamma(std::vector<double>{7.0}, Linkage::Average) == 7.0);
    CHECK_THROWS_AS(linkage_gamma(std::vector<double>{}, Linkage::Single), DomainError);
}

TEST_CASE("merge step picks the cheapest pair") {
    const auto pts = line_points({0.0, 1.0, 3.0});
    const std::vector<std::vector<std::size_t>> singletons{{0}, {1}, {2}};
    const MergeStep step = linkage_merge_step(pts, singletons, Linkage::Single);
    CHECK(step.i == 0);
    CHECK(step.j == 1);
    CHECK(step.loss == 1.0);
}

TEST_CASE("merge step on non-singleton clusters aggregates all cross distances") {
    const auto pts = line_points({0.0, 1.0, 10.0});
    const std::vector<std::vector<std::size_t>> clusters{{0, 1}, {2}};
    // Cross distances {10, 9}.
    CHECK(linkage_merge_step(pts, clusters, Linkage::Single).loss == 9.0);
    CHECK(linkage_merge_step(pts, clusters, Linkage::Average).loss == 9.5);
    CHECK(linkage_merge_step(pts, clusters, Linkage::Max).loss == 10.0);
}

TEST_CASE("merge-step ties resolve to the lexicographically smallest pair") {
    // (0,1) and (1,2) both cost 1; the scan keeps (0,1).
    const auto pts = line_points({0.0, 1.0, 2.0});
    const std::vector<std::vector<std::size_t>> singletons{{0}, {1}, {2}};
    const MergeStep step = linkage_merge_step(pts, singletons, Linkage::Single);
    CHECK(step.i == 0);
    CHECK(step.j == 1);
    CHECK(step.loss == 1.0);
}

TEST_CASE("merge step guards") {
    const auto pts = line_points({0.0, 1.0});
    CHECK_THROWS_AS(linkage_merge_step(pts, {{0, 1}}, Linkage::Single), DomainError);
    CHECK_THROWS_AS(linkage_merge_step(pts, {{0}, {}}, Linkage::Single), DomainError);
    CHECK_THROWS_AS(linkage_merge_step(pts, {{0}, {5}}, Linkage::Single), DomainError);
    const std::vector<DataPoint> mixed{DataPoint{0.0}, DataPoint{0.0, 1.0}};
    CHECK_THROWS_AS(linkage_merge_step(mixed, {{0}, {1}}, Linkage::Single), DomainError);
}

TEST_CASE("agglomeration from singletons: collinear points") {
    const auto pts = line_points({0.0, 1.0, 10.0});
    const LinkageResult r = linkage_cluster(pts, Linkage::Single, 2);
    REQUIRE(r.clusters.size() == 2);
    CHECK(r.clusters[0] == std::vector<std::size_t>{0, 1});
    CHECK(r.clusters[1] == std::vector<std::size_t>{2});
    REQUIRE(r.dendrogram.size() == 1);
    CHECK(r.dendrogram[0].i == 0);
    CHECK(r.dendrogram[0].j == 1);
    CHECK(r.dendrogram[0].loss == 1.0);
}

TEST_CASE("agglomeration indices refer to positions after earlier merges") {
    const auto pts = line_points({0.0, 1.0, 10.0, 11.0});
    const LinkageResult r = linkage_cluster(pts, Linkage::Single, 2);
    REQUIRE(r.clusters.size() == 2);
    CHECK(r.clusters[0] == std::vector<std::size_t>{0, 1});
    CHECK(r.clusters[1] == std::vector<std::size_t>{2, 3});
    REQUIRE(r.dendrogram.size() == 2);
    CHECK(r.dendrogram[0].i == 0);
    CHECK(r.dendrogram[0].j == 1);
    CHECK(r.dendrogram[1].i == 1);  // cluster {10} moved up after the erase
    CHECK(r.dendrogram[1].j == 2);
    CHECK(r.dendrogram[1].loss == 1.0);
}

TEST_CASE("agglomeration down to one cluster and guards") {
    const auto pts = line_points({0.0, 5.0, 6.0});
    const LinkageResult r = linkage_cluster(pts, Linkage::Max, 1);
    REQUIRE(r.clusters.size() == 1);
    CHECK(r.clusters[0].size() == 3);
    CHECK(r.dendrogram.size() == 2);
    CHECK_THROWS_AS(linkage_cluster(pts, Linkage::Single, 0), DomainError);
    CHECK_THROWS_AS(linkage_cluster(pts, Linkage::Single, 4), DomainError);
    CHECK_THROWS_AS(linkage_cluster(std::vector<DataPoint>{}, Linkage::Single, 1), DomainError);
}

TEST_CASE("within-cluster spread: worked 1-D example") {
    const auto pts = line_points({0.0, 2.0});
    const std::vector<int> one_cluster{0, 0};
    // Pairwise form: (1/2) * (4 + 4) = 4; centroid form: 2*1 + 2*1 = 4.
    CHECK(kmeans_within_loss(pts, one_cluster, 1) == 4.0);
    const std::vector<int> split{0, 1};
    CHECK(kmeans_within_loss(pts, split, 2) == 0.0);
}

TEST_CASE("pair-mean loss and its relation to the within spread") {
    const auto pts = line_points({0.0, 2.0});
    const std::vector<int> one_cluster{0, 0};
    CHECK(kmeans_pair_mean_loss(pts, one_cluster, 1) == 4.0);
    const std::vector<int> split{0, 1};
    CHECK(kmeans_pair_mean_loss(pts, split, 2) == 0.0);

    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 20);
        const int k = 1 + static_cast<int>(rng() % 4);
        const std::size_t dim = 1 + rng() % 3;
        std::vector<DataPoint> pts2;
        std::vector<int> assign;
        for (int i = 0; i < m; ++i) {
            DataPoint p;
            for (std::size_t d = 0; d < dim; ++d) p.push_back(coord(rng));
            pts2.push_back(p);
            assign.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(k)));
        }
        const double within = kmeans_within_loss(pts2, assign, k);  // self-checks both forms
        const double pair_mean = kmeans_pair_mean_loss(pts2, assign, k);
        const std::size_t pairs = ordered_pair_count(assign);
        const double expected = pair_mean * static_cast<double>(pairs) / 2.0;
        CHECK(within == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("within-spread guards") {
    const auto pts = line_points({0.0, 2.0});
    CHECK_THROWS_AS(kmeans_within_loss(pts, std::vector<int>{0}, 1), DomainError);
    CHECK_THROWS_AS(kmeans_within_loss(pts, std::vector<int>{0, 5}, 2), DomainError);
    CHECK_THROWS_AS(kmeans_within_loss(pts, std::vector<int>{0, 0}, 0), DomainError);
}

TEST_CASE("closest-mean assignment: nearest centroid, skipping empty clusters") {
    const auto pts = line_points({0.0, 10.0});
    const std::vector<int> assign{0, 1};
    CHECK(kmeans_assign_point(DataPoint{4.0}, pts, assign, 2) == 0);
    CHECK(kmeans_assign_point(DataPoint{6.0}, pts, assign, 2) == 1);
    CHECK(kmeans_assign_point(DataPoint{5.0}, pts, assign, 2) == 0);  // tie: lowest index
    // Cluster 2 is empty and must be skipped even for a far query.
    CHECK(kmeans_assign_point(DataPoint{100.0}, pts, assign, 3) == 1);
    CHECK_THROWS_AS(
        kmeans_assign_point(DataPoint{0.0}, std::vector<DataPoint>{}, std::vector<int>{}, 2),
        DomainError);
}

TEST_CASE("pairwise assignment: joining an empty cluster adds zero spread") {
    const auto pts = line_points({0.0});
    const std::vector<int> assign{0};
    CHECK(kmeans_assign_point(DataPoint{3.0}, pts, assign, 2, KmeansRule::PairwiseW) == 1);
    // At the occupied point itself both options add zero; the scan keeps 0.
    CHECK(kmeans_assign_point(DataPoint{0.0}, pts, assign, 2, KmeansRule::PairwiseW) == 0);
}

TEST_CASE("pairwise assignment matches a brute-force added-spread scan") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 12);
        const int k = 1 + static_cast<int>(rng() % 4);
        std::vector<DataPoint> pts;
        std::vector<int> assign;
        for (int i = 0; i < m; ++i) {
            pts.push_back(DataPoint{coord(rng), coord(rng)});
            assign.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(k)));
        }
        const DataPoint x0{coord(rng), coord(rng)};

        int best = 0;
        double best_added = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c) {
            double added = 0.0;
            for (int i = 0; i < m; ++i) {
                if (assign[static_cast<std::size_t>(i)] != c) continue;
                const double dx = x0[0] - pts[static_cast<std::size_t>(i)][0];
                const double dy = x0[1] - pts[static_cast<std::size_t>(i)][1];
                added += dx * dx + dy * dy;
            }
            if (added < best_added) {
                best_added = added;
                best = c;
            }
        }
        CHECK(kmeans_assign_point(x0, pts, assign, k, KmeansRule::PairwiseW) == best);
    }
}

TEST_CASE("seeded runs recover two separated blobs") {
    const auto pts = line_points({0.0, 0.5, 1.0, 10.0, 10.5, 11.0});
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        for (const KmeansRule rule : {KmeansRule::ClosestMean, KmeansRule::PairwiseW}) {
            const KmeansResult r = kmeans_run(pts, 2, seed, rule);
            CHECK(r.converged);
            CHECK(r.passes >= 1);
            REQUIRE(r.assignment.size() == 6);
            const int left = r.assignment[0];
            const int right = r.assignment[3];
            CHECK(left != right);
            CHECK(r.assignment[1] == left);
            CHECK(r.assignment[2] == left);
            CHECK(r.assignment[4] == right);
            CHECK(r.assignment[5] == right);
        }
    }
}

TEST_CASE("closest-mean loss history is nonincreasing and seed-deterministic") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> coord(-20.0, 20.0);
    std::vector<DataPoint> pts;
    for (int i = 0; i < 40; ++i) pts.push_back(DataPoint{coord(rng), coord(rng)});

    const KmeansResult a = kmeans_run(pts, 4, 11);
    const KmeansResult b = kmeans_run(pts, 4, 11);
    CHECK(a.assignment == b.assignment);
    CHECK(a.loss_history == b.loss_history);
    CHECK(a.passes == b.passes);
    CHECK(a.converged);
    REQUIRE(a.loss_history.size() == static_cast<std::size_t>(a.passes) + 1);
    for (std::size_t i = 1; i < a.loss_history.size(); ++i) {
        CHECK(a.loss_history[i] <= a.loss_history[i - 1] + 1e-9);
    }
}

TEST_CASE("pairwise-rule run records the within spread per pass") {
    const auto pts = line_points({0.0, 1.0, 9.0, 10.0});
    const KmeansResult r = kmeans_run(pts, 2, 3, KmeansRule::PairwiseW);
    CHECK(r.converged);
    REQUIRE(!r.loss_history.empty());
    CHECK(r.loss_history.back() ==
          doctest::Approx(kmeans_within_loss(pts, r.assignment, 2)).epsilon(1e-12));
}

TEST_CASE("seeded-run guards") {
    const auto pts = line_points({0.0, 1.0});
    CHECK_THROWS_AS(kmeans_run(pts, 0, 1), DomainError);
    CHECK_THROWS_AS(kmeans_run(pts, 3, 1), DomainError);
    CHECK_THROWS_AS(kmeans_run(std::vector<DataPoint>{}, 1, 1), DomainError);
    CHECK_THROWS_AS(kmeans_run(pts, 1, 1, KmeansRule::ClosestMean, 0), DomainError);
}
