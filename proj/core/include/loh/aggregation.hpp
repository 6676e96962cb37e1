#ifndef LOH_AGGREGATION_HPP
#define LOH_AGGREGATION_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "loh/core.hpp"

namespace loh {

// The four interpretations of the recursive aggregation scheme
// TOT(G) = norm(agg(|G|), |G|), where agg folds scale(x) with plus:
//
//   id       plus  scale    norm(x, i)
//   Mean     +     x        x / i
//   Rms      +     x^2      sqrt(x / i)      (inputs must be nonnegative)
//   Max      max   x        x
//   GeoMean  *     x        x^(1/i)          (inputs must be positive)
//
// Rms rejects negative inputs: squaring reverses order there, which breaks
// the monotony axiom, so its domain is the nonnegative reals.
enum class RecursiveInterp { Mean, Rms, Max, GeoMean };

// Fold order. Sequential folds in the given order, Canonical sorts a copy
// ascending first (bitwise reproducible under permutation), Chunked folds
// fixed-size blocks then combines (the "fast" reduction order).
enum class Reduction { Sequential, Canonical, Chunked };

double recursive_tot(std::span<const double> g, RecursiveInterp interp,
                     Reduction order = Reduction::Sequential);

// Nearest-rank percentile on the sorted multiset: element at index
// floor(p*n/100) + 1 (1-based), clamped to [1, n]. p = 50 uses the median
// convention instead: middle element, or the midpoint of the two middle
// elements when |G| is even.
double percentile_agg(std::span<const double> g, double p);

// A multiset-to-real operator satisfying the Monotony, Idempotence and
// Tautology axioms. Closed set: any percentile, the median, and the four
// recursive interpretations.
class ProperAggregator {
public:
    enum class Id { Percentile, Median, Recursive };

    static ProperAggregator percentile(double p);
    static ProperAggregator median();
    static ProperAggregator recursive(RecursiveInterp interp);
    static ProperAggregator mean() { return recursive(RecursiveInterp::Mean); }
    static ProperAggregator rms() { return recursive(RecursiveInterp::Rms); }
    static ProperAggregator max() { return recursive(RecursiveInterp::Max); }
    static ProperAggregator geomean() { return recursive(RecursiveInterp::GeoMean); }

    Id id() const { return id_; }
    double p() const { return p_; }
    RecursiveInterp interp() const { return interp_; }

    double aggregate(std::span<const double> g, Reduction order = Reduction::Sequential) const;
    double operator()(std::span<const double> g) const { return aggregate(g); }

private:
    Id id_ = Id::Median;
    double p_ = 50.0;
    RecursiveInterp interp_ = RecursiveInterp::Mean;
};

// Top-level combination of per-aspect incongruities, isotone in every
// argument. The optional regularization value enters as one extra element.
class TotalAggregator {
public:
    enum class Id { Passthrough, Sum, WeightedSum, OneMinusProductOfComplements, SumPlusReg };

    static TotalAggregator passthrough();
    static TotalAggregator sum();
    static TotalAggregator weighted_sum(std::vector<double> weights);
    static TotalAggregator one_minus_product_of_complements();
    static TotalAggregator sum_plus_reg();

    Id id() const { return id_; }
    const std::vector<double>& weights() const { return weights_; }

    double apply(std::span<const double> aspect_values, std::optional<double> reg) const;

private:
    explicit TotalAggregator(Id id) : id_(id) {}

    Id id_;
    std::vector<double> weights_;
};

using AggregateFn = std::function<double(std::span<const double>)>;

AggregateFn to_fn(const ProperAggregator& agg);

// Intentionally violates the aggregation axioms (Tautology and Idempotence);
// exists to exercise the checker and the CLI's nonzero exit path.
AggregateFn min_minus_one_aggregator();

struct AxiomWitness {
    std::string detail;
    std::vector<double> input;
    double expected = 0.0;
    double actual = 0.0;
};

struct AxiomCheckResult {
    bool pass = true;
    std::optional<AxiomWitness> witness;
};

struct AxiomCheckReport {
    AxiomCheckResult monotony;
    AxiomCheckResult idempotence;
    AxiomCheckResult tautology;

    bool all_pass() const { return monotony.pass && idempotence.pass && tautology.pass; }
};

struct AxiomCheckOptions {
    int trials = 1000;
    int max_size = 50;
    std::uint64_t seed = 1;
    double lo = -1000.0;
    double hi = 1000.0;
    // Slack for Idempotence and for weak Monotony comparisons. Tautology is
    // compared exactly.
    double tolerance = 1e-9;
};

// Randomized oracle for the three axioms. Monotony draws an element-wise
// dominating isomorphic copy (strictly dominating on half the trials and
// asserting a strict increase there); Idempotence re-aggregates G + {TOT(G)};
// Tautology checks singletons. First counterexample per axiom is reported.
AxiomCheckReport check_proper_axioms(const AggregateFn& agg, const AxiomCheckOptions& opt = {});

struct OrderInvarianceReport {
    bool pass = true;
    double max_rel_discrepancy = 0.0;
};

// Re-aggregates `permutations` random shuffles of g. With canonical = false
// the discrepancy must stay within rel_tol; with canonical = true the
// canonical reduction must reproduce identical bits on every shuffle.
OrderInvarianceReport check_order_invariance(std::span<const double> g, RecursiveInterp interp,
                                             int permutations, std::uint64_t seed,
                                             double rel_tol = 1e-9, bool canonical = false);

}  // namespace loh

#endif
