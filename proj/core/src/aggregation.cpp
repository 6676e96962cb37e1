#include "loh/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace loh {

namespace {

constexpr std::size_t kChunk = 1024;

void require_nonempty(std::span<const double> g) {
    if (g.empty()) throw DomainError("aggregation over an empty multiset is undefined");
}

// The geometric mean accumulates log terms rather than a raw product: a raw
// product saturates to inf past ~100 large values, and whether it saturates
// would depend on the element order.
double fold(std::span<const double> g, RecursiveInterp interp) {
    double acc = interp == RecursiveInterp::Max ? g[0] : 0.0;
    for (double x : g) {
        switch (interp) {
            case RecursiveInterp::Mean: acc += x; break;
            case RecursiveInterp::Rms: acc += x * x; break;
            case RecursiveInterp::Max: acc = std::max(acc, x); break;
            case RecursiveInterp::GeoMean: acc += std::log(x); break;
        }
    }
    return acc;
}

double fold_chunked(std::span<const double> g, RecursiveInterp interp) {
    if (g.size() <= kChunk) return fold(g, interp);
    std::vector<double> partial;
    partial.reserve(g.size() / kChunk + 1);
    for (std::size_t off = 0; off < g.size(); off += kChunk) {
        partial.push_back(fold(g.subspan(off, std::min(kChunk, g.size() - off)), interp));
    }
    // Every partial fold except Max is already a plain sum (values, squares,
    // or logs); combine those additively.
    const RecursiveInterp combine =
        interp == RecursiveInterp::Max ? RecursiveInterp::Max : RecursiveInterp::Mean;
    return fold(partial, combine);
}

double norm_of(double acc, std::size_t n, RecursiveInterp interp) {
    const double count = static_cast<double>(n);
    switch (interp) {
        case RecursiveInterp::Mean: return acc / count;
        case RecursiveInterp::Rms: return std::sqrt(acc / count);
        case RecursiveInterp::Max: return acc;
        case RecursiveInterp::GeoMean: return std::exp(acc / count);
    }
    throw DomainError("unknown recursive interpretation");
}

void check_domain(std::span<const double> g, RecursiveInterp interp) {
    if (interp == RecursiveInterp::Rms) {
        for (double x : g) {
            if (x < 0.0) throw DomainError("rms aggregation requires nonnegative inputs");
        }
    } else if (interp == RecursiveInterp::GeoMean) {
        for (double x : g) {
            if (x <= 0.0) throw DomainError("geomean aggregation requires positive inputs");
        }
    }
}

bool close(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace

double recursive_tot(std::span<const double> g, RecursiveInterp interp, Reduction order) {
    require_nonempty(g);
    check_domain(g, interp);
    // Every interpretation is the identity on a singleton; returning the
    // element keeps TOT({x}) == x bitwise (the log-space geomean would
    // otherwise come back an ulp off).
    if (g.size() == 1) return g[0];
    double acc = 0.0;
    switch (order) {
        case Reduction::Sequential:
            acc = fold(g, interp);
            break;
        case Reduction::Canonical: {
            std::vector<double> sorted(g.begin(), g.end());
            std::sort(sorted.begin(), sorted.end());
            acc = fold(sorted, interp);
            break;
        }
        case Reduction::Chunked:
            acc = fold_chunked(g, interp);
            break;
    }
    return norm_of(acc, g.size(), interp);
}

double percentile_agg(std::span<const double> g, double p) {
    require_nonempty(g);
    if (p < 0.0 || p > 100.0) throw DomainError("percentile must lie in [0, 100]");
    std::vector<double> sorted(g.begin(), g.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    if (p == 50.0) {
        if (n % 2 == 1) return sorted[n / 2];
        return (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
    }
    auto rank = static_cast<long long>(std::floor(p * static_cast<double>(n) / 100.0)) + 1;
    rank = std::clamp(rank, 1LL, static_cast<long long>(n));
    return sorted[static_cast<std::size_t>(rank - 1)];
}

ProperAggregator ProperAggregator::percentile(double p) {
    if (p < 0.0 || p > 100.0) throw DomainError("percentile must lie in [0, 100]");
    ProperAggregator a;
    a.id_ = Id::Percentile;
    a.p_ = p;
    return a;
}

ProperAggregator ProperAggregator::median() {
    ProperAggregator a;
    a.id_ = Id::Median;
    return a;
}

ProperAggregator ProperAggregator::recursive(RecursiveInterp interp) {
    ProperAggregator a;
    a.id_ = Id::Recursive;
    a.interp_ = interp;
    return a;
}

double ProperAggregator::aggregate(std::span<const double> g, Reduction order) const {
    switch (id_) {
        case Id::Percentile: return percentile_agg(g, p_);
        case Id::Median: return percentile_agg(g, 50.0);
        case Id::Recursive: return recursive_tot(g, interp_, order);
    }
    throw DomainError("unknown aggregator");
}

TotalAggregator TotalAggregator::passthrough() { return TotalAggregator(Id::Passthrough); }
TotalAggregator TotalAggregator::sum() { return TotalAggregator(Id::Sum); }

TotalAggregator TotalAggregator::weighted_sum(std::vector<double> weights) {
    if (weights.empty()) throw DomainError("weighted sum needs at least one weight");
    for (double w : weights) {
        if (w < 0.0) throw DomainError("weighted sum weights must be nonnegative");
    }
    TotalAggregator t(Id::WeightedSum);
    t.weights_ = std::move(weights);
    return t;
}

TotalAggregator TotalAggregator::one_minus_product_of_complements() {
    return TotalAggregator(Id::OneMinusProductOfComplements);
}

TotalAggregator TotalAggregator::sum_plus_reg() { return TotalAggregator(Id::SumPlusReg); }

double TotalAggregator::apply(std::span<const double> aspect_values, std::optional<double> reg) const {
    if (aspect_values.empty()) throw DomainError("total aggregation needs at least one aspect");
    switch (id_) {
        case Id::Passthrough:
            if (aspect_values.size() != 1) throw DomainError("passthrough expects exactly one aspect");
            if (reg) throw DomainError("passthrough cannot absorb a regularization term");
            return aspect_values[0];
        case Id::Sum:
        case Id::SumPlusReg: {
            double s = 0.0;
            for (double v : aspect_values) s += v;
            return s + reg.value_or(0.0);
        }
        case Id::WeightedSum: {
            if (weights_.size() != aspect_values.size()) {
                throw DomainError("weighted sum weight count does not match aspect count");
            }
            double s = 0.0;
            for (std::size_t i = 0; i < weights_.size(); ++i) s += weights_[i] * aspect_values[i];
            return s + reg.value_or(0.0);
        }
        case Id::OneMinusProductOfComplements: {
            if (reg) throw DomainError("product-of-complements cannot absorb a regularization term");
            double prod = 1.0;
            for (double v : aspect_values) prod *= 1.0 - v;
            return 1.0 - prod;
        }
    }
    throw DomainError("unknown total aggregator");
}

AggregateFn to_fn(const ProperAggregator& agg) {
    return [agg](std::span<const double> g) { return agg.aggregate(g); };
}

AggregateFn min_minus_one_aggregator() {
    return [](std::span<const double> g) {
        require_nonempty(g);
        return *std::min_element(g.begin(), g.end()) - 1.0;
    };
}

AxiomCheckReport check_proper_axioms(const AggregateFn& agg, const AxiomCheckOptions& opt) {
    if (opt.trials < 1 || opt.max_size < 1) throw DomainError("axiom check needs positive trials and size");
    if (!(opt.lo < opt.hi)) throw DomainError("axiom check needs a nonempty value range");
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> size_dist(1, opt.max_size);
    std::uniform_real_distribution<double> value(opt.lo, opt.hi);
    std::uniform_real_distribution<double> bump(0.1, 5.0);
    std::bernoulli_distribution strict_branch(0.5), drop_bump(0.35);

    AxiomCheckReport rep;
    for (int t = 0; t < opt.trials; ++t) {
        const int n = size_dist(rng);
        std::vector<double> g(static_cast<std::size_t>(n));
        for (auto& v : g) v = value(rng);

        if (rep.tautology.pass) {
            const double x = value(rng);
            const double got = agg(std::span<const double>(&x, 1));
            if (got != x) {
                rep.tautology.pass = false;
                rep.tautology.witness = AxiomWitness{"TOT({x}) != x", {x}, x, got};
            }
        }

        if (rep.idempotence.pass) {
            const double tot = agg(g);
            std::vector<double> extended = g;
            extended.push_back(tot);
            const double tot2 = agg(extended);
            if (!close(tot2, tot, opt.tolerance)) {
                rep.idempotence.pass = false;
                rep.idempotence.witness = AxiomWitness{"TOT(G + {TOT(G)}) != TOT(G)", g, tot, tot2};
            }
        }

        if (rep.monotony.pass) {
            const bool strict = strict_branch(rng);
            std::vector<double> g2 = g;
            for (auto& v : g2) {
                double b = bump(rng);
                if (!strict && drop_bump(rng)) b = 0.0;
                v += b;
            }
            const double t1 = agg(g);
            const double t2 = agg(g2);
            const double slack = opt.tolerance * std::max({1.0, std::fabs(t1), std::fabs(t2)});
            const bool weak_ok = t2 >= t1 - slack;
            const bool strict_ok = !strict || t2 > t1;
            if (!weak_ok || !strict_ok) {
                rep.monotony.pass = false;
                rep.monotony.witness = AxiomWitness{
                    strict ? "strictly dominating copy did not strictly increase TOT"
                           : "dominating copy decreased TOT",
                    g, t1, t2};
            }
        }

        if (!rep.monotony.pass && !rep.idempotence.pass && !rep.tautology.pass) break;
    }
    return rep;
}

OrderInvarianceReport check_order_invariance(std::span<const double> g, RecursiveInterp interp,
                                             int permutations, std::uint64_t seed,
                                             double rel_tol, bool canonical) {
    require_nonempty(g);
    if (permutations < 1) throw DomainError("order-invariance check needs at least one permutation");
    const Reduction order = canonical ? Reduction::Canonical : Reduction::Sequential;
    const double reference = recursive_tot(g, interp, order);
    std::mt19937_64 rng(seed);
    std::vector<double> shuffled(g.begin(), g.end());

    OrderInvarianceReport rep;
    for (int i = 0; i < permutations; ++i) {
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const double tot = recursive_tot(shuffled, interp, order);
        if (canonical) {
            if (tot != reference) {
                rep.pass = false;
                rep.max_rel_discrepancy = 1.0;
            }
            continue;
        }
        const double scale = std::max({1.0, std::fabs(reference), std::fabs(tot)});
        const double rel = std::fabs(tot - reference) / scale;
        rep.max_rel_discrepancy = std::max(rep.max_rel_discrepancy, rel);
        if (rel > rel_tol) rep.pass = false;
    }
    return rep;
}

}  // namespace loh
