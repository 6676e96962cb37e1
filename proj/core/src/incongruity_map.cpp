#include "loh/learners/incongruity_map.hpp"

#include <utility>

#include "loh/learners/linear.hpp"

namespace loh {

namespace {

IncongruityTheory single_aspect(std::string name, ConditionNode condition, DeviationFn deviation,
                                ProperAggregator aggregator, std::string label) {
    return IncongruityTheory(std::move(name),
                             {Aspect{std::move(condition), deviation, aggregator, std::move(label)}});
}

double pointwise_total(const HypothesisSpec& h, const FormulaSet& obs, DeviationFn deviation,
                       const char* name) {
    const auto theory =
        single_aspect(name, cond::pointwise(), deviation, ProperAggregator::mean(), "fit");
    return total_incongruity(h, obs, theory, RegularizationTerm::none(),
                             TotalAggregator::passthrough())
        .total;
}

}  // namespace

FormulaSet dataset_formulas(const LabeledDataset& s, MetricDef x_metric, MetricDef y_metric) {
    s.validate();
    if (s.x_dim == 0) throw DomainError("dataset dimension must be positive");
    FormulaSet obs(s.x_dim, std::move(x_metric), std::move(y_metric));
    for (std::size_t i = 0; i < s.size(); ++i) {
        obs.add(make_formula(observed(), s.xs[i], Feedback(s.ys[i])));
    }
    return obs;
}

double erm_incongruity(const HypothesisSpec& h, const LabeledDataset& s) {
    const auto obs = dataset_formulas(s, MetricDef::euclidean(MetricSpace::X),
                                      MetricDef::absolute(MetricSpace::Y));
    return pointwise_total(h, obs, DeviationFn::rho_y(), "point-wise fit");
}

double constant_fit_incongruity(double c, const LabeledDataset& s) {
    return erm_incongruity(HypothesisSpec::constant(c), s);
}

double naive_bayes_incongruity(int label, const DataPoint& z, const LabeledDataset& s) {
    if (label != 0 && label != 1) throw DomainError("class label must be 0 or 1");
    if (z.size() != s.x_dim) throw DomainError("query dimension does not match dataset");
    const auto obs = dataset_formulas(s, MetricDef::euclidean(MetricSpace::X),
                                      MetricDef::absolute(MetricSpace::Y));

    std::vector<Aspect> aspects;
    aspects.reserve(s.x_dim);
    for (std::size_t j = 1; j <= s.x_dim; ++j) {
        aspects.push_back(Aspect{
            cond::all_of({cond::modality_is(1, hypothetical()), cond::modality_is(2, observed()),
                          cond::coord_equal(static_cast<int>(j))}),
            DeviationFn::rho_y(), ProperAggregator::mean(),
            "coordinate " + std::to_string(j)});
    }
    const IncongruityTheory theory("per-coordinate match", std::move(aspects));

    const auto h = HypothesisSpec::explicit_instances(
        {make_formula(hypothetical(), z, Feedback(static_cast<double>(label)))}, "class constant");
    return total_incongruity(h, obs, theory, RegularizationTerm::none(),
                             TotalAggregator::one_minus_product_of_complements())
        .total;
}

double logistic_incongruity(const LinearForm& f, const LabeledDataset& s, double floor) {
    const auto obs = dataset_formulas(s, MetricDef::euclidean(MetricSpace::X),
                                      MetricDef::absolute(MetricSpace::Y));
    auto h = HypothesisSpec::point_function(
        [f](const DataPoint& x) { return Feedback(sigmoid(linear_eval(f, x))); },
        "sigmoid of linear");
    return pointwise_total(h, obs, DeviationFn::log_rho_y(floor), "log fit");
}

double svm_incongruity(const LinearForm& f, const LabeledDataset& s, double alpha) {
    const auto obs =
        dataset_formulas(s, MetricDef::euclidean(MetricSpace::X), MetricDef::sign_agreement());
    const auto theory = single_aspect("sign agreement", cond::pointwise(), DeviationFn::rho_y(),
                                      ProperAggregator::mean(), "margin");
    return total_incongruity(HypothesisSpec::linear(f.w, f.b), obs, theory,
                             RegularizationTerm::squared_weight_norm(alpha),
                             TotalAggregator::sum_plus_reg())
        .total;
}

double svr_incongruity(const LinearForm& f, const LabeledDataset& s, double epsilon,
                       double lambda) {
    const auto obs = dataset_formulas(s, MetricDef::euclidean(MetricSpace::X),
                                      MetricDef::epsilon_insensitive(epsilon));
    const auto theory = single_aspect("insensitive tube", cond::pointwise(), DeviationFn::rho_y(),
                                      ProperAggregator::mean(), "tube");
    // The mean aspect scaled back by m yields the unnormalized sum.
    return total_incongruity(HypothesisSpec::linear(f.w, f.b), obs, theory,
                             RegularizationTerm::squared_weight_norm(lambda),
                             TotalAggregator::weighted_sum({static_cast<double>(s.size())}))
        .total;
}

double ridge_incongruity(const LinearForm& f, const LabeledDataset& s, double alpha) {
    const auto obs = dataset_formulas(s, MetricDef::euclidean(MetricSpace::X),
                                      MetricDef::absolute(MetricSpace::Y));
    const auto theory = single_aspect("squared point-wise fit", cond::pointwise(),
                                      DeviationFn::rho_y_squared(), ProperAggregator::mean(),
                                      "squared fit");
    return total_incongruity(HypothesisSpec::linear(f.w, f.b), obs, theory,
                             RegularizationTerm::squared_weight_norm(alpha),
                             TotalAggregator::sum_plus_reg())
        .total;
}

double linkage_incongruity(const std::vector<DataPoint>& points,
                           const std::vector<std::vector<std::size_t>>& clusters, std::size_t i,
                           std::size_t j, Linkage linkage) {
    if (i == j || i >= clusters.size() || j >= clusters.size()) {
        throw DomainError("merge needs two distinct existing clusters");
    }
    if (clusters[i].empty() || clusters[j].empty()) {
        throw DomainError("merge needs nonempty clusters");
    }
    if (points.empty()) throw DomainError("no points to cluster");
    const std::size_t dim = points.front().size();

    FormulaSet obs(1, MetricDef::absolute(MetricSpace::X), MetricDef::euclidean(MetricSpace::Y));
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        for (auto p : clusters[c]) {
            if (p >= points.size() || points[p].size() != dim) {
                throw DomainError("cluster member index or dimension out of range");
            }
            obs.add(make_formula(observed(), {static_cast<double>(c)}, Feedback(points[p])));
        }
    }
    // The merge hypothesis: cluster j's members re-labeled as members of i.
    std::vector<Formula> instances;
    instances.reserve(clusters[j].size());
    for (auto p : clusters[j]) {
        instances.push_back(
            make_formula(hypothetical(), {static_cast<double>(i)}, Feedback(points[p])));
    }

    ProperAggregator agg = ProperAggregator::mean();
    switch (linkage) {
        case Linkage::Single: agg = ProperAggregator::percentile(0.0); break;
        case Linkage::Average: agg = ProperAggregator::mean(); break;
        case Linkage::Max: agg = ProperAggregator::max(); break;
    }
    const auto theory =
        single_aspect("cluster merge", cond::pointwise(), DeviationFn::rho_y(), agg, "merge");
    return total_incongruity(HypothesisSpec::explicit_instances(std::move(instances), "merge"),
                             obs, theory, RegularizationTerm::none(),
                             TotalAggregator::passthrough())
        .total;
}

double kmeans_incongruity(const std::vector<DataPoint>& points, const std::vector<int>& assignment,
                          int k) {
    if (points.size() != assignment.size()) throw DomainError("assignment length mismatch");
    if (k < 1) throw DomainError("cluster count must be positive");
    if (points.empty()) throw DomainError("no points to cluster");
    const std::size_t dim = points.front().size();

    FormulaSet obs(1, MetricDef::absolute(MetricSpace::X), MetricDef::euclidean(MetricSpace::Y));
    for (std::size_t p = 0; p < points.size(); ++p) {
        if (assignment[p] < 0 || assignment[p] >= k) throw DomainError("assignment out of range");
        if (points[p].size() != dim) throw DomainError("point dimension mismatch");
        obs.add(make_formula(observed(), {static_cast<double>(assignment[p])}, Feedback(points[p])));
    }
    // Symmetric condition: every unordered same-cluster pair collides twice.
    const auto theory = single_aspect("within-cluster spread", cond::x_equal(),
                                      DeviationFn::rho_y_squared(), ProperAggregator::mean(),
                                      "spread");
    return total_incongruity(HypothesisSpec::none(), obs, theory, RegularizationTerm::none(),
                             TotalAggregator::passthrough())
        .total;
}

}  // namespace loh
