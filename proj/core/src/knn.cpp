#include "loh/learners/knn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace loh {

namespace {

double sq_dist(const DataPoint& a, const DataPoint& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

struct ConstantFit {
    int label = 0;       // winning constant
    double error = 0.0;  // its error rate
    double r0 = 0.0;     // error rate of constant 0
    double r1 = 0.0;     // error rate of constant 1
};

ConstantFit fit_constants(const LabeledDataset& s, const std::vector<std::size_t>& focus) {
    double ones = 0.0;
    for (auto i : focus) ones += s.ys[i];
    const double k = static_cast<double>(focus.size());
    ConstantFit fit;
    fit.r0 = ones / k;
    fit.r1 = (k - ones) / k;
    fit.label = fit.r1 < fit.r0 ? 1 : 0;
    fit.error = std::min(fit.r0, fit.r1);
    return fit;
}

}  // namespace

std::vector<std::size_t> knn_focus(const DataPoint& x, const LabeledDataset& s, int k) {
    s.validate();
    if (x.size() != s.x_dim) throw DomainError("query dimension does not match dataset");
    if (k < 1 || static_cast<std::size_t>(k) > s.size()) {
        throw DomainError("neighborhood size must lie in [1, m]");
    }
    std::vector<std::size_t> order(s.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> d(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) d[i] = sq_dist(x, s.xs[i]);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (d[a] != d[b]) return d[a] < d[b];
        return a < b;
    });
    order.resize(static_cast<std::size_t>(k));
    return order;
}

Decision knn_predict(const DataPoint& x, const LabeledDataset& s, int k) {
    s.validate_labels({0.0, 1.0});
    const auto focus = knn_focus(x, s, k);
    const auto fit = fit_constants(s, focus);

    Decision decision;
    decision.payload = fit.label;
    decision.loss = fit.error;
    decision.trace = {
        {"Focusing", {{"k", static_cast<double>(k)}, {"m", static_cast<double>(s.size())}}},
        {"Fitting", {{"r0", fit.r0}, {"r1", fit.r1}}},
        {"Optimal selection", {{"label", static_cast<double>(fit.label)}, {"error_rate", fit.error}}},
    };
    return decision;
}

double ada_threshold(double n, int k, double delta, double c1) {
    if (n < 1.0) throw DomainError("sample size must be at least 1");
    if (k < 1) throw DomainError("neighborhood size must be positive");
    if (delta <= 0.0 || delta > 1.0) throw DomainError("confidence level must lie in (0, 1]");
    if (c1 <= 0.0) throw DomainError("threshold scale must be positive");
    return c1 * std::sqrt((std::log(n) + std::log(1.0 / delta)) / static_cast<double>(k));
}

Decision ada_knn_predict(const DataPoint& x, const LabeledDataset& s, int k0, double delta,
                         double c1, AdaRule rule) {
    s.validate_labels({0.0, 1.0});
    const int n = static_cast<int>(s.size());
    if (k0 < 1 || k0 > n) throw DomainError("initial neighborhood size must lie in [1, m]");

    Decision decision;
    int stopped_at = 0;
    int last_label = 0;
    double last_error = 0.0;
    for (int k = k0; k <= n; ++k) {
        decision.trace.push_back({"Generating parameters", {{"k", static_cast<double>(k)}}});
        const auto focus = knn_focus(x, s, k);
        const auto fit = fit_constants(s, focus);
        const double threshold = ada_threshold(static_cast<double>(n), k, delta, c1);
        last_label = fit.label;
        last_error = fit.error;

        TraceStep row{"Proper training",
                      {{"k", static_cast<double>(k)},
                       {"label", static_cast<double>(fit.label)},
                       {"error_rate", fit.error},
                       {"threshold", threshold}}};
        if (rule == AdaRule::ProseBias) {
            const double bias = (1.0 - fit.error) - 0.5;  // prevalent-class margin over 1/2
            row.values["bias"] = bias;
            decision.trace.push_back(row);
            if (bias >= threshold) {
                stopped_at = k;
                break;
            }
        } else {
            decision.trace.push_back(row);
            if (fit.error > threshold) {
                stopped_at = k;
                break;
            }
        }
    }

    // Stepwise rule: a decision only counts when the scan broke off early;
    // the bias rule decides whenever it stopped at all.
    const bool decided =
        rule == AdaRule::ProseBias ? stopped_at > 0 : stopped_at > 0 && stopped_at < n;
    if (decided) {
        decision.payload = last_label;
        decision.loss = last_error;
        decision.trace.push_back({"Combining decisions",
                                  {{"k", static_cast<double>(stopped_at)},
                                   {"label", static_cast<double>(last_label)}}});
    } else {
        decision.abstained = true;
        decision.trace.push_back({"Combining decisions", {{"abstain", 1.0}}});
    }
    return decision;
}

double hoeffding_weight(double p, int k) {
    if (p < 0.0 || p > 1.0) throw DomainError("frequency must lie in [0, 1]");
    if (k < 1) throw DomainError("neighborhood size must be positive");
    const double bias = p - 0.5;
    return 2.0 * std::exp(-2.0 * static_cast<double>(k) * bias * bias);
}

Decision hoeffding_knn_predict(const DataPoint& x, const LabeledDataset& s, int k0) {
    s.validate_labels({0.0, 1.0});
    const int m = static_cast<int>(s.size());
    if (k0 < 1 || k0 > m - 1) throw DomainError("initial neighborhood size must lie in [1, m-1]");

    Decision decision;
    int best_k = 0;
    double best_w = 0.0;
    for (int k = k0; k <= m - 1; ++k) {
        const auto focus = knn_focus(x, s, k);
        const auto fit = fit_constants(s, focus);
        const double p = 1.0 - fit.error;  // prevalent-class frequency
        const double w = hoeffding_weight(p, k);
        decision.trace.push_back(
            {"Calculating weight", {{"k", static_cast<double>(k)}, {"p", p}, {"W", w}}});
        if (best_k == 0 || w < best_w) {
            best_k = k;
            best_w = w;
        }
    }

    const auto focus = knn_focus(x, s, best_k);
    const auto fit = fit_constants(s, focus);
    decision.payload = fit.label;
    decision.loss = best_w;
    return decision;
}

}  // namespace loh
