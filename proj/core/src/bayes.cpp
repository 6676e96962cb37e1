#include "loh/learners/bayes.hpp"

namespace loh {

BayesBreakdown naive_bayes_delta(int label, const DataPoint& z, const LabeledDataset& s) {
    s.validate();
    s.validate_labels({0.0, 1.0});
    if (label != 0 && label != 1) throw DomainError("class label must be 0 or 1");
    if (z.size() != s.x_dim) throw DomainError("query dimension does not match dataset");
    if (s.size() == 0) throw DomainError("naive bayes needs at least one row");

    BayesBreakdown out;
    out.per_coordinate_error.resize(s.x_dim, 0.0);
    out.empty_coordinate.resize(s.x_dim, false);
    double survival = 1.0;
    for (std::size_t j = 0; j < s.x_dim; ++j) {
        std::size_t matched = 0;
        std::size_t mismatched = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s.xs[i][j] != z[j]) continue;
            ++matched;
            if (s.ys[i] != static_cast<double>(label)) ++mismatched;
        }
        if (matched == 0) {
            out.empty_coordinate[j] = true;
        } else {
            out.per_coordinate_error[j] =
                static_cast<double>(mismatched) / static_cast<double>(matched);
        }
        survival *= 1.0 - out.per_coordinate_error[j];
    }
    out.delta = 1.0 - survival;
    return out;
}

Decision naive_bayes_predict(const DataPoint& z, const LabeledDataset& s) {
    Decision decision;
    double deltas[2] = {0.0, 0.0};
    for (int c = 0; c < 2; ++c) {
        const BayesBreakdown b = naive_bayes_delta(c, z, s);
        deltas[c] = b.delta;
        for (std::size_t j = 0; j < b.per_coordinate_error.size(); ++j) {
            decision.trace.push_back({"Proper training",
                                      {{"label", static_cast<double>(c)},
                                       {"coordinate", static_cast<double>(j + 1)},
                                       {"error_rate", b.per_coordinate_error[j]},
                                       {"empty_focus", b.empty_coordinate[j] ? 1.0 : 0.0}}});
        }
    }
    const int winner = deltas[1] < deltas[0] ? 1 : 0;
    decision.payload = winner;
    decision.loss = deltas[winner];
    decision.trace.push_back({"Optimal selection",
                              {{"delta_0", deltas[0]},
                               {"delta_1", deltas[1]},
                               {"label", static_cast<double>(winner)}}});
    return decision;
}

}  // namespace loh
