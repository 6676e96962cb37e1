#ifndef LOH_LEARNERS_DATASET_HPP
#define LOH_LEARNERS_DATASET_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "loh/core.hpp"
#include "loh/theory.hpp"

namespace loh {

struct LabeledDataset {
    std::vector<DataPoint> xs;
    std::vector<double> ys;
    std::size_t x_dim = 0;

    std::size_t size() const { return xs.size(); }
    void add(DataPoint x, double y);

    // Throws DomainError unless every row matches x_dim.
    void validate() const;
    // Additionally require labels drawn from the given set.
    void validate_labels(std::initializer_list<double> allowed) const;
};

// One step of a learner's procedure, in the procedure vocabulary
// (Focusing, Fitting, Optimal selection, wrapper steps).
struct TraceStep {
    std::string step;
    std::map<std::string, double> values;

    bool operator==(const TraceStep&) const = default;
};

using LinearModel = LinearForm;

// Uniform learner outcome. payload holds a class label or cluster index
// (int), a fitted constant (double), a linear model, or a full cluster
// assignment; monostate means no defined decision.
struct Decision {
    std::variant<std::monostate, int, double, LinearModel, std::vector<int>> payload;
    double loss = 0.0;
    bool abstained = false;
    std::vector<TraceStep> trace;
};

// Mean absolute prediction error (1/m) * sum |h(x_i) - y_i|.
double erm_loss(const std::function<double(const DataPoint&)>& h, const LabeledDataset& s);

}  // namespace loh

#endif
