#include "loh/learners/dataset.hpp"

#include <cmath>

namespace loh {

void LabeledDataset::add(DataPoint x, double y) {
    if (x_dim == 0) x_dim = x.size();
    if (x.size() != x_dim) throw DomainError("dataset rows must share one dimension");
    xs.push_back(std::move(x));
    ys.push_back(y);
}

void LabeledDataset::validate() const {
    if (x_dim == 0) throw DomainError("dataset has no feature dimension");
    if (xs.size() != ys.size()) throw DomainError("feature and label counts differ");
    for (const auto& x : xs) {
        if (x.size() != x_dim) throw DomainError("dataset rows must share one dimension");
    }
}

void LabeledDataset::validate_labels(std::initializer_list<double> allowed) const {
    for (double y : ys) {
        bool ok = false;
        for (double a : allowed) ok = ok || y == a;
        if (!ok) throw DomainError("dataset label outside the expected label set");
    }
}

double erm_loss(const std::function<double(const DataPoint&)>& h, const LabeledDataset& s) {
    s.validate();
    if (s.size() == 0) throw DomainError("empirical risk over an empty dataset");
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        sum += std::fabs(h(s.xs[i]) - s.ys[i]);
    }
    return sum / static_cast<double>(s.size());
}

}  // namespace loh
