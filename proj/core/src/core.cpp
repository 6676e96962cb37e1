#include "loh/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace loh {

Feedback::Feedback(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw DomainError("feedback must hold at least one value");
}

double Feedback::scalar() const {
    if (values_.size() != 1) throw DomainError("feedback is not a scalar");
    return values_[0];
}

void TravelTimeTable::validate() const {
    const std::size_t n = locations.size();
    if (n == 0) throw SchemaError("travel table has no locations");
    if (minutes.size() != n) throw SchemaError("travel table row count does not match location count");
    for (std::size_t i = 0; i < n; ++i) {
        if (minutes[i].size() != n) throw SchemaError("travel table is not square");
        if (minutes[i][i] != 0.0) throw SchemaError("travel table diagonal must be zero");
        for (std::size_t j = 0; j < n; ++j) {
            if (minutes[i][j] != minutes[j][i]) throw SchemaError("travel table must be symmetric");
            if (minutes[i][j] < 0.0) throw SchemaError("travel times must be nonnegative");
        }
    }
}

int TravelTimeTable::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < locations.size(); ++i) {
        if (locations[i] == name) return static_cast<int>(i);
    }
    return -1;
}

MetricDef MetricDef::euclidean(MetricSpace applies_to) { return MetricDef(MetricId::Euclidean, applies_to); }
MetricDef MetricDef::absolute(MetricSpace applies_to) { return MetricDef(MetricId::Absolute, applies_to); }
MetricDef MetricDef::discrete01(MetricSpace applies_to) { return MetricDef(MetricId::Discrete01, applies_to); }

MetricDef MetricDef::sign_agreement() { return MetricDef(MetricId::SignAgreement, MetricSpace::Y); }

MetricDef MetricDef::epsilon_insensitive(double epsilon) {
    if (epsilon < 0.0) throw DomainError("epsilon must be nonnegative");
    MetricDef m(MetricId::EpsilonInsensitive, MetricSpace::Y);
    m.epsilon_ = epsilon;
    return m;
}

MetricDef MetricDef::travel_time(TravelTimeTable table) {
    table.validate();
    MetricDef m(MetricId::TravelTime, MetricSpace::Y);
    m.table_ = std::move(table);
    return m;
}

namespace {

double scalar_of(const std::vector<double>& v, const char* what) {
    if (v.size() != 1) throw DomainError(std::string(what) + " requires scalar values");
    return v[0];
}

int location_index(double v, std::size_t n) {
    const double r = std::nearbyint(v);
    if (r != v || r < 0.0 || r >= static_cast<double>(n)) {
        throw DomainError("location index out of range for travel table");
    }
    return static_cast<int>(r);
}

}  // namespace

double MetricDef::operator()(const std::vector<double>& a, const std::vector<double>& b) const {
    if (a.size() != b.size()) throw DomainError("metric arguments have different dimensions");
    if (a.empty()) throw DomainError("metric arguments are empty");
    switch (id_) {
        case MetricId::Euclidean: {
            double s = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
                const double d = a[i] - b[i];
                s += d * d;
            }
            return std::sqrt(s);
        }
        case MetricId::Absolute: {
            double s = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
            return s;
        }
        case MetricId::Discrete01:
            return a == b ? 0.0 : 1.0;
        case MetricId::SignAgreement: {
            const double y1 = scalar_of(a, "sign-agreement metric");
            const double y2 = scalar_of(b, "sign-agreement metric");
            if (y1 * y2 >= 0.0) return 0.0;
            return std::fabs(y2 - y1);
        }
        case MetricId::EpsilonInsensitive: {
            const double y1 = scalar_of(a, "epsilon-insensitive metric");
            const double y2 = scalar_of(b, "epsilon-insensitive metric");
            return std::max(0.0, std::fabs(y1 - y2) - epsilon_);
        }
        case MetricId::TravelTime: {
            const int i = location_index(scalar_of(a, "travel metric"), table_.size());
            const int j = location_index(scalar_of(b, "travel metric"), table_.size());
            return table_.minutes[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    throw DomainError("unknown metric");
}

double rho_x(const Formula& a1, const Formula& a2, const MetricDef& x_metric) {
    if (x_metric.applies_to() != MetricSpace::X) throw DomainError("rho_x needs a data-point metric");
    return x_metric(a1.x, a2.x);
}

double rho_y(const Formula& a1, const Formula& a2, const MetricDef& y_metric) {
    if (y_metric.applies_to() != MetricSpace::Y) throw DomainError("rho_y needs a feedback metric");
    return y_metric(a1.y.vec(), a2.y.vec());
}

FormulaSet::FormulaSet(std::size_t x_dim, MetricDef x_metric, MetricDef y_metric)
    : x_dim_(x_dim), x_metric_(std::move(x_metric)), y_metric_(std::move(y_metric)) {
    if (x_dim_ == 0) throw DomainError("data-point dimension must be positive");
    if (x_metric_.applies_to() != MetricSpace::X) throw DomainError("x metric must apply to data points");
    if (y_metric_.applies_to() != MetricSpace::Y) throw DomainError("y metric must apply to feedback");
}

void FormulaSet::add(Formula f) {
    if (f.x.size() != x_dim_) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "formula has %zu coordinates, set expects %zu", f.x.size(), x_dim_);
        throw DomainError(buf);
    }
    formulas_.push_back(std::move(f));
}

bool FormulaSet::contains(const Formula& f) const {
    return std::find(formulas_.begin(), formulas_.end(), f) != formulas_.end();
}

}  // namespace loh
