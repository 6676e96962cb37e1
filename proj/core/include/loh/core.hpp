#ifndef LOH_CORE_HPP
#define LOH_CORE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace loh {

// Configuration / input shape problems. The CLI maps these to exit code 2.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numeric or domain violations (empty multisets, dimension mismatches,
// out-of-range indices). The CLI maps these to exit code 3.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using DataPoint = std::vector<double>;

enum class ModalityKind { Observation, Hypothetical };

// A modality is its kind plus a group index, so several observation channels
// (or hypothesis families) can coexist in one formula set.
struct Modality {
    ModalityKind kind = ModalityKind::Observation;
    int group = 0;

    bool operator==(const Modality&) const = default;
};

inline Modality observed(int group = 0) { return {ModalityKind::Observation, group}; }
inline Modality hypothetical(int group = 0) { return {ModalityKind::Hypothetical, group}; }

// Feedback attached to a formula: a real scalar in most settings, a small
// vector where the observed quantity itself is a point (clustering).
class Feedback {
public:
    Feedback(double value) : values_{value} {}
    explicit Feedback(std::vector<double> values);

    bool is_scalar() const { return values_.size() == 1; }
    double scalar() const;
    const std::vector<double>& vec() const { return values_; }
    std::size_t dim() const { return values_.size(); }

    bool operator==(const Feedback&) const = default;

private:
    std::vector<double> values_;
};

// One closed formula: "under modality s, the underlying dependence maps x to y".
// Immutable by convention; FormulaSet only hands out const references.
struct Formula {
    Modality modality;
    DataPoint x;
    Feedback y;

    bool operator==(const Formula&) const = default;
};

inline Formula make_formula(Modality s, DataPoint x, Feedback y) {
    return Formula{s, std::move(x), std::move(y)};
}

// Pairwise travel times between named locations; used as a feedback metric
// where feedback values are location indices.
struct TravelTimeTable {
    std::vector<std::string> locations;
    std::vector<std::vector<double>> minutes;

    // Throws SchemaError unless the matrix is square, matches the location
    // count, is symmetric and has a zero diagonal.
    void validate() const;
    // Index of a location name, or -1.
    int index_of(const std::string& name) const;
    std::size_t size() const { return locations.size(); }
};

enum class MetricId {
    Euclidean,
    Absolute,
    Discrete01,
    SignAgreement,
    EpsilonInsensitive,
    TravelTime,
};

enum class MetricSpace { X, Y };

// A distance (or deviation-oriented pseudo-distance) over data points or
// feedback values. SignAgreement, EpsilonInsensitive and TravelTime only
// make sense on the feedback side.
class MetricDef {
public:
    static MetricDef euclidean(MetricSpace applies_to);
    static MetricDef absolute(MetricSpace applies_to);
    static MetricDef discrete01(MetricSpace applies_to);
    static MetricDef sign_agreement();
    static MetricDef epsilon_insensitive(double epsilon);
    static MetricDef travel_time(TravelTimeTable table);

    MetricId id() const { return id_; }
    MetricSpace applies_to() const { return applies_to_; }
    double epsilon() const { return epsilon_; }
    const TravelTimeTable& table() const { return table_; }

    // Distance between two equal-dimension value vectors.
    double operator()(const std::vector<double>& a, const std::vector<double>& b) const;

private:
    MetricDef(MetricId id, MetricSpace applies_to) : id_(id), applies_to_(applies_to) {}

    MetricId id_;
    MetricSpace applies_to_;
    double epsilon_ = 0.0;
    TravelTimeTable table_;
};

double rho_x(const Formula& a1, const Formula& a2, const MetricDef& x_metric);
double rho_y(const Formula& a1, const Formula& a2, const MetricDef& y_metric);

// An ordered collection of formulas over a common data-point dimension,
// together with the metrics used on both sides. Iteration order is creation
// order and is the canonical order everywhere downstream.
class FormulaSet {
public:
    FormulaSet(std::size_t x_dim, MetricDef x_metric, MetricDef y_metric);

    void add(Formula f);

    std::size_t size() const { return formulas_.size(); }
    bool empty() const { return formulas_.empty(); }
    const Formula& operator[](std::size_t i) const { return formulas_[i]; }

    std::vector<Formula>::const_iterator begin() const { return formulas_.begin(); }
    std::vector<Formula>::const_iterator end() const { return formulas_.end(); }

    bool contains(const Formula& f) const;

    std::size_t x_dim() const { return x_dim_; }
    const MetricDef& x_metric() const { return x_metric_; }
    const MetricDef& y_metric() const { return y_metric_; }

private:
    std::size_t x_dim_;
    MetricDef x_metric_;
    MetricDef y_metric_;
    std::vector<Formula> formulas_;
};

}  // namespace loh

#endif
