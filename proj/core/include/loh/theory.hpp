#ifndef LOH_THEORY_HPP
#define LOH_THEORY_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loh/aggregation.hpp"
#include "loh/core.hpp"

namespace loh {

// Boolean combinator tree over formula-pair atoms. arg selects which side of
// the ordered pair an atom inspects where that matters. Coordinate indices
// are 1-based. XLess and YGreater require scalar x / scalar y.
struct ConditionNode {
    enum class Kind {
        And,
        Or,
        ModalityIs,
        XEqual,
        XDistLeq,
        XDistLt,
        XDistGt,
        XLess,
        YGreater,
        CoordEqual,
        AlwaysTrue,
    };

    Kind kind = Kind::AlwaysTrue;
    std::vector<ConditionNode> children;  // And / Or
    int arg = 1;                          // ModalityIs: 1 or 2
    Modality modality{};                  // ModalityIs
    double threshold = 0.0;               // XDistLeq / XDistLt / XDistGt
    int coord = 1;                        // CoordEqual

    bool eval(const Formula& a1, const Formula& a2, const MetricDef& x_metric) const;
};

namespace cond {

ConditionNode all_of(std::vector<ConditionNode> children);
ConditionNode any_of(std::vector<ConditionNode> children);
ConditionNode modality_is(int arg, Modality m);
ConditionNode x_equal();
ConditionNode x_dist_leq(double c);
ConditionNode x_dist_lt(double c);
ConditionNode x_dist_gt(double c);
ConditionNode x_less();
ConditionNode y_greater();
ConditionNode coord_equal(int i);
ConditionNode always_true();

// The pairwise condition: first formula hypothetical, second an observation,
// both at the same data point.
ConditionNode pointwise(int hyp_group = 0, int obs_group = 0);

}  // namespace cond

// Deviation of a colliding pair as a function of (rho_y, rho_x); isotone in
// the first argument, antitone in the second.
class DeviationFn {
public:
    enum class Id { RhoY, RhoYSquared, HingeAbove, LogRhoY, TravelSlack };

    static DeviationFn rho_y();
    static DeviationFn rho_y_squared();
    static DeviationFn hinge_above(double c);
    // log of rho_y clamped below at `floor` so exact fits stay finite.
    static DeviationFn log_rho_y(double floor = 1e-12);
    // max(0, rho_y - rho_x): feedback distance not explained by slack rho_x.
    static DeviationFn travel_slack();

    Id id() const { return id_; }
    double param() const { return param_; }

    double operator()(double r_y, double r_x) const;

private:
    DeviationFn(Id id, double param) : id_(id), param_(param) {}

    Id id_;
    double param_;
};

struct Aspect {
    ConditionNode condition;
    DeviationFn deviation;
    ProperAggregator aggregator;
    std::string label;
};

class IncongruityTheory {
public:
    IncongruityTheory(std::string name, std::vector<Aspect> aspects);

    const std::string& name() const { return name_; }
    const std::vector<Aspect>& aspects() const { return aspects_; }

private:
    std::string name_;
    std::vector<Aspect> aspects_;
};

struct LinearForm {
    std::vector<double> w;
    double b = 0.0;
};

// What is being tested against the observations: a point function (optionally
// carrying a linear form for regularization), an explicit finite set of
// hypothetical formulas, or nothing (observation-only theories).
class HypothesisSpec {
public:
    using Fn = std::function<Feedback(const DataPoint&)>;

    static HypothesisSpec none();
    static HypothesisSpec point_function(Fn h, std::string id = "function");
    static HypothesisSpec constant(double c);
    static HypothesisSpec linear(std::vector<double> w, double b);
    static HypothesisSpec explicit_instances(std::vector<Formula> instances, std::string id = "instances");

    bool is_none() const { return kind_ == Kind::None; }
    bool is_point_function() const { return kind_ == Kind::PointFunction; }
    bool is_explicit() const { return kind_ == Kind::Explicit; }

    Feedback evaluate(const DataPoint& x) const;
    const std::vector<Formula>& instances() const;

    bool has_linear_form() const { return linear_.has_value(); }
    const LinearForm& linear_form() const;

    const std::string& id() const { return id_; }

private:
    enum class Kind { None, PointFunction, Explicit };

    Kind kind_ = Kind::None;
    Fn fn_;
    std::vector<Formula> instances_;
    std::optional<LinearForm> linear_;
    std::string id_ = "none";
};

class RegularizationTerm {
public:
    static RegularizationTerm none();
    static RegularizationTerm squared_weight_norm(double alpha);

    bool is_none() const { return !alpha_.has_value(); }
    double alpha() const;

    // nullopt when no regularization; otherwise alpha * ||w||^2 of the
    // hypothesis' linear form (which must exist).
    std::optional<double> value(const HypothesisSpec& h) const;

private:
    std::optional<double> alpha_;
};

// Minimal closed formula set for a (hypothesis, observations, theory)
// triple: all observations plus every hypothetical instance that collides
// with at least one observation. Observations occupy indices [0, m).
struct FullModel {
    FormulaSet formulas;
    std::size_t observation_count = 0;
    std::string theory_name;
    std::string hypothesis_id;
};

// True when the condition pins the hypothetical data point to an observed
// one (an XEqual atom reachable through the conjunctive structure), which is
// what makes point-function generation finite.
bool point_generating(const ConditionNode& condition);

FullModel build_full_model(const HypothesisSpec& h, const FormulaSet& observations,
                           const IncongruityTheory& theory);

// Ordered index pairs (into model.formulas) satisfying the aspect's
// condition, enumerated lexicographically; both orders of a pair may appear,
// self-pairs never do.
std::vector<std::pair<std::size_t, std::size_t>> colliding_pairs(const FullModel& model,
                                                                 const Aspect& aspect);

// Deviations of the colliding pairs, in pair order.
std::vector<double> aspect_deviations(const FullModel& model, const Aspect& aspect);

enum class EvalMode { BitExact, Fast };

struct AspectBreakdown {
    std::string label;
    std::size_t pair_count = 0;
    double incongruity = 0.0;
    bool no_collisions = false;
};

struct IncongruityResult {
    double total = 0.0;
    std::vector<AspectBreakdown> aspects;
    std::optional<double> regularization;
};

// Total proper incongruity: per-aspect proper aggregation of deviations,
// then the isotone top aggregation over aspect values plus the optional
// regularization element. An aspect with no colliding pairs contributes the
// top's identity (0, i.e. a unit factor under the product top) and is
// flagged. BitExact reduces every aspect sequentially in pair order; Fast
// permits the chunked reduction order (within 1e-9 relative of BitExact).
IncongruityResult total_incongruity(const HypothesisSpec& h, const FormulaSet& observations,
                                    const IncongruityTheory& theory, const RegularizationTerm& reg,
                                    const TotalAggregator& top, EvalMode mode = EvalMode::BitExact);

}  // namespace loh

#endif
