#include "loh/theory.hpp"

#include <algorithm>
#include <cmath>

namespace loh {

bool ConditionNode::eval(const Formula& a1, const Formula& a2, const MetricDef& x_metric) const {
    switch (kind) {
        case Kind::And:
            for (const auto& c : children) {
                if (!c.eval(a1, a2, x_metric)) return false;
            }
            return true;
        case Kind::Or:
            for (const auto& c : children) {
                if (c.eval(a1, a2, x_metric)) return true;
            }
            return false;
        case Kind::ModalityIs:
            return (arg == 1 ? a1 : a2).modality == modality;
        case Kind::XEqual:
            return a1.x == a2.x;
        case Kind::XDistLeq:
            return rho_x(a1, a2, x_metric) <= threshold;
        case Kind::XDistLt:
            return rho_x(a1, a2, x_metric) < threshold;
        case Kind::XDistGt:
            return rho_x(a1, a2, x_metric) > threshold;
        case Kind::XLess:
            if (a1.x.size() != 1 || a2.x.size() != 1) {
                throw DomainError("x-order condition requires scalar data points");
            }
            return a1.x[0] < a2.x[0];
        case Kind::YGreater:
            return a1.y.scalar() > a2.y.scalar();
        case Kind::CoordEqual: {
            const auto i = static_cast<std::size_t>(coord);
            if (coord < 1 || i > a1.x.size() || i > a2.x.size()) {
                throw DomainError("coordinate index out of range in condition");
            }
            return a1.x[i - 1] == a2.x[i - 1];
        }
        case Kind::AlwaysTrue:
            return true;
    }
    throw DomainError("unknown condition node");
}

namespace cond {

ConditionNode all_of(std::vector<ConditionNode> children) {
    if (children.empty()) throw DomainError("conjunction needs at least one child");
    ConditionNode n;
    n.kind = ConditionNode::Kind::And;
    n.children = std::move(children);
    return n;
}

ConditionNode any_of(std::vector<ConditionNode> children) {
    if (children.empty()) throw DomainError("disjunction needs at least one child");
    ConditionNode n;
    n.kind = ConditionNode::Kind::Or;
    n.children = std::move(children);
    return n;
}

ConditionNode modality_is(int arg, Modality m) {
    if (arg != 1 && arg != 2) throw DomainError("modality atom argument must be 1 or 2");
    ConditionNode n;
    n.kind = ConditionNode::Kind::ModalityIs;
    n.arg = arg;
    n.modality = m;
    return n;
}

ConditionNode x_equal() {
    ConditionNode n;
    n.kind = ConditionNode::Kind::XEqual;
    return n;
}

namespace {
ConditionNode dist_node(ConditionNode::Kind kind, double c) {
    if (c < 0.0) throw DomainError("distance threshold must be nonnegative");
    ConditionNode n;
    n.kind = kind;
    n.threshold = c;
    return n;
}
}  // namespace

ConditionNode x_dist_leq(double c) { return dist_node(ConditionNode::Kind::XDistLeq, c); }
ConditionNode x_dist_lt(double c) { return dist_node(ConditionNode::Kind::XDistLt, c); }
ConditionNode x_dist_gt(double c) { return dist_node(ConditionNode::Kind::XDistGt, c); }

ConditionNode x_less() {
    ConditionNode n;
    n.kind = ConditionNode::Kind::XLess;
    return n;
}

ConditionNode y_greater() {
    ConditionNode n;
    n.kind = ConditionNode::Kind::YGreater;
    return n;
}

ConditionNode coord_equal(int i) {
    if (i < 1) throw DomainError("coordinate index is 1-based");
    ConditionNode n;
    n.kind = ConditionNode::Kind::CoordEqual;
    n.coord = i;
    return n;
}

ConditionNode always_true() { return ConditionNode{}; }

ConditionNode pointwise(int hyp_group, int obs_group) {
    return all_of({modality_is(1, hypothetical(hyp_group)),
                   modality_is(2, observed(obs_group)),
                   x_equal()});
}

}  // namespace cond

DeviationFn DeviationFn::rho_y() { return DeviationFn(Id::RhoY, 0.0); }
DeviationFn DeviationFn::rho_y_squared() { return DeviationFn(Id::RhoYSquared, 0.0); }

DeviationFn DeviationFn::hinge_above(double c) {
    if (c < 0.0) throw DomainError("hinge offset must be nonnegative");
    return DeviationFn(Id::HingeAbove, c);
}

DeviationFn DeviationFn::log_rho_y(double floor) {
    if (floor <= 0.0) throw DomainError("log deviation needs a positive floor");
    return DeviationFn(Id::LogRhoY, floor);
}

DeviationFn DeviationFn::travel_slack() { return DeviationFn(Id::TravelSlack, 0.0); }

double DeviationFn::operator()(double r_y, double r_x) const {
    switch (id_) {
        case Id::RhoY: return r_y;
        case Id::RhoYSquared: return r_y * r_y;
        case Id::HingeAbove: return std::max(0.0, r_y - param_);
        case Id::LogRhoY: return std::log(std::max(r_y, param_));
        case Id::TravelSlack: return std::max(0.0, r_y - r_x);
    }
    throw DomainError("unknown deviation function");
}

IncongruityTheory::IncongruityTheory(std::string name, std::vector<Aspect> aspects)
    : name_(std::move(name)), aspects_(std::move(aspects)) {
    if (aspects_.empty()) throw DomainError("an incongruity theory needs at least one aspect");
}

HypothesisSpec HypothesisSpec::none() { return HypothesisSpec{}; }

HypothesisSpec HypothesisSpec::point_function(Fn h, std::string id) {
    if (!h) throw DomainError("point-function hypothesis needs a callable");
    HypothesisSpec s;
    s.kind_ = Kind::PointFunction;
    s.fn_ = std::move(h);
    s.id_ = std::move(id);
    return s;
}

HypothesisSpec HypothesisSpec::constant(double c) {
    auto s = point_function([c](const DataPoint&) { return Feedback(c); }, "constant");
    return s;
}

HypothesisSpec HypothesisSpec::linear(std::vector<double> w, double b) {
    if (w.empty()) throw DomainError("linear hypothesis needs at least one weight");
    LinearForm form{w, b};
    auto s = point_function(
        [w = std::move(w), b](const DataPoint& x) {
            if (x.size() != w.size()) throw DomainError("linear hypothesis dimension mismatch");
            double v = b;
            for (std::size_t i = 0; i < w.size(); ++i) v += w[i] * x[i];
            return Feedback(v);
        },
        "linear");
    s.linear_ = std::move(form);
    return s;
}

HypothesisSpec HypothesisSpec::explicit_instances(std::vector<Formula> instances, std::string id) {
    for (const auto& f : instances) {
        if (f.modality.kind != ModalityKind::Hypothetical) {
            throw DomainError("explicit hypothesis instances must carry a hypothetical modality");
        }
    }
    HypothesisSpec s;
    s.kind_ = Kind::Explicit;
    s.instances_ = std::move(instances);
    s.id_ = std::move(id);
    return s;
}

Feedback HypothesisSpec::evaluate(const DataPoint& x) const {
    if (kind_ != Kind::PointFunction) throw DomainError("hypothesis is not a point function");
    return fn_(x);
}

const std::vector<Formula>& HypothesisSpec::instances() const {
    if (kind_ != Kind::Explicit) throw DomainError("hypothesis has no explicit instances");
    return instances_;
}

const LinearForm& HypothesisSpec::linear_form() const {
    if (!linear_) throw DomainError("hypothesis has no linear form");
    return *linear_;
}

RegularizationTerm RegularizationTerm::none() { return RegularizationTerm{}; }

RegularizationTerm RegularizationTerm::squared_weight_norm(double alpha) {
    if (alpha < 0.0) throw DomainError("regularization strength must be nonnegative");
    RegularizationTerm r;
    r.alpha_ = alpha;
    return r;
}

double RegularizationTerm::alpha() const {
    if (!alpha_) throw DomainError("no regularization configured");
    return *alpha_;
}

std::optional<double> RegularizationTerm::value(const HypothesisSpec& h) const {
    if (!alpha_) return std::nullopt;
    const LinearForm& f = h.linear_form();
    double s = 0.0;
    for (double w : f.w) s += w * w;
    return *alpha_ * s;
}

bool point_generating(const ConditionNode& condition) {
    switch (condition.kind) {
        case ConditionNode::Kind::XEqual:
            return true;
        case ConditionNode::Kind::And:
            return std::any_of(condition.children.begin(), condition.children.end(),
                               [](const ConditionNode& c) { return point_generating(c); });
        case ConditionNode::Kind::Or:
            return !condition.children.empty() &&
                   std::all_of(condition.children.begin(), condition.children.end(),
                               [](const ConditionNode& c) { return point_generating(c); });
        default:
            return false;
    }
}

namespace {

bool collides_with_any_observation(const Formula& hyp, const FormulaSet& obs,
                                   const IncongruityTheory& theory, const MetricDef& x_metric) {
    for (const auto& aspect : theory.aspects()) {
        for (const auto& o : obs) {
            if (aspect.condition.eval(hyp, o, x_metric) || aspect.condition.eval(o, hyp, x_metric)) {
                return true;
            }
        }
    }
    return false;
}

}  // namespace

FullModel build_full_model(const HypothesisSpec& h, const FormulaSet& observations,
                           const IncongruityTheory& theory) {
    FullModel model{observations, observations.size(), theory.name(), h.id()};

    // Formula sets carry multiset semantics throughout: duplicate observation
    // rows stay distinct, so explicit duplicate instances do too.
    std::vector<Formula> candidates;
    if (h.is_explicit()) {
        candidates = h.instances();
    } else if (h.is_point_function()) {
        for (const auto& aspect : theory.aspects()) {
            if (!point_generating(aspect.condition)) {
                throw DomainError(
                    "point-function hypothesis needs point-generating conditions; "
                    "supply explicit instances instead");
            }
        }
        std::vector<DataPoint> seen;
        for (const auto& o : observations) {
            if (std::find(seen.begin(), seen.end(), o.x) != seen.end()) continue;
            seen.push_back(o.x);
            candidates.push_back(make_formula(hypothetical(), o.x, h.evaluate(o.x)));
        }
    }

    // Keep the model minimal: only instances that actually collide belong to
    // the closure.
    for (auto& c : candidates) {
        if (c.x.size() != observations.x_dim()) {
            throw DomainError("hypothetical instance dimension does not match observations");
        }
        if (collides_with_any_observation(c, observations, theory, observations.x_metric())) {
            model.formulas.add(std::move(c));
        }
    }
    return model;
}

std::vector<std::pair<std::size_t, std::size_t>> colliding_pairs(const FullModel& model,
                                                                 const Aspect& aspect) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    const auto n = model.formulas.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (aspect.condition.eval(model.formulas[i], model.formulas[j], model.formulas.x_metric())) {
                pairs.emplace_back(i, j);
            }
        }
    }
    return pairs;
}

std::vector<double> aspect_deviations(const FullModel& model, const Aspect& aspect) {
    const auto pairs = colliding_pairs(model, aspect);
    std::vector<double> devs;
    devs.reserve(pairs.size());
    for (const auto& [i, j] : pairs) {
        const Formula& a1 = model.formulas[i];
        const Formula& a2 = model.formulas[j];
        const double r_y = rho_y(a1, a2, model.formulas.y_metric());
        const double r_x = rho_x(a1, a2, model.formulas.x_metric());
        devs.push_back(aspect.deviation(r_y, r_x));
    }
    return devs;
}

IncongruityResult total_incongruity(const HypothesisSpec& h, const FormulaSet& observations,
                                    const IncongruityTheory& theory, const RegularizationTerm& reg,
                                    const TotalAggregator& top, EvalMode mode) {
    const FullModel model = build_full_model(h, observations, theory);
    const Reduction order = mode == EvalMode::Fast ? Reduction::Chunked : Reduction::Sequential;

    IncongruityResult result;
    std::vector<double> aspect_values;
    aspect_values.reserve(theory.aspects().size());
    for (const auto& aspect : theory.aspects()) {
        const auto devs = aspect_deviations(model, aspect);
        AspectBreakdown bd;
        bd.label = aspect.label;
        bd.pair_count = devs.size();
        bd.no_collisions = devs.empty();
        bd.incongruity = devs.empty() ? 0.0 : aspect.aggregator.aggregate(devs, order);
        aspect_values.push_back(bd.incongruity);
        result.aspects.push_back(std::move(bd));
    }

    result.regularization = reg.value(h);
    result.total = top.apply(aspect_values, result.regularization);
    return result;
}

}  // namespace loh
