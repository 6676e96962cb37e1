#include "loh/theory_json.hpp"

#include <initializer_list>
#include <string>
#include <vector>

#include "json.hpp"

namespace loh {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& what) { throw SchemaError("theory json: " + what); }

void check_keys(const Json& j, const char* where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(std::string(where) + " must be an object");
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) fail(std::string("unknown key '") + key + "' in " + where);
    }
}

double number_at(const Json& j, const char* key, const char* where) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        fail(std::string(where) + " needs numeric '" + key + "'");
    }
    return j.at(key).get<double>();
}

Json params_of(const Json& j, const char* where) {
    if (!j.contains("params")) return Json::object();
    if (!j.at("params").is_object()) fail(std::string(where) + " params must be an object");
    return j.at("params");
}

std::string id_of(const Json& j, const char* where) {
    check_keys(j, where, {"id", "params"});
    if (!j.contains("id") || !j.at("id").is_string()) {
        fail(std::string(where) + " needs a string 'id'");
    }
    return j.at("id").get<std::string>();
}

// ---- conditions ----

ConditionNode condition_from_json(const Json& j);

std::vector<ConditionNode> children_from_json(const Json& j, const char* where) {
    if (!j.contains("args") || !j.at("args").is_array() || j.at("args").empty()) {
        fail(std::string(where) + " needs a nonempty 'args' array");
    }
    std::vector<ConditionNode> children;
    for (const auto& c : j.at("args")) children.push_back(condition_from_json(c));
    return children;
}

Modality modality_from_json(const Json& j) {
    if (!j.contains("modality") || !j.at("modality").is_string()) {
        fail("modality_is needs 'modality' of \"obs\" or \"hyp\"");
    }
    const std::string kind = j.at("modality").get<std::string>();
    int group = 0;
    if (j.contains("group")) {
        if (!j.at("group").is_number_integer()) fail("modality group must be an integer");
        group = j.at("group").get<int>();
    }
    if (kind == "obs") return observed(group);
    if (kind == "hyp") return hypothetical(group);
    fail("modality must be \"obs\" or \"hyp\", got '" + kind + "'");
}

ConditionNode condition_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("op") || !j.at("op").is_string()) {
        fail("condition node needs a string 'op'");
    }
    const std::string op = j.at("op").get<std::string>();
    if (op == "and") {
        check_keys(j, "and", {"op", "args"});
        return cond::all_of(children_from_json(j, "and"));
    }
    if (op == "or") {
        check_keys(j, "or", {"op", "args"});
        return cond::any_of(children_from_json(j, "or"));
    }
    if (op == "modality_is") {
        check_keys(j, "modality_is", {"op", "arg", "modality", "group"});
        const double arg = number_at(j, "arg", "modality_is");
        return cond::modality_is(static_cast<int>(arg), modality_from_json(j));
    }
    if (op == "x_equal") {
        check_keys(j, "x_equal", {"op"});
        return cond::x_equal();
    }
    if (op == "x_dist_leq" || op == "x_dist_lt" || op == "x_dist_gt") {
        check_keys(j, op.c_str(), {"op", "c"});
        const double c = number_at(j, "c", op.c_str());
        if (op == "x_dist_leq") return cond::x_dist_leq(c);
        if (op == "x_dist_lt") return cond::x_dist_lt(c);
        return cond::x_dist_gt(c);
    }
    if (op == "x_less") {
        check_keys(j, "x_less", {"op"});
        return cond::x_less();
    }
    if (op == "y_greater") {
        check_keys(j, "y_greater", {"op"});
        return cond::y_greater();
    }
    if (op == "coord_equal") {
        check_keys(j, "coord_equal", {"op", "i"});
        return cond::coord_equal(static_cast<int>(number_at(j, "i", "coord_equal")));
    }
    if (op == "always_true") {
        check_keys(j, "always_true", {"op"});
        return cond::always_true();
    }
    fail("unknown condition op '" + op + "'");
}

Json condition_to_json(const ConditionNode& n) {
    Json j;
    switch (n.kind) {
        case ConditionNode::Kind::And:
        case ConditionNode::Kind::Or: {
            j["op"] = n.kind == ConditionNode::Kind::And ? "and" : "or";
            Json args = Json::array();
            for (const auto& c : n.children) args.push_back(condition_to_json(c));
            j["args"] = std::move(args);
            return j;
        }
        case ConditionNode::Kind::ModalityIs:
            j["op"] = "modality_is";
            j["arg"] = n.arg;
            j["modality"] = n.modality.kind == ModalityKind::Observation ? "obs" : "hyp";
            j["group"] = n.modality.group;
            return j;
        case ConditionNode::Kind::XEqual:
            j["op"] = "x_equal";
            return j;
        case ConditionNode::Kind::XDistLeq:
        case ConditionNode::Kind::XDistLt:
        case ConditionNode::Kind::XDistGt:
            j["op"] = n.kind == ConditionNode::Kind::XDistLeq  ? "x_dist_leq"
                      : n.kind == ConditionNode::Kind::XDistLt ? "x_dist_lt"
                                                               : "x_dist_gt";
            j["c"] = n.threshold;
            return j;
        case ConditionNode::Kind::XLess:
            j["op"] = "x_less";
            return j;
        case ConditionNode::Kind::YGreater:
            j["op"] = "y_greater";
            return j;
        case ConditionNode::Kind::CoordEqual:
            j["op"] = "coord_equal";
            j["i"] = n.coord;
            return j;
        case ConditionNode::Kind::AlwaysTrue:
            j["op"] = "always_true";
            return j;
    }
    fail("unknown condition kind");
}

// ---- deviations ----

DeviationFn deviation_from_json(const Json& j) {
    const std::string id = id_of(j, "deviation");
    const Json params = params_of(j, "deviation");
    if (id == "rho_y") return DeviationFn::rho_y();
    if (id == "rho_y_squared") return DeviationFn::rho_y_squared();
    if (id == "hinge_above") return DeviationFn::hinge_above(number_at(params, "c", "hinge_above"));
    if (id == "log_rho_y") {
        if (params.contains("floor")) {
            return DeviationFn::log_rho_y(number_at(params, "floor", "log_rho_y"));
        }
        return DeviationFn::log_rho_y();
    }
    if (id == "travel_slack") return DeviationFn::travel_slack();
    fail("unknown deviation id '" + id + "'");
}

Json deviation_to_json(const DeviationFn& d) {
    Json j;
    switch (d.id()) {
        case DeviationFn::Id::RhoY: j["id"] = "rho_y"; return j;
        case DeviationFn::Id::RhoYSquared: j["id"] = "rho_y_squared"; return j;
        case DeviationFn::Id::HingeAbove:
            j["id"] = "hinge_above";
            j["params"] = Json{{"c", d.param()}};
            return j;
        case DeviationFn::Id::LogRhoY:
            j["id"] = "log_rho_y";
            j["params"] = Json{{"floor", d.param()}};
            return j;
        case DeviationFn::Id::TravelSlack: j["id"] = "travel_slack"; return j;
    }
    fail("unknown deviation kind");
}

// ---- aggregators ----

ProperAggregator aggregator_from_json(const Json& j) {
    const std::string id = id_of(j, "aggregator");
    const Json params = params_of(j, "aggregator");
    if (id == "mean") return ProperAggregator::mean();
    if (id == "rms") return ProperAggregator::rms();
    if (id == "max") return ProperAggregator::max();
    if (id == "geomean") return ProperAggregator::geomean();
    if (id == "median") return ProperAggregator::median();
    if (id == "percentile") {
        return ProperAggregator::percentile(number_at(params, "p", "percentile"));
    }
    fail("unknown aggregator id '" + id + "'");
}

Json aggregator_to_json(const ProperAggregator& a) {
    Json j;
    switch (a.id()) {
        case ProperAggregator::Id::Median: j["id"] = "median"; return j;
        case ProperAggregator::Id::Percentile:
            j["id"] = "percentile";
            j["params"] = Json{{"p", a.p()}};
            return j;
        case ProperAggregator::Id::Recursive:
            switch (a.interp()) {
                case RecursiveInterp::Mean: j["id"] = "mean"; return j;
                case RecursiveInterp::Rms: j["id"] = "rms"; return j;
                case RecursiveInterp::Max: j["id"] = "max"; return j;
                case RecursiveInterp::GeoMean: j["id"] = "geomean"; return j;
            }
    }
    fail("unknown aggregator kind");
}

// ---- regularization / top ----

RegularizationTerm regularization_from_json(const Json& j) {
    const std::string id = id_of(j, "regularization");
    const Json params = params_of(j, "regularization");
    if (id == "none") return RegularizationTerm::none();
    if (id == "squared_weight_norm") {
        return RegularizationTerm::squared_weight_norm(
            number_at(params, "alpha", "squared_weight_norm"));
    }
    fail("unknown regularization id '" + id + "'");
}

Json regularization_to_json(const RegularizationTerm& r) {
    Json j;
    if (r.is_none()) {
        j["id"] = "none";
    } else {
        j["id"] = "squared_weight_norm";
        j["params"] = Json{{"alpha", r.alpha()}};
    }
    return j;
}

TotalAggregator top_from_json(const Json& j) {
    const std::string id = id_of(j, "top");
    const Json params = params_of(j, "top");
    if (id == "passthrough") return TotalAggregator::passthrough();
    if (id == "sum") return TotalAggregator::sum();
    if (id == "sum_plus_reg") return TotalAggregator::sum_plus_reg();
    if (id == "one_minus_product_of_complements") {
        return TotalAggregator::one_minus_product_of_complements();
    }
    if (id == "weighted_sum") {
        if (!params.contains("weights") || !params.at("weights").is_array()) {
            fail("weighted_sum needs a 'weights' array");
        }
        std::vector<double> weights;
        for (const auto& w : params.at("weights")) {
            if (!w.is_number()) fail("weighted_sum weights must be numbers");
            weights.push_back(w.get<double>());
        }
        return TotalAggregator::weighted_sum(std::move(weights));
    }
    fail("unknown top id '" + id + "'");
}

Json top_to_json(const TotalAggregator& t) {
    Json j;
    switch (t.id()) {
        case TotalAggregator::Id::Passthrough: j["id"] = "passthrough"; return j;
        case TotalAggregator::Id::Sum: j["id"] = "sum"; return j;
        case TotalAggregator::Id::SumPlusReg: j["id"] = "sum_plus_reg"; return j;
        case TotalAggregator::Id::OneMinusProductOfComplements:
            j["id"] = "one_minus_product_of_complements";
            return j;
        case TotalAggregator::Id::WeightedSum:
            j["id"] = "weighted_sum";
            j["params"] = Json{{"weights", t.weights()}};
            return j;
    }
    fail("unknown top kind");
}

// ---- metrics ----

MetricDef metric_from_json(const Json& j, MetricSpace space) {
    const std::string id = id_of(j, "metric");
    const Json params = params_of(j, "metric");
    if (id == "euclidean") return MetricDef::euclidean(space);
    if (id == "absolute") return MetricDef::absolute(space);
    if (id == "discrete01") return MetricDef::discrete01(space);
    if (id == "sign_agreement") {
        if (space != MetricSpace::Y) fail("sign_agreement applies to the y side only");
        return MetricDef::sign_agreement();
    }
    if (id == "epsilon_insensitive") {
        if (space != MetricSpace::Y) fail("epsilon_insensitive applies to the y side only");
        return MetricDef::epsilon_insensitive(number_at(params, "epsilon", "epsilon_insensitive"));
    }
    if (id == "travel_time") {
        if (space != MetricSpace::Y) fail("travel_time applies to the y side only");
        if (!params.contains("locations") || !params.at("locations").is_array() ||
            !params.contains("minutes") || !params.at("minutes").is_array()) {
            fail("travel_time needs 'locations' and 'minutes'");
        }
        TravelTimeTable table;
        for (const auto& name : params.at("locations")) {
            if (!name.is_string()) fail("travel_time locations must be strings");
            table.locations.push_back(name.get<std::string>());
        }
        for (const auto& row : params.at("minutes")) {
            if (!row.is_array()) fail("travel_time minutes must be an array of rows");
            std::vector<double> r;
            for (const auto& v : row) {
                if (!v.is_number()) fail("travel_time minutes must be numbers");
                r.push_back(v.get<double>());
            }
            table.minutes.push_back(std::move(r));
        }
        table.validate();
        return MetricDef::travel_time(std::move(table));
    }
    fail("unknown metric id '" + id + "'");
}

Json metric_to_json(const MetricDef& m) {
    Json j;
    switch (m.id()) {
        case MetricId::Euclidean: j["id"] = "euclidean"; return j;
        case MetricId::Absolute: j["id"] = "absolute"; return j;
        case MetricId::Discrete01: j["id"] = "discrete01"; return j;
        case MetricId::SignAgreement: j["id"] = "sign_agreement"; return j;
        case MetricId::EpsilonInsensitive:
            j["id"] = "epsilon_insensitive";
            j["params"] = Json{{"epsilon", m.epsilon()}};
            return j;
        case MetricId::TravelTime:
            j["id"] = "travel_time";
            j["params"] =
                Json{{"locations", m.table().locations}, {"minutes", m.table().minutes}};
            return j;
    }
    fail("unknown metric kind");
}

}  // namespace

TheoryConfig theory_from_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(std::string("parse error: ") + e.what());
    }
    check_keys(j, "document", {"name", "aspects", "regularization", "top", "metrics"});
    if (!j.contains("name") || !j.at("name").is_string()) fail("document needs a string 'name'");
    if (!j.contains("aspects") || !j.at("aspects").is_array() || j.at("aspects").empty()) {
        fail("document needs a nonempty 'aspects' array");
    }

    std::vector<Aspect> aspects;
    std::size_t index = 0;
    for (const auto& a : j.at("aspects")) {
        ++index;
        check_keys(a, "aspect", {"condition", "deviation", "aggregator", "label"});
        if (!a.contains("condition") || !a.contains("deviation") || !a.contains("aggregator")) {
            fail("aspect needs 'condition', 'deviation' and 'aggregator'");
        }
        std::string label = "aspect " + std::to_string(index);
        if (a.contains("label")) {
            if (!a.at("label").is_string()) fail("aspect label must be a string");
            label = a.at("label").get<std::string>();
        }
        aspects.push_back(Aspect{condition_from_json(a.at("condition")),
                                 deviation_from_json(a.at("deviation")),
                                 aggregator_from_json(a.at("aggregator")), std::move(label)});
    }

    RegularizationTerm reg = RegularizationTerm::none();
    if (j.contains("regularization")) reg = regularization_from_json(j.at("regularization"));
    TotalAggregator top = TotalAggregator::passthrough();
    if (j.contains("top")) top = top_from_json(j.at("top"));

    MetricDef x_metric = MetricDef::euclidean(MetricSpace::X);
    MetricDef y_metric = MetricDef::absolute(MetricSpace::Y);
    if (j.contains("metrics")) {
        const Json& m = j.at("metrics");
        check_keys(m, "metrics", {"x", "y"});
        if (m.contains("x")) x_metric = metric_from_json(m.at("x"), MetricSpace::X);
        if (m.contains("y")) y_metric = metric_from_json(m.at("y"), MetricSpace::Y);
    }

    return TheoryConfig{IncongruityTheory(j.at("name").get<std::string>(), std::move(aspects)),
                        reg, top, std::move(x_metric), std::move(y_metric)};
}

std::string theory_to_json(const TheoryConfig& config) {
    Json j;
    j["name"] = config.theory.name();
    Json aspects = Json::array();
    for (const auto& a : config.theory.aspects()) {
        Json aspect;
        aspect["condition"] = condition_to_json(a.condition);
        aspect["deviation"] = deviation_to_json(a.deviation);
        aspect["aggregator"] = aggregator_to_json(a.aggregator);
        aspect["label"] = a.label;
        aspects.push_back(std::move(aspect));
    }
    j["aspects"] = std::move(aspects);
    j["regularization"] = regularization_to_json(config.regularization);
    j["top"] = top_to_json(config.top);
    j["metrics"] =
        Json{{"x", metric_to_json(config.x_metric)}, {"y", metric_to_json(config.y_metric)}};
    return j.dump(2) + "\n";
}

}  // namespace loh
