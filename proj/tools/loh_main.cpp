// loh: command line front end for the incongruity engine.
//
// Subcommands: eval (theory vs observations for one hypothesis), learn (run a
// registered learner), scenario (applied case studies), agg (one aggregator on
// a number list), check (properness axiom oracle).
//
// Exit codes: 0 success, 1 counterexample found by check, 2 usage or schema
// error, 3 numeric domain error.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "loh/aggregation.hpp"
#include "loh/core.hpp"
#include "loh/csv.hpp"
#include "loh/learners.hpp"
#include "loh/scenarios.hpp"
#include "loh/theory.hpp"
#include "loh/theory_json.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace loh;

[[noreturn]] void fail(const std::string& what) { throw SchemaError(what); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot read " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// Specs may be given inline (text starting with '{') or as a file path.
std::string spec_text(const std::string& spec) {
    const auto first = spec.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && spec[first] == '{') return spec;
    return read_file(spec);
}

Json parse_json(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(what + ": " + e.what());
    }
}

void check_keys(const Json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(where + " must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) fail("unknown key '" + key + "' in " + where);
    }
}

double num_param(const Json& p, const char* key) {
    if (!p.contains(key) || !p.at(key).is_number()) {
        fail(std::string("missing numeric parameter '") + key + "'");
    }
    return p.at(key).get<double>();
}

double num_param_or(const Json& p, const char* key, double fallback) {
    if (!p.contains(key)) return fallback;
    if (!p.at(key).is_number()) fail(std::string("parameter '") + key + "' must be a number");
    return p.at(key).get<double>();
}

DataPoint point_param(const Json& p, const char* key) {
    if (!p.contains(key) || !p.at(key).is_array()) {
        fail(std::string("missing array parameter '") + key + "'");
    }
    DataPoint x;
    for (const auto& v : p.at(key)) {
        if (!v.is_number()) fail(std::string("parameter '") + key + "' must hold numbers");
        x.push_back(v.get<double>());
    }
    return x;
}

// ---------------------------------------------------------------------------
// Report plumbing
// ---------------------------------------------------------------------------

struct RunConfig {
    std::string mode = "bit-exact";  // or "fast"
    std::uint64_t seed = 0;
    std::string out;  // empty = stdout
};

void add_mode_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--mode", cfg.mode, "Evaluation mode: bit-exact (default) or fast")
        ->check(CLI::IsMember({"bit-exact", "fast"}));
    cmd->add_option("--seed", cfg.seed, "Random seed (default 0)");
    cmd->add_option("--out", cfg.out, "Write the report to this file instead of stdout");
}

Json base_report(const std::string& name, const RunConfig& cfg) {
    Json report;
    report["schema_version"] = 1;
    report["command"] = Json{{"name", name}, {"mode", cfg.mode}, {"seed", cfg.seed}};
    return report;
}

void emit(const Json& report, const RunConfig& cfg) {
    const std::string text = report.dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) fail("cannot write " + cfg.out);
    out << text;
}

Json trace_to_json(const std::vector<TraceStep>& trace) {
    Json rows = Json::array();
    for (const auto& t : trace) {
        Json values = Json::object();
        for (const auto& [k, v] : t.values) values[k] = v;
        rows.push_back(Json{{"step", t.step}, {"values", std::move(values)}});
    }
    return rows;
}

Json payload_to_json(const Decision& d) {
    if (std::holds_alternative<int>(d.payload)) {
        return Json{{"label", std::get<int>(d.payload)}};
    }
    if (std::holds_alternative<double>(d.payload)) {
        return Json{{"value", std::get<double>(d.payload)}};
    }
    if (std::holds_alternative<LinearModel>(d.payload)) {
        const auto& f = std::get<LinearModel>(d.payload);
        return Json{{"w", f.w}, {"b", f.b}};
    }
    if (std::holds_alternative<std::vector<int>>(d.payload)) {
        return Json{{"assignment", std::get<std::vector<int>>(d.payload)}};
    }
    return Json(nullptr);
}

Json decision_to_json(const Decision& d) {
    Json result;
    result["payload"] = payload_to_json(d);
    result["loss"] = d.loss;
    result["abstained"] = d.abstained;
    result["trace"] = trace_to_json(d.trace);
    return result;
}

Json pairs_to_json(const std::vector<PairDeviation>& pairs) {
    Json rows = Json::array();
    for (const auto& p : pairs) {
        rows.push_back(
            Json{{"first", p.first}, {"second", p.second}, {"deviation", p.deviation}});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

HypothesisSpec hypothesis_from_json(const Json& j) {
    check_keys(j, "hypothesis", {"kind", "c", "w", "b", "data"});
    if (!j.contains("kind") || !j.at("kind").is_string()) {
        fail("hypothesis needs a string 'kind'");
    }
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "none") return HypothesisSpec::none();
    if (kind == "constant") return HypothesisSpec::constant(num_param(j, "c"));
    if (kind == "linear") {
        std::vector<double> w = point_param(j, "w");
        return HypothesisSpec::linear(std::move(w), num_param_or(j, "b", 0.0));
    }
    if (kind == "instances") {
        if (!j.contains("data") || !j.at("data").is_string()) {
            fail("hypothesis kind 'instances' needs a 'data' CSV path");
        }
        FormulaRows rows = load_formula_rows_csv(j.at("data").get<std::string>());
        // Instance rows are hypothesis-side by definition; the modality column
        // may still pick the group.
        for (auto& f : rows.rows) f.modality.kind = ModalityKind::Hypothetical;
        return HypothesisSpec::explicit_instances(std::move(rows.rows));
    }
    fail("unknown hypothesis kind '" + kind + "'");
}

int cmd_eval(const std::string& data, const std::string& theory_spec,
             const std::string& hypothesis_spec, const RunConfig& cfg) {
    const TheoryConfig tc = theory_from_json(spec_text(theory_spec));
    const FormulaRows rows = load_formula_rows_csv(data);
    FormulaSet obs(rows.x_dim, tc.x_metric, tc.y_metric);
    for (const auto& f : rows.rows) obs.add(f);

    HypothesisSpec h = HypothesisSpec::none();
    if (!hypothesis_spec.empty()) {
        h = hypothesis_from_json(parse_json(spec_text(hypothesis_spec), "hypothesis"));
    }

    const EvalMode mode = cfg.mode == "fast" ? EvalMode::Fast : EvalMode::BitExact;
    const auto started = std::chrono::steady_clock::now();
    const IncongruityResult res =
        total_incongruity(h, obs, tc.theory, tc.regularization, tc.top, mode);
    const auto elapsed = std::chrono::steady_clock::now() - started;

    Json report = base_report("eval", cfg);
    Json aspects = Json::array();
    for (const auto& a : res.aspects) {
        aspects.push_back(Json{{"label", a.label},
                               {"pair_count", a.pair_count},
                               {"incongruity", a.incongruity},
                               {"no_collisions", a.no_collisions}});
    }
    Json result;
    result["total"] = res.total;
    result["aspects"] = std::move(aspects);
    if (res.regularization) result["regularization"] = *res.regularization;
    report["result"] = std::move(result);
    if (cfg.mode == "fast") {
        report["timing_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    }
    emit(report, cfg);
    return 0;
}

// ---------------------------------------------------------------------------
// learn
// ---------------------------------------------------------------------------

BasisDescriptor basis_from_json(const Json& j) {
    check_keys(j, "basis", {"kind", "degree", "centers", "width"});
    if (!j.contains("kind") || !j.at("kind").is_string()) fail("basis needs a string 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "identity") return BasisDescriptor::identity();
    if (kind == "polynomial") {
        return BasisDescriptor::polynomial(static_cast<int>(num_param(j, "degree")));
    }
    if (kind == "radial") {
        if (!j.contains("centers") || !j.at("centers").is_array()) {
            fail("radial basis needs a 'centers' array of points");
        }
        std::vector<DataPoint> centers;
        for (const auto& c : j.at("centers")) {
            if (!c.is_array()) fail("radial centers must be arrays of numbers");
            DataPoint point;
            for (const auto& v : c) {
                if (!v.is_number()) fail("radial centers must hold numbers");
                point.push_back(v.get<double>());
            }
            centers.push_back(std::move(point));
        }
        return BasisDescriptor::radial(std::move(centers), num_param_or(j, "width", 1.0));
    }
    fail("unknown basis kind '" + kind + "'");
}

GdSchedule schedule_from_params(const Json& p) {
    GdSchedule sched;
    sched.eta0 = num_param_or(p, "eta0", sched.eta0);
    sched.iterations = static_cast<int>(num_param_or(p, "iterations", sched.iterations));
    return sched;
}

// Linear-family learners share the optional basis expansion (a Focusing step:
// the data is transformed before any fitting happens).
Json run_linear_family(const std::string& name, const Json& p, const LabeledDataset& s) {
    LabeledDataset focused = s;
    std::optional<TraceStep> focusing;
    if (p.contains("basis")) {
        focused = kernel_transform(s, basis_from_json(p.at("basis")));
        focusing = TraceStep{"Focusing",
                             {{"dim_in", static_cast<double>(s.x_dim)},
                              {"dim_out", static_cast<double>(focused.x_dim)}}};
    }
    Decision d;
    if (name == "logistic") {
        d = logistic_train(focused, schedule_from_params(p), num_param_or(p, "floor", 1e-12));
    } else if (name == "svm") {
        d = svm_train(focused, num_param(p, "alpha"), schedule_from_params(p));
    } else if (name == "svr") {
        d = svr_train(focused, num_param(p, "epsilon"), num_param(p, "lambda"),
                      schedule_from_params(p));
    } else {
        d = ridge_train(focused, num_param(p, "alpha"));
    }
    if (focusing) d.trace.insert(d.trace.begin(), *focusing);
    return decision_to_json(d);
}

Json run_learner(const std::string& name, const Json& p, const LabeledDataset& s,
                 const RunConfig& cfg) {
    if (name == "knn") {
        check_keys(p, "knn params", {"k", "query"});
        return decision_to_json(
            knn_predict(point_param(p, "query"), s, static_cast<int>(num_param(p, "k"))));
    }
    if (name == "ada-knn") {
        check_keys(p, "ada-knn params", {"k0", "delta", "c1", "rule", "query"});
        AdaRule rule = AdaRule::BoxedErrorRate;
        if (p.contains("rule")) {
            const std::string r = p.at("rule").get<std::string>();
            if (r == "boxed") {
                rule = AdaRule::BoxedErrorRate;
            } else if (r == "prose-bias") {
                rule = AdaRule::ProseBias;
            } else {
                fail("unknown ada-knn rule '" + r + "'");
            }
        }
        return decision_to_json(ada_knn_predict(point_param(p, "query"), s,
                                                static_cast<int>(num_param_or(p, "k0", 1)),
                                                num_param(p, "delta"), num_param(p, "c1"), rule));
    }
    if (name == "hoeffding-knn") {
        check_keys(p, "hoeffding-knn params", {"k0", "query"});
        return decision_to_json(hoeffding_knn_predict(point_param(p, "query"), s,
                                                      static_cast<int>(num_param_or(p, "k0", 1))));
    }
    if (name == "tree") {
        check_keys(p, "tree params", {"min_count", "purity", "query"});
        TreeConfig tc;
        tc.min_count = static_cast<std::size_t>(
            num_param_or(p, "min_count", static_cast<double>(tc.min_count)));
        tc.purity = num_param_or(p, "purity", tc.purity);
        const DecisionTree tree = tree_train(s, tc);
        return decision_to_json(tree_predict(tree, point_param(p, "query")));
    }
    if (name == "naive-bayes") {
        check_keys(p, "naive-bayes params", {"query"});
        return decision_to_json(naive_bayes_predict(point_param(p, "query"), s));
    }
    if (name == "logistic" || name == "svm" || name == "svr" || name == "ridge") {
        check_keys(p, name + " params",
                   {"alpha", "epsilon", "lambda", "eta0", "iterations", "floor", "basis"});
        return run_linear_family(name, p, s);
    }
    if (name == "linkage") {
        check_keys(p, "linkage params", {"linkage", "stop_count"});
        Linkage linkage = Linkage::Single;
        if (p.contains("linkage")) {
            const std::string l = p.at("linkage").get<std::string>();
            if (l == "single") {
                linkage = Linkage::Single;
            } else if (l == "average") {
                linkage = Linkage::Average;
            } else if (l == "max") {
                linkage = Linkage::Max;
            } else {
                fail("unknown linkage '" + l + "'");
            }
        }
        const auto stop =
            static_cast<std::size_t>(num_param_or(p, "stop_count", 1.0));
        const LinkageResult r = linkage_cluster(s.xs, linkage, stop);
        Json clusters = Json::array();
        for (const auto& c : r.clusters) clusters.push_back(c);
        Json trace = Json::array();
        for (const auto& m : r.dendrogram) {
            trace.push_back(Json{{"step", "Optimal selection"},
                                 {"values", Json{{"i", m.i}, {"j", m.j}, {"loss", m.loss}}}});
        }
        Json result;
        result["payload"] = Json{{"clusters", std::move(clusters)}};
        result["loss"] = r.dendrogram.empty() ? 0.0 : r.dendrogram.back().loss;
        result["abstained"] = false;
        result["trace"] = std::move(trace);
        return result;
    }
    if (name == "kmeans") {
        check_keys(p, "kmeans params", {"k", "rule", "max_passes"});
        KmeansRule rule = KmeansRule::ClosestMean;
        if (p.contains("rule")) {
            const std::string r = p.at("rule").get<std::string>();
            if (r == "closest-mean") {
                rule = KmeansRule::ClosestMean;
            } else if (r == "pairwise-w") {
                rule = KmeansRule::PairwiseW;
            } else {
                fail("unknown kmeans rule '" + r + "'");
            }
        }
        const int max_passes = static_cast<int>(num_param_or(p, "max_passes", 100));
        const KmeansResult r = kmeans_run(s.xs, static_cast<int>(num_param(p, "k")), cfg.seed,
                                          rule, max_passes);
        Json trace = Json::array();
        for (std::size_t i = 0; i < r.loss_history.size(); ++i) {
            trace.push_back(
                Json{{"step", "Fitting"},
                     {"values", Json{{"loss", r.loss_history[i]},
                                     {"pass", static_cast<double>(i + 1)}}}});
        }
        trace.push_back(Json{{"step", "Optimal selection"},
                             {"values", Json{{"converged", r.converged ? 1.0 : 0.0},
                                             {"passes", static_cast<double>(r.passes)}}}});
        Json result;
        result["payload"] = Json{{"assignment", r.assignment}};
        result["loss"] = r.loss_history.empty() ? 0.0 : r.loss_history.back();
        result["abstained"] = false;
        result["trace"] = std::move(trace);
        return result;
    }
    fail("unknown learner '" + name + "'");
}

int cmd_learn(const std::string& data, const std::string& learner_spec, const RunConfig& cfg) {
    const Json spec = parse_json(spec_text(learner_spec), "learner");
    check_keys(spec, "learner", {"name", "params"});
    if (!spec.contains("name") || !spec.at("name").is_string()) {
        fail("learner needs a string 'name'");
    }
    const Json params = spec.contains("params") ? spec.at("params") : Json::object();
    if (!params.is_object()) fail("learner params must be an object");

    const LabeledDataset s = load_dataset_csv(data);
    const auto started = std::chrono::steady_clock::now();
    Json result = run_learner(spec.at("name").get<std::string>(), params, s, cfg);
    const auto elapsed = std::chrono::steady_clock::now() - started;

    Json report = base_report("learn", cfg);
    report["learner"] = spec.at("name").get<std::string>();
    report["result"] = std::move(result);
    if (cfg.mode == "fast") {
        report["timing_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    }
    emit(report, cfg);
    return 0;
}

// ---------------------------------------------------------------------------
// scenario
// ---------------------------------------------------------------------------

Json run_scenario(const std::string& name, const Json& p, const std::string& data,
                  const std::string& travel_path) {
    if (name == "scales") {
        check_keys(p, "scales params", {"window", "tol", "agg"});
        ScalesAggregator agg = ScalesAggregator::Percentile80;
        if (p.contains("agg")) {
            const std::string a = p.at("agg").get<std::string>();
            if (a == "percentile80") {
                agg = ScalesAggregator::Percentile80;
            } else if (a == "max") {
                agg = ScalesAggregator::Max;
            } else {
                fail("unknown scales aggregator '" + a + "'");
            }
        }
        const ScalesReport r = scales_report(load_scales_csv(data), num_param_or(p, "window", 5.0),
                                             num_param_or(p, "tol", 1.0), agg);
        return Json{{"total", r.incongruity},
                    {"pairs", pairs_to_json(r.pairs)},
                    {"no_collisions", r.no_collisions}};
    }
    if (name == "monotone") {
        check_keys(p, "monotone params", {"x_gap", "y_tol", "monotone"});
        bool monotone = true;
        if (p.contains("monotone")) {
            if (!p.at("monotone").is_boolean()) fail("'monotone' must be a boolean");
            monotone = p.at("monotone").get<bool>();
        }
        const MonotoneReport r =
            monotone_dependence_report(load_log_csv(data), num_param_or(p, "x_gap", 100.0),
                                       num_param_or(p, "y_tol", 1.0), monotone);
        return Json{{"total", r.total},
                    {"opposite", Json{{"incongruity", r.opposite_incongruity},
                                      {"pairs", r.opposite_pairs},
                                      {"used", r.opposite_used}}},
                    {"near", Json{{"incongruity", r.near_incongruity},
                                  {"pairs", r.near_pairs}}}};
    }
    if (name == "itinerary" || name == "witnesses") {
        check_keys(p, name + " params", {});
        if (travel_path.empty()) fail("scenario '" + name + "' needs --travel");
        const TravelTimeTable travel = load_travel_csv(travel_path);
        const SightingBundle bundle = load_sightings_csv(data, travel);
        if (name == "witnesses") {
            Json scores = Json::array();
            for (const auto& w : witness_cross_incongruity(bundle.witnesses, travel)) {
                scores.push_back(Json{{"name", w.name}, {"score", w.score}});
            }
            return Json{{"scores", std::move(scores)}};
        }
        if (bundle.itineraries.empty()) {
            fail("sightings file names no itinerary (add rows with who = theory:NAME)");
        }
        if (bundle.itineraries.size() == 1) {
            const ItineraryReport r =
                itinerary_report(bundle.itineraries.front().second, bundle.witnesses, travel);
            return Json{{"name", bundle.itineraries.front().first},
                        {"total", r.total},
                        {"pairs", pairs_to_json(r.pairs)},
                        {"no_collisions", r.no_collisions}};
        }
        Json ranking = Json::array();
        for (const auto& r : rank_itineraries(bundle.itineraries, bundle.witnesses, travel)) {
            ranking.push_back(Json{{"name", r.name}, {"total", r.total}});
        }
        return Json{{"ranking", std::move(ranking)}};
    }
    fail("unknown scenario '" + name + "'");
}

int cmd_scenario(const std::string& data, const std::string& scenario_spec,
                 const std::string& travel_path, const RunConfig& cfg) {
    const Json spec = parse_json(spec_text(scenario_spec), "scenario");
    check_keys(spec, "scenario", {"name", "params"});
    if (!spec.contains("name") || !spec.at("name").is_string()) {
        fail("scenario needs a string 'name'");
    }
    const Json params = spec.contains("params") ? spec.at("params") : Json::object();
    if (!params.is_object()) fail("scenario params must be an object");

    const auto started = std::chrono::steady_clock::now();
    Json result = run_scenario(spec.at("name").get<std::string>(), params, data, travel_path);
    const auto elapsed = std::chrono::steady_clock::now() - started;

    Json report = base_report("scenario", cfg);
    report["scenario"] = spec.at("name").get<std::string>();
    report["result"] = std::move(result);
    if (cfg.mode == "fast") {
        report["timing_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    }
    emit(report, cfg);
    return 0;
}

// ---------------------------------------------------------------------------
// agg / check
// ---------------------------------------------------------------------------

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> values;
    std::stringstream in(text);
    std::string field;
    while (std::getline(in, field, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(field, &used);
            while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used]))) {
                ++used;
            }
            if (used != field.size()) throw std::invalid_argument(field);
            values.push_back(v);
        } catch (const std::exception&) {
            fail("--values expects comma-separated numbers, got '" + field + "'");
        }
    }
    if (values.empty()) fail("--values must list at least one number");
    return values;
}

ProperAggregator aggregator_by_id(const std::string& id, double p) {
    if (id == "mean") return ProperAggregator::mean();
    if (id == "rms") return ProperAggregator::rms();
    if (id == "max") return ProperAggregator::max();
    if (id == "geomean") return ProperAggregator::geomean();
    if (id == "median") return ProperAggregator::median();
    if (id == "percentile") return ProperAggregator::percentile(p);
    fail("unknown aggregator id '" + id + "'");
}

int cmd_agg(const std::string& id, double p, const std::string& values_text, const std::string& order,
            const RunConfig& cfg) {
    const std::vector<double> values = parse_values(values_text);
    const ProperAggregator agg = aggregator_by_id(id, p);
    Reduction reduction = Reduction::Sequential;
    if (order == "canonical") reduction = Reduction::Canonical;
    if (order == "chunked") reduction = Reduction::Chunked;
    const double value = agg.aggregate(values, reduction);

    Json report = base_report("agg", cfg);
    report["result"] =
        Json{{"id", id}, {"value", value}, {"count", values.size()}};
    emit(report, cfg);
    return 0;
}

Json axiom_to_json(const AxiomCheckResult& r) {
    Json j;
    j["pass"] = r.pass;
    if (r.witness) {
        j["witness"] = Json{{"detail", r.witness->detail},
                            {"input", r.witness->input},
                            {"expected", r.witness->expected},
                            {"actual", r.witness->actual}};
    }
    return j;
}

int cmd_check(const std::string& id, double p, int trials, const RunConfig& cfg) {
    AggregateFn fn;
    std::optional<RecursiveInterp> interp;
    AxiomCheckOptions opt;
    opt.trials = trials;
    opt.seed = cfg.seed == 0 ? 1 : cfg.seed;
    if (id == "fake") {
        fn = min_minus_one_aggregator();
    } else {
        const ProperAggregator agg = aggregator_by_id(id, p);
        fn = to_fn(agg);
        if (agg.id() == ProperAggregator::Id::Recursive) interp = agg.interp();
        // Respect the restricted domains: squaring needs nonnegative inputs
        // and the geometric mean needs positive ones.
        if (id == "rms") opt.lo = 0.0;
        if (id == "geomean") opt.lo = 1e-3;
    }

    const AxiomCheckReport axioms = check_proper_axioms(fn, opt);
    bool pass = axioms.all_pass();

    Json report = base_report("check", cfg);
    Json result;
    result["id"] = id;
    result["trials"] = trials;
    result["axioms"] = Json{{"monotony", axiom_to_json(axioms.monotony)},
                            {"idempotence", axiom_to_json(axioms.idempotence)},
                            {"tautology", axiom_to_json(axioms.tautology)}};

    if (interp) {
        // Recursive interpretations also promise order invariance; spot-check
        // it on random multisets with random permutations.
        std::mt19937_64 rng(opt.seed + 7);
        std::uniform_int_distribution<int> size_dist(1, 30);
        std::uniform_real_distribution<double> value_dist(opt.lo, opt.hi);
        OrderInvarianceReport worst;
        for (int t = 0; t < 50; ++t) {
            std::vector<double> g(static_cast<std::size_t>(size_dist(rng)));
            for (auto& v : g) v = value_dist(rng);
            const OrderInvarianceReport r = check_order_invariance(g, *interp, 20, rng());
            if (!r.pass) worst.pass = false;
            worst.max_rel_discrepancy =
                std::max(worst.max_rel_discrepancy, r.max_rel_discrepancy);
        }
        pass = pass && worst.pass;
        result["order_invariance"] = Json{{"pass", worst.pass},
                                          {"max_rel_discrepancy", worst.max_rel_discrepancy}};
    }

    result["pass"] = pass;
    report["result"] = std::move(result);
    emit(report, cfg);
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"loh: incongruity evaluation, learner runs and aggregation checks"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string data;
    std::string theory_spec;
    std::string hypothesis_spec;
    std::string learner_spec;
    std::string scenario_spec;
    std::string travel_path;
    std::string agg_id;
    std::string values_text;
    std::string order = "sequential";
    double percent = 50.0;
    int trials = 1000;

    CLI::App* eval = app.add_subcommand("eval", "Evaluate a theory on observations");
    eval->add_option("--data", data, "Formula CSV: x1..xn,y[,mod]")->required();
    eval->add_option("--theory", theory_spec, "Theory JSON (inline or file)")->required();
    eval->add_option("--hypothesis", hypothesis_spec,
                     "Hypothesis JSON (inline or file); default none");
    add_mode_flags(eval, cfg);

    CLI::App* learn = app.add_subcommand("learn", "Run a registered learner");
    learn->add_option("--data", data, "Dataset CSV: x1..xn,y")->required();
    learn->add_option("--learner", learner_spec, "Learner JSON {name, params} (inline or file)")
        ->required();
    add_mode_flags(learn, cfg);

    CLI::App* scenario = app.add_subcommand("scenario", "Run an applied scenario");
    scenario->add_option("--data", data, "Scenario CSV input")->required();
    scenario->add_option("--scenario", scenario_spec, "Scenario JSON {name, params}")->required();
    scenario->add_option("--travel", travel_path, "Travel-time table CSV");
    add_mode_flags(scenario, cfg);

    CLI::App* agg = app.add_subcommand("agg", "Evaluate one aggregator on a value list");
    agg->add_option("--id", agg_id, "mean|rms|max|geomean|median|percentile")->required();
    agg->add_option("--values", values_text, "Comma-separated numbers")->required();
    agg->add_option("--p", percent, "Percentile rank (with --id percentile)");
    agg->add_option("--order", order, "Fold order: sequential|canonical|chunked")
        ->check(CLI::IsMember({"sequential", "canonical", "chunked"}));
    add_mode_flags(agg, cfg);

    CLI::App* check = app.add_subcommand("check", "Run the properness axiom oracle");
    check->add_option("--agg", agg_id, "mean|rms|max|geomean|median|percentile|fake")->required();
    check->add_option("--p", percent, "Percentile rank (with --agg percentile)");
    check->add_option("--trials", trials, "Random trials per axiom (default 1000)");
    add_mode_flags(check, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed()) return cmd_eval(data, theory_spec, hypothesis_spec, cfg);
        if (learn->parsed()) return cmd_learn(data, learner_spec, cfg);
        if (scenario->parsed()) return cmd_scenario(data, scenario_spec, travel_path, cfg);
        if (agg->parsed()) return cmd_agg(agg_id, percent, values_text, order, cfg);
        if (check->parsed()) return cmd_check(agg_id, percent, trials, cfg);
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
