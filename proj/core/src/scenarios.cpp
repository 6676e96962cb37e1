#include "loh/scenarios.hpp"

#include <algorithm>

namespace loh {

namespace {

const Aspect& only_aspect(const IncongruityTheory& theory) { return theory.aspects().front(); }

}  // namespace

ScalesReport scales_report(const std::vector<ScaleReading>& readings, double window, double tol,
                           ScalesAggregator agg) {
    if (window < 0.0) throw DomainError("pairing window must be nonnegative");
    if (tol < 0.0) throw DomainError("weight tolerance must be nonnegative");

    FormulaSet obs(1, MetricDef::absolute(MetricSpace::X), MetricDef::absolute(MetricSpace::Y));
    for (const auto& r : readings) {
        if (r.scale_id != 1 && r.scale_id != 2) throw SchemaError("scale id must be 1 or 2");
        if (r.weight <= 0.0) throw SchemaError("weight must be positive");
        obs.add(make_formula(observed(r.scale_id), {r.time}, Feedback(r.weight)));
    }

    const IncongruityTheory theory(
        "scale agreement",
        {Aspect{cond::all_of({cond::modality_is(1, observed(1)), cond::modality_is(2, observed(2)),
                              cond::x_dist_leq(window)}),
                DeviationFn::hinge_above(tol),
                agg == ScalesAggregator::Max ? ProperAggregator::max()
                                             : ProperAggregator::percentile(80.0),
                "weight gap"}});

    const auto h = HypothesisSpec::none();
    const auto result = total_incongruity(h, obs, theory, RegularizationTerm::none(),
                                          TotalAggregator::passthrough());

    const auto model = build_full_model(h, obs, theory);
    const auto pairs = colliding_pairs(model, only_aspect(theory));
    const auto devs = aspect_deviations(model, only_aspect(theory));

    ScalesReport report;
    report.incongruity = result.total;
    report.no_collisions = result.aspects.front().no_collisions;
    report.pairs.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        report.pairs.push_back({pairs[i].first, pairs[i].second, devs[i]});
    }
    std::stable_sort(report.pairs.begin(), report.pairs.end(),
                     [](const PairDeviation& a, const PairDeviation& b) {
                         return a.deviation > b.deviation;
                     });
    return report;
}

MonotoneReport monotone_dependence_report(const std::vector<DailyLog>& log, double x_gap,
                                          double y_tol, bool monotone) {
    if (log.size() < 2) throw DomainError("dependence check needs at least two entries");
    if (x_gap < 0.0) throw DomainError("calorie gap must be nonnegative");
    if (y_tol < 0.0) throw DomainError("weight tolerance must be nonnegative");

    FormulaSet obs(1, MetricDef::absolute(MetricSpace::X), MetricDef::absolute(MetricSpace::Y));
    for (const auto& e : log) {
        if (e.calories < 0.0) throw SchemaError("calories must be nonnegative");
        obs.add(make_formula(observed(), {e.calories}, Feedback(e.weight)));
    }

    const Aspect opposite{cond::all_of({cond::x_less(), cond::y_greater(), cond::x_dist_gt(x_gap)}),
                          DeviationFn::hinge_above(y_tol), ProperAggregator::mean(),
                          "weight against calories"};
    const Aspect near{cond::all_of({cond::y_greater(), cond::x_dist_lt(x_gap)}),
                      DeviationFn::hinge_above(y_tol), ProperAggregator::mean(),
                      "weight under steady calories"};
    std::vector<Aspect> aspects;
    if (monotone) aspects.push_back(opposite);
    aspects.push_back(near);
    const IncongruityTheory theory("monotone dependence", std::move(aspects));

    const auto result = total_incongruity(HypothesisSpec::none(), obs, theory,
                                          RegularizationTerm::none(), TotalAggregator::sum());

    MonotoneReport report;
    report.total = result.total;
    report.opposite_used = monotone;
    std::size_t idx = 0;
    if (monotone) {
        report.opposite_incongruity = result.aspects[idx].incongruity;
        report.opposite_pairs = result.aspects[idx].pair_count;
        ++idx;
    }
    report.near_incongruity = result.aspects[idx].incongruity;
    report.near_pairs = result.aspects[idx].pair_count;
    return report;
}

ItineraryReport itinerary_report(const std::vector<Sighting>& itinerary,
                                 const std::vector<Sighting>& witnesses,
                                 const TravelTimeTable& travel) {
    travel.validate();
    auto check = [&](const Sighting& s) {
        if (s.location < 0 || static_cast<std::size_t>(s.location) >= travel.size()) {
            throw DomainError("sighting location index out of range for travel table");
        }
    };

    FormulaSet obs(1, MetricDef::absolute(MetricSpace::X), MetricDef::travel_time(travel));
    for (const auto& s : witnesses) {
        check(s);
        obs.add(make_formula(observed(), {s.time}, Feedback(static_cast<double>(s.location))));
    }
    std::vector<Formula> instances;
    instances.reserve(itinerary.size());
    for (const auto& s : itinerary) {
        check(s);
        instances.push_back(
            make_formula(hypothetical(), {s.time}, Feedback(static_cast<double>(s.location))));
    }

    const IncongruityTheory theory(
        "itinerary feasibility",
        {Aspect{cond::all_of({cond::modality_is(1, hypothetical()), cond::modality_is(2, observed())}),
                DeviationFn::travel_slack(), ProperAggregator::mean(), "travel slack"}});

    const auto h = HypothesisSpec::explicit_instances(std::move(instances), "itinerary");
    const auto result = total_incongruity(h, obs, theory, RegularizationTerm::none(),
                                          TotalAggregator::passthrough());

    const auto model = build_full_model(h, obs, theory);
    const auto pairs = colliding_pairs(model, only_aspect(theory));
    const auto devs = aspect_deviations(model, only_aspect(theory));

    ItineraryReport report;
    report.total = result.total;
    report.no_collisions = result.aspects.front().no_collisions;
    report.pairs.reserve(pairs.size());
    const std::size_t m = model.observation_count;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        report.pairs.push_back({pairs[i].first - m, pairs[i].second, devs[i]});
    }
    return report;
}

std::vector<RankedItinerary> rank_itineraries(
    const std::vector<std::pair<std::string, std::vector<Sighting>>>& itineraries,
    const std::vector<Sighting>& witnesses, const TravelTimeTable& travel) {
    std::vector<RankedItinerary> ranking;
    ranking.reserve(itineraries.size());
    for (const auto& [name, sightings] : itineraries) {
        ranking.push_back({name, itinerary_report(sightings, witnesses, travel).total});
    }
    std::stable_sort(ranking.begin(), ranking.end(),
                     [](const RankedItinerary& a, const RankedItinerary& b) {
                         return a.total < b.total;
                     });
    return ranking;
}

std::vector<WitnessScore> witness_cross_incongruity(const std::vector<Sighting>& witnesses,
                                                    const TravelTimeTable& travel) {
    std::vector<std::string> names;
    for (const auto& s : witnesses) {
        if (std::find(names.begin(), names.end(), s.who) == names.end()) names.push_back(s.who);
    }
    if (names.size() < 2) throw DomainError("cross-incongruity needs at least two witnesses");

    std::vector<WitnessScore> scores;
    scores.reserve(names.size());
    for (const auto& name : names) {
        std::vector<Sighting> own, others;
        for (const auto& s : witnesses) (s.who == name ? own : others).push_back(s);
        scores.push_back({name, itinerary_report(own, others, travel).total});
    }
    std::stable_sort(scores.begin(), scores.end(),
                     [](const WitnessScore& a, const WitnessScore& b) { return a.score > b.score; });
    return scores;
}

}  // namespace loh
