#pragma once

#include <string>
#include <utility>
#include <vector>

#include "loh/theory.hpp"

namespace loh {

// ---------------------------------------------------------------------------
// Two bathroom scales: do they agree within a pound when read minutes apart?
// ---------------------------------------------------------------------------

struct ScaleReading {
    int scale_id = 1;     // 1 or 2
    double time = 0.0;    // minutes
    double weight = 0.0;  // pounds, positive
};

enum class ScalesAggregator { Percentile80, Max };

// One colliding pair in a scenario report; indices refer to the caller's
// input lists.
struct PairDeviation {
    std::size_t first = 0;
    std::size_t second = 0;
    double deviation = 0.0;
};

struct ScalesReport {
    double incongruity = 0.0;
    std::vector<PairDeviation> pairs;  // sorted by deviation, largest first
    bool no_collisions = false;
};

// Pairs a scale-1 reading with every scale-2 reading taken within `window`
// minutes; each pair deviates by the weight gap beyond `tol` pounds. The
// total is the 80th percentile (or the maximum) of the deviations.
ScalesReport scales_report(const std::vector<ScaleReading>& readings, double window = 5.0,
                           double tol = 1.0,
                           ScalesAggregator agg = ScalesAggregator::Percentile80);

// ---------------------------------------------------------------------------
// Is weight a nondecreasing function of consumed calories?
// ---------------------------------------------------------------------------

struct DailyLog {
    int day = 0;
    double calories = 0.0;  // nonnegative
    double weight = 0.0;    // pounds
};

struct MonotoneReport {
    double total = 0.0;
    // Weight moving against a clear calorie change (> x_gap apart).
    double opposite_incongruity = 0.0;
    std::size_t opposite_pairs = 0;
    bool opposite_used = true;  // false when monotonicity is not assumed
    // Weight moving while calories stayed nearly constant (< x_gap apart).
    double near_incongruity = 0.0;
    std::size_t near_pairs = 0;
};

// Two aspects over all ordered day pairs, each deviating by the weight gap
// beyond y_tol, mean-aggregated; the total is their sum. With
// monotone = false only the near-constant aspect applies.
MonotoneReport monotone_dependence_report(const std::vector<DailyLog>& log, double x_gap = 100.0,
                                          double y_tol = 1.0, bool monotone = true);

// ---------------------------------------------------------------------------
// An itinerary against witness sightings: is every movement feasible?
// ---------------------------------------------------------------------------

struct Sighting {
    std::string who;     // witness name; ignored on the itinerary side
    double time = 0.0;   // minutes
    int location = 0;    // index into the travel table
};

struct ItineraryReport {
    double total = 0.0;
    // first = itinerary sighting index, second = witness sighting index.
    std::vector<PairDeviation> pairs;  // slack per pair, in pair order
    bool no_collisions = false;
};

// Every itinerary sighting is paired with every witness sighting; the pair's
// slack is the travel time between the two locations minus the time gap,
// clamped at zero (how much faster than possible the move would have been).
// The total is the mean slack.
ItineraryReport itinerary_report(const std::vector<Sighting>& itinerary,
                                 const std::vector<Sighting>& witnesses,
                                 const TravelTimeTable& travel);

struct RankedItinerary {
    std::string name;
    double total = 0.0;
};

// Scores each named itinerary against the same witness record and sorts
// ascending by total (lowest incongruity first; ties keep input order).
std::vector<RankedItinerary> rank_itineraries(
    const std::vector<std::pair<std::string, std::vector<Sighting>>>& itineraries,
    const std::vector<Sighting>& witnesses, const TravelTimeTable& travel);

struct WitnessScore {
    std::string name;
    double score = 0.0;
};

// Each witness's sightings, treated as an itinerary against everyone else's
// observations. Needs at least two distinct witnesses. Sorted by score,
// largest first (ties keep first-appearance order).
std::vector<WitnessScore> witness_cross_incongruity(const std::vector<Sighting>& witnesses,
                                                    const TravelTimeTable& travel);

}  // namespace loh
