#pragma once

#include <string>
#include <utility>
#include <vector>

#include "loh/learners/dataset.hpp"
#include "loh/scenarios.hpp"

namespace loh {

// CSV contracts (UTF-8, '.' decimal, ',' separator, first row is the header):
//   datasets:   x1..xn,y          one row per observation
//   formulas:   x1..xn,y[,mod]    mod is obs[:group] or hyp[:group]; default obs:0
//   scales:     scale_id,time,weight
//   daily log:  day,calories,weight
//   sightings:  who,time,location location is a travel-table name or index;
//                                 who = "theory" (or "theory:NAME") marks
//                                 itinerary rows, anything else is a witness
//   travel:     header of location names, then a square minutes matrix
// Violations raise SchemaError with file:line diagnostics.

LabeledDataset load_dataset_csv(const std::string& path);

struct FormulaRows {
    std::vector<Formula> rows;
    std::size_t x_dim = 0;
};

FormulaRows load_formula_rows_csv(const std::string& path);

std::vector<ScaleReading> load_scales_csv(const std::string& path);

std::vector<DailyLog> load_log_csv(const std::string& path);

struct SightingBundle {
    std::vector<Sighting> witnesses;
    // Named itineraries from "theory" rows, in first-appearance order.
    std::vector<std::pair<std::string, std::vector<Sighting>>> itineraries;
};

SightingBundle load_sightings_csv(const std::string& path, const TravelTimeTable& travel);

TravelTimeTable load_travel_csv(const std::string& path);

}  // namespace loh
