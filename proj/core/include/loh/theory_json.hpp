#pragma once

#include <string>

#include "loh/theory.hpp"

namespace loh {

// A complete theory configuration: the aspects plus everything the engine
// needs around them. The metrics describe how the data's x and y sides are
// measured (defaults: Euclidean x, absolute y).
struct TheoryConfig {
    IncongruityTheory theory;
    RegularizationTerm regularization;
    TotalAggregator top;
    MetricDef x_metric;
    MetricDef y_metric;
};

// JSON schema (see docs/theory-schema.md):
// {
//   "name": string,
//   "aspects": [ { "condition": <tree>, "deviation": {id, params},
//                  "aggregator": {id, params}, "label": string } ],
//   "regularization": {id, params},   optional, default none
//   "top": {id, params},              optional, default passthrough
//   "metrics": {"x": {id, params}, "y": {id, params}}   optional
// }
// Parsing is strict: unknown keys or ids raise SchemaError. The round trip
// theory_from_json . theory_to_json is the identity on emitted documents.
TheoryConfig theory_from_json(const std::string& text);
std::string theory_to_json(const TheoryConfig& config);

}  // namespace loh
