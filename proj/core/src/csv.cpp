#include "loh/csv.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace loh {

namespace {

struct CsvLine {
    std::size_t number = 0;  // 1-based line number in the file
    std::vector<std::string> fields;
};

struct CsvTable {
    std::string path;
    CsvLine header;
    std::vector<CsvLine> rows;
};

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& what) {
    throw SchemaError(path + ":" + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

CsvTable load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path + ": cannot open file");
    CsvTable table;
    table.path = path;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (trim(line).empty()) continue;
        CsvLine row{number, split(line)};
        if (table.header.number == 0) {
            table.header = std::move(row);
        } else {
            table.rows.push_back(std::move(row));
        }
    }
    if (table.header.number == 0) throw SchemaError(path + ": empty file, header row required");
    return table;
}

double parse_number(const CsvTable& table, const CsvLine& row, std::size_t col) {
    const std::string& field = row.fields[col];
    const char* begin = field.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (field.empty() || end != begin + field.size()) {
        fail(table.path, row.number, "field " + std::to_string(col + 1) + " is not a number: '" +
                                         field + "'");
    }
    return value;
}

void expect_fields(const CsvTable& table, const CsvLine& row, std::size_t n) {
    if (row.fields.size() != n) {
        fail(table.path, row.number,
             "expected " + std::to_string(n) + " fields, got " + std::to_string(row.fields.size()));
    }
}

// Header must start with x1..xn in order; returns n. `extra` names the
// columns required after the x block.
std::size_t expect_x_header(const CsvTable& table, const std::vector<std::string>& extra,
                            bool optional_last = false) {
    const auto& fields = table.header.fields;
    std::size_t n = 0;
    while (n < fields.size() && fields[n] == "x" + std::to_string(n + 1)) ++n;
    if (n == 0) fail(table.path, table.header.number, "header must start with column x1");
    const std::size_t required = optional_last ? extra.size() - 1 : extra.size();
    if (fields.size() < n + required || fields.size() > n + extra.size()) {
        fail(table.path, table.header.number, "header must be x1..xn followed by the named columns");
    }
    for (std::size_t i = n; i < fields.size(); ++i) {
        if (fields[i] != extra[i - n]) {
            fail(table.path, table.header.number,
                 "unexpected header column '" + fields[i] + "', expected '" + extra[i - n] + "'");
        }
    }
    return n;
}

void expect_header(const CsvTable& table, const std::vector<std::string>& names) {
    if (table.header.fields != names) {
        std::string want;
        for (const auto& n : names) want += (want.empty() ? "" : ",") + n;
        fail(table.path, table.header.number, "header must be exactly '" + want + "'");
    }
}

Modality parse_modality(const CsvTable& table, const CsvLine& row, const std::string& field) {
    std::string kind = field;
    int group = 0;
    if (const auto colon = field.find(':'); colon != std::string::npos) {
        kind = field.substr(0, colon);
        const std::string rest = field.substr(colon + 1);
        const char* begin = rest.c_str();
        char* end = nullptr;
        const long g = std::strtol(begin, &end, 10);
        if (rest.empty() || end != begin + rest.size()) {
            fail(table.path, row.number, "bad modality group in '" + field + "'");
        }
        group = static_cast<int>(g);
    }
    if (kind == "obs") return observed(group);
    if (kind == "hyp") return hypothetical(group);
    fail(table.path, row.number, "modality must be obs[:group] or hyp[:group], got '" + field + "'");
}

}  // namespace

LabeledDataset load_dataset_csv(const std::string& path) {
    const CsvTable table = load_table(path);
    const std::size_t n = expect_x_header(table, {"y"});
    LabeledDataset s;
    s.x_dim = n;
    for (const auto& row : table.rows) {
        expect_fields(table, row, n + 1);
        DataPoint x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = parse_number(table, row, i);
        s.add(std::move(x), parse_number(table, row, n));
    }
    return s;
}

FormulaRows load_formula_rows_csv(const std::string& path) {
    const CsvTable table = load_table(path);
    const std::size_t n = expect_x_header(table, {"y", "mod"}, /*optional_last=*/true);
    const bool has_mod = table.header.fields.size() == n + 2;
    FormulaRows out;
    out.x_dim = n;
    for (const auto& row : table.rows) {
        expect_fields(table, row, table.header.fields.size());
        DataPoint x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = parse_number(table, row, i);
        const double y = parse_number(table, row, n);
        const Modality mod = has_mod ? parse_modality(table, row, row.fields[n + 1]) : observed();
        out.rows.push_back(make_formula(mod, std::move(x), Feedback(y)));
    }
    return out;
}

std::vector<ScaleReading> load_scales_csv(const std::string& path) {
    const CsvTable table = load_table(path);
    expect_header(table, {"scale_id", "time", "weight"});
    std::vector<ScaleReading> readings;
    readings.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        expect_fields(table, row, 3);
        ScaleReading r;
        const double id = parse_number(table, row, 0);
        if (id != 1.0 && id != 2.0) fail(table.path, row.number, "scale_id must be 1 or 2");
        r.scale_id = static_cast<int>(id);
        r.time = parse_number(table, row, 1);
        r.weight = parse_number(table, row, 2);
        if (r.weight <= 0.0) fail(table.path, row.number, "weight must be positive");
        readings.push_back(r);
    }
    return readings;
}

std::vector<DailyLog> load_log_csv(const std::string& path) {
    const CsvTable table = load_table(path);
    expect_header(table, {"day", "calories", "weight"});
    std::vector<DailyLog> log;
    log.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        expect_fields(table, row, 3);
        DailyLog e;
        e.day = static_cast<int>(parse_number(table, row, 0));
        e.calories = parse_number(table, row, 1);
        e.weight = parse_number(table, row, 2);
        if (e.calories < 0.0) fail(table.path, row.number, "calories must be nonnegative");
        log.push_back(e);
    }
    return log;
}

SightingBundle load_sightings_csv(const std::string& path, const TravelTimeTable& travel) {
    travel.validate();
    const CsvTable table = load_table(path);
    expect_header(table, {"who", "time", "location"});
    SightingBundle bundle;
    for (const auto& row : table.rows) {
        expect_fields(table, row, 3);
        Sighting s;
        s.who = row.fields[0];
        if (s.who.empty()) fail(table.path, row.number, "who must not be empty");
        s.time = parse_number(table, row, 1);
        const std::string& loc = row.fields[2];
        if (int idx = travel.index_of(loc); idx >= 0) {
            s.location = idx;
        } else {
            const char* begin = loc.c_str();
            char* end = nullptr;
            const long parsed = std::strtol(begin, &end, 10);
            if (loc.empty() || end != begin + loc.size() || parsed < 0 ||
                static_cast<std::size_t>(parsed) >= travel.size()) {
                fail(table.path, row.number,
                     "location '" + loc + "' is neither a travel-table name nor a valid index");
            }
            s.location = static_cast<int>(parsed);
        }
        if (s.who == "theory" || s.who.rfind("theory:", 0) == 0) {
            std::string name = s.who == "theory" ? "theory" : s.who.substr(7);
            if (name.empty()) fail(table.path, row.number, "itinerary name must not be empty");
            auto it = std::find_if(bundle.itineraries.begin(), bundle.itineraries.end(),
                                   [&](const auto& entry) { return entry.first == name; });
            if (it == bundle.itineraries.end()) {
                bundle.itineraries.push_back({name, {}});
                it = bundle.itineraries.end() - 1;
            }
            s.who = name;
            it->second.push_back(std::move(s));
        } else {
            bundle.witnesses.push_back(std::move(s));
        }
    }
    return bundle;
}

TravelTimeTable load_travel_csv(const std::string& path) {
    const CsvTable table = load_table(path);
    TravelTimeTable travel;
    travel.locations = table.header.fields;
    for (const auto& name : travel.locations) {
        if (name.empty()) fail(table.path, table.header.number, "location names must not be empty");
    }
    if (table.rows.size() != travel.locations.size()) {
        throw SchemaError(path + ": expected " + std::to_string(travel.locations.size()) +
                          " matrix rows, got " + std::to_string(table.rows.size()));
    }
    for (const auto& row : table.rows) {
        expect_fields(table, row, travel.locations.size());
        std::vector<double> minutes(travel.locations.size());
        for (std::size_t i = 0; i < minutes.size(); ++i) minutes[i] = parse_number(table, row, i);
        travel.minutes.push_back(std::move(minutes));
    }
    try {
        travel.validate();
    } catch (const SchemaError& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return travel;
}

}  // namespace loh
