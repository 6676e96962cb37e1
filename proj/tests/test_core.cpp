#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <vector>

#include "doctest.h"
#include "loh/core.hpp"

using namespace loh;

namespace {

TravelTimeTable toy_table() {
    TravelTimeTable t;
    t.locations = {"A", "B", "C"};
    t.minutes = {{0, 60, 15}, {60, 0, 45}, {15, 45, 0}};
    return t;
}

DataPoint random_point(std::mt19937_64& rng, std::size_t dim) {
    std::uniform_real_distribution<double> dist(-50.0, 50.0);
    DataPoint x(dim);
    for (auto& v : x) v = dist(rng);
    return x;
}

}  // namespace

TEST_CASE("euclidean distance: 3-4-5 triangle") {
    const auto m = MetricDef::euclidean(MetricSpace::X);
    CHECK(m(DataPoint{0, 0}, DataPoint{3, 4}) == 5.0);
}

TEST_CASE("rho_x and rho_y pull the right sides of a formula pair") {
    const auto mx = MetricDef::euclidean(MetricSpace::X);
    const auto my = MetricDef::absolute(MetricSpace::Y);
    const Formula f1 = make_formula(observed(), DataPoint{0, 0}, 2.0);
    const Formula f2 = make_formula(hypothetical(), DataPoint{3, 4}, 7.0);
    CHECK(rho_x(f1, f2, mx) == 5.0);
    CHECK(rho_y(f1, f2, my) == 5.0);
}

TEST_CASE("sign-agreement feedback distance") {
    const auto m = MetricDef::sign_agreement();
    CHECK(m(DataPoint{-0.5}, DataPoint{1.0}) == 1.5);  // disagree: |y2 - y1|
    CHECK(m(DataPoint{0.7}, DataPoint{1.0}) == 0.0);   // agree: zero
    CHECK(m(DataPoint{-2.0}, DataPoint{-0.1}) == 0.0);
    CHECK(m(DataPoint{0.0}, DataPoint{1.0}) == 0.0);  // product 0 counts as agreement
}

TEST_CASE("epsilon-insensitive feedback distance") {
    const auto m = MetricDef::epsilon_insensitive(1.0);
    CHECK(m(DataPoint{0.0}, DataPoint{0.5}) == 0.0);
    CHECK(m(DataPoint{0.0}, DataPoint{2.5}) == 1.5);
    CHECK_THROWS_AS(MetricDef::epsilon_insensitive(-0.1), DomainError);
}

TEST_CASE("discrete01 and absolute distances") {
    const auto d = MetricDef::discrete01(MetricSpace::Y);
    CHECK(d(DataPoint{1.0}, DataPoint{1.0}) == 0.0);
    CHECK(d(DataPoint{1.0}, DataPoint{1.0000001}) == 1.0);
    const auto a = MetricDef::absolute(MetricSpace::Y);
    CHECK(a(DataPoint{-2.0}, DataPoint{3.0}) == 5.0);
}

TEST_CASE("travel-time distance reads the table both ways") {
    const auto m = MetricDef::travel_time(toy_table());
    CHECK(m(DataPoint{0.0}, DataPoint{1.0}) == 60.0);
    CHECK(m(DataPoint{1.0}, DataPoint{0.0}) == 60.0);
    CHECK(m(DataPoint{2.0}, DataPoint{2.0}) == 0.0);
    CHECK_THROWS_AS(m(DataPoint{0.0}, DataPoint{3.0}), DomainError);
}

TEST_CASE("travel table validation") {
    TravelTimeTable t = toy_table();
    t.minutes[0][1] = -1.0;
    CHECK_THROWS_AS(t.validate(), SchemaError);
    t = toy_table();
    t.minutes[0][1] = 61.0;  // asymmetric
    CHECK_THROWS_AS(t.validate(), SchemaError);
    t = toy_table();
    t.minutes[1][1] = 5.0;  // nonzero diagonal
    CHECK_THROWS_AS(t.validate(), SchemaError);
    t = toy_table();
    t.minutes.pop_back();
    CHECK_THROWS_AS(t.validate(), SchemaError);
    CHECK(toy_table().index_of("C") == 2);
    CHECK(toy_table().index_of("Z") == -1);
}

TEST_CASE("metric sanity: randomized metric axioms") {
    std::mt19937_64 rng(11);
    const auto mx = MetricDef::euclidean(MetricSpace::X);
    const auto ab = MetricDef::absolute(MetricSpace::Y);
    const auto d01 = MetricDef::discrete01(MetricSpace::Y);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t dim = 1 + static_cast<std::size_t>(trial % 4);
        const DataPoint a = random_point(rng, dim);
        const DataPoint b = random_point(rng, dim);
        const DataPoint c = random_point(rng, dim);
        for (const auto* m : {&mx, &ab, &d01}) {
            if (m != &mx && dim != 1) continue;  // scalar metrics
            const double dab = (*m)(a, b);
            CHECK(dab >= 0.0);
            CHECK(dab == (*m)(b, a));
            CHECK((*m)(a, a) == 0.0);
            CHECK((*m)(a, c) <= dab + (*m)(b, c) + 1e-9);
        }
    }
}

TEST_CASE("feedback scalars and vectors") {
    const Feedback s{2.5};
    CHECK(s.is_scalar());
    CHECK(s.scalar() == 2.5);
    CHECK(s.dim() == 1);
    const Feedback v{DataPoint{1, 2, 3}};
    CHECK_FALSE(v.is_scalar());
    CHECK(v.dim() == 3);
    CHECK_THROWS_AS(v.scalar(), DomainError);
    CHECK(Feedback{2.5} == Feedback{DataPoint{2.5}});
    CHECK_THROWS_AS(Feedback(DataPoint{}), DomainError);
}

TEST_CASE("modalities carry kind and group") {
    CHECK(observed(2).kind == ModalityKind::Observation);
    CHECK(observed(2).group == 2);
    CHECK(hypothetical().group == 0);
    CHECK(observed(1) == observed(1));
    CHECK_FALSE(observed(1) == hypothetical(1));
    CHECK_FALSE(observed(1) == observed(2));
}

TEST_CASE("formula sets keep duplicates (multiset semantics)") {
    FormulaSet g(2, MetricDef::euclidean(MetricSpace::X), MetricDef::absolute(MetricSpace::Y));
    const Formula f = make_formula(observed(), DataPoint{1, 2}, 3.0);
    g.add(f);
    g.add(f);
    CHECK(g.size() == 2);
    CHECK(g.contains(f));
    CHECK(g[0] == g[1]);
    CHECK_THROWS_AS(g.add(make_formula(observed(), DataPoint{1}, 3.0)), DomainError);
}

TEST_CASE("formula set construction guards") {
    CHECK_THROWS_AS(FormulaSet(0, MetricDef::euclidean(MetricSpace::X),
                               MetricDef::absolute(MetricSpace::Y)),
                    DomainError);
    CHECK_THROWS_AS(FormulaSet(1, MetricDef::absolute(MetricSpace::Y),
                               MetricDef::absolute(MetricSpace::Y)),
                    DomainError);
    CHECK_THROWS_AS(FormulaSet(1, MetricDef::euclidean(MetricSpace::X),
                               MetricDef::euclidean(MetricSpace::X)),
                    DomainError);
}
