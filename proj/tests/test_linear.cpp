#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <variant>
#include <vector>

#include "doctest.h"
#include "loh/learners/linear.hpp"

using namespace loh;

namespace {

LabeledDataset scalar_rows(std::vector<std::pair<double, double>> rows) {
    LabeledDataset s;
    s.x_dim = 1;
    for (const auto& [x, y] : rows) s.add(DataPoint{x}, y);
    return s;
}

}  // namespace

TEST_CASE("linear building blocks") {
    CHECK(sigmoid(0.0) == 0.5);
    CHECK(sigmoid(100.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(squared_norm({3.0, 4.0}) == 25.0);
    CHECK(squared_norm({}) == 0.0);
    const LinearForm f{{1.0, -2.0}, 0.5};
    CHECK(linear_eval(f, DataPoint{2.0, 1.0}) == 0.5);
    CHECK_THROWS_AS(linear_eval(f, DataPoint{2.0}), DomainError);
}

TEST_CASE("logistic loss at the zero form is log(1/2)") {
    const LabeledDataset s = scalar_rows({{1.0, 1.0}});
    const LinearForm zero{{0.0}, 0.0};
    CHECK(logistic_loss(zero, s) == std::log(0.5));
    // The mean over rows: both rows contribute log(1/2).
    const LabeledDataset two = scalar_rows({{1.0, 1.0}, {-1.0, 0.0}});
    CHECK(logistic_loss(zero, two) == std::log(0.5));
}

TEST_CASE("the clamp floors a vanishing gap") {
    // f(x) = -100 puts sigmoid within 1e-44 of the label 0; the gap is
    // clamped at the floor before the log.
    const LabeledDataset s = scalar_rows({{0.0, 0.0}});
    const LinearForm f{{0.0}, -100.0};
    CHECK(logistic_loss(f, s) == std::log(1e-12));
    CHECK(logistic_loss(f, s, 1e-6) == std::log(1e-6));
    CHECK_THROWS_AS(logistic_loss(f, s, 0.0), DomainError);
    CHECK_THROWS_AS(logistic_loss(f, s, -1.0), DomainError);
}

TEST_CASE("logistic loss guards") {
    const LinearForm zero{{0.0}, 0.0};
    CHECK_THROWS_AS(logistic_loss(zero, scalar_rows({{0.0, -1.0}})), DomainError);
    LabeledDataset empty;
    empty.x_dim = 1;
    CHECK_THROWS_AS(logistic_loss(zero, empty), DomainError);
    const LinearForm wide{{0.0, 0.0}, 0.0};
    CHECK_THROWS_AS(logistic_loss(wide, scalar_rows({{0.0, 0.0}})), DomainError);
}

TEST_CASE("logistic training lowers the loss and reports its own fit") {
    const LabeledDataset s =
        scalar_rows({{-2.0, 0.0}, {-1.0, 0.0}, {1.0, 1.0}, {2.0, 1.0}});
    const double at_zero = logistic_loss(LinearForm{{0.0}, 0.0}, s);
    const Decision d = logistic_train(s, {.eta0 = 0.1, .iterations = 500});
    const auto& f = std::get<LinearModel>(d.payload);
    CHECK(d.loss < at_zero);
    CHECK(d.loss == logistic_loss(f, s));
    CHECK(f.w[0] > 0.0);  // separating direction
    REQUIRE(d.trace.size() == 2);
    CHECK(d.trace[0].step == "Fitting");
    CHECK(d.trace[0].values.at("iterations") == 500.0);
    CHECK(d.trace[1].step == "Optimal selection");
    CHECK(d.trace[1].values.at("loss") == d.loss);
    CHECK_THROWS_AS(logistic_train(s, {.eta0 = 0.1, .iterations = 0}), DomainError);
}

TEST_CASE("margin normalization rescales the smallest correct margin to 1") {
    const LabeledDataset s = scalar_rows({{1.0, 1.0}, {-1.0, -1.0}});
    const LinearForm g = normalize_margin(LinearForm{{2.0}, 0.0}, s);
    CHECK(g.w[0] == 1.0);
    CHECK(g.b == 0.0);

    // Already normalized: unchanged.
    const LinearForm id = normalize_margin(LinearForm{{1.0}, 0.0}, s);
    CHECK(id.w[0] == 1.0);

    // The smallest correct margin sets the scale even when others are larger.
    const LabeledDataset mixed = scalar_rows({{3.0, 1.0}, {-0.5, -1.0}});
    const LinearForm h = normalize_margin(LinearForm{{1.0}, 0.0}, mixed);
    CHECK(h.w[0] == 2.0);
}

TEST_CASE("margin normalization flips an everywhere-wrong function first") {
    const LabeledDataset s = scalar_rows({{1.0, 1.0}, {-1.0, -1.0}});
    const LinearForm g = normalize_margin(LinearForm{{-2.0}, 0.0}, s);
    CHECK(g.w[0] == 1.0);
    CHECK(g.b == 0.0);
    CHECK_THROWS_AS(normalize_margin(LinearForm{{0.0}, 0.0}, s), DomainError);
    CHECK_THROWS_AS(normalize_margin(LinearForm{{1.0}, 0.0}, scalar_rows({{1.0, 0.0}})),
                    DomainError);
}

TEST_CASE("svm loss on a normalized function: penalty plus mean boundary slack") {
    const LabeledDataset clean = scalar_rows({{1.0, 1.0}, {-1.0, -1.0}});
    const LinearForm f{{1.0}, 0.0};
    // All rows correct: only the weight penalty remains.
    CHECK(svm_loss(f, clean, 0.25) == 0.25);
    CHECK(svm_loss(f, clean, 0.0) == 0.0);

    const LabeledDataset with_error =
        scalar_rows({{1.0, 1.0}, {-1.0, -1.0}, {-0.5, 1.0}});
    // The wrong row contributes |1 - (-0.5)| = 1.5 over m = 3.
    CHECK(svm_loss(f, with_error, 0.25) == 0.75);
}

TEST_CASE("boundary slack of a wrong row is one plus its magnitude") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> mag(0.0, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double y = trial % 2 == 0 ? 1.0 : -1.0;
        const double v = -y * mag(rng);  // wrong side (or zero)
        CHECK(std::fabs(y - v) == 1.0 + std::fabs(v));
    }
}

TEST_CASE("svm loss rejects an unnormalized function") {
    const LabeledDataset s = scalar_rows({{1.0, 1.0}, {-1.0, -1.0}});
    CHECK_THROWS_AS(svm_loss(LinearForm{{2.0}, 0.0}, s, 0.1), DomainError);
    CHECK_THROWS_AS(svm_loss(LinearForm{{-1.0}, 0.0}, s, 0.1), DomainError);  // nothing correct
    CHECK_THROWS_AS(svm_loss(LinearForm{{1.0}, 0.0}, s, -0.1), DomainError);
}

TEST_CASE("svm training on separable data drives the slack to zero") {
    const LabeledDataset s =
        scalar_rows({{-2.0, -1.0}, {-1.0, -1.0}, {1.0, 1.0}, {2.0, 1.0}});
    const double alpha = 0.01;
    const Decision d = svm_train(s, alpha, {.eta0 = 0.1, .iterations = 2000});
    const auto& f = std::get<LinearModel>(d.payload);
    CHECK(d.loss == svm_loss(f, s, alpha));
    // Every row sits on the correct side, so the loss is the penalty alone.
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s.ys[i] * linear_eval(f, s.xs[i]) > 0.0);
    }
    CHECK(d.loss == alpha * squared_norm(f.w));

    CHECK_THROWS_AS(svm_train(scalar_rows({{1.0, 1.0}}), 0.1), DomainError);
    CHECK_THROWS_AS(svm_train(s, -1.0), DomainError);
}

TEST_CASE("svr loss: per-row tube slack, summed, plus the weight penalty") {
    const LinearForm f{{1.0}, 0.0};
    // Residual 0.5 inside a tube of width 1 costs nothing.
    CHECK(svr_loss(f, scalar_rows({{1.0, 1.5}}), 1.0, 0.0) == 0.0);
    // Residual 2 with width 0.5 costs 1.5.
    CHECK(svr_loss(f, scalar_rows({{1.0, 3.0}}), 0.5, 0.0) == 1.5);
    // Two such rows cost 3: the slack is a sum, not a mean.
    CHECK(svr_loss(f, scalar_rows({{1.0, 3.0}, {1.0, 3.0}}), 0.5, 0.0) == 3.0);
    // Weight penalty lambda * ||w||^2.
    const LinearForm wide{{3.0}, 0.0};
    CHECK(svr_loss(wide, scalar_rows({{1.0, 3.0}}), 1.0, 2.0) == 18.0);
    CHECK_THROWS_AS(svr_loss(f, scalar_rows({{1.0, 1.0}}), -0.5, 0.0), DomainError);
    CHECK_THROWS_AS(svr_loss(f, scalar_rows({{1.0, 1.0}}), 0.5, -1.0), DomainError);
}

TEST_CASE("svr training approaches a clean linear trend") {
    const LabeledDataset s =
        scalar_rows({{0.0, 0.0}, {1.0, 2.0}, {2.0, 4.0}, {3.0, 6.0}});
    const double at_zero = svr_loss(LinearForm{{0.0}, 0.0}, s, 0.1, 0.0);
    const Decision d = svr_train(s, 0.1, 0.0);
    const auto& f = std::get<LinearModel>(d.payload);
    CHECK(d.loss == svr_loss(f, s, 0.1, 0.0));
    CHECK(d.loss < at_zero);
    CHECK(d.loss < 1.0);
    CHECK(f.w[0] == doctest::Approx(2.0).epsilon(0.2));
    CHECK_THROWS_AS(svr_train(s, 0.1, 0.0, {.eta0 = 0.1, .iterations = 0}), DomainError);
}

TEST_CASE("basis expansions") {
    const auto poly2 = BasisDescriptor::polynomial(2);
    CHECK(kernel_transform_point(DataPoint{3.0}, poly2) == DataPoint{3.0, 9.0});
    const auto poly3 = BasisDescriptor::polynomial(3);
    // Coordinate-major: all powers of x1, then all powers of x2.
    CHECK(kernel_transform_point(DataPoint{2.0, 3.0}, poly3) ==
          DataPoint{2.0, 4.0, 8.0, 3.0, 9.0, 27.0});

    const auto ident = BasisDescriptor::identity();
    CHECK(kernel_transform_point(DataPoint{1.5, -2.0}, ident) == DataPoint{1.5, -2.0});

    const auto rad = BasisDescriptor::radial({DataPoint{0.0, 0.0}, DataPoint{1.0, 0.0}}, 1.0);
    const DataPoint at_center = kernel_transform_point(DataPoint{0.0, 0.0}, rad);
    REQUIRE(at_center.size() == 2);
    CHECK(at_center[0] == 1.0);
    CHECK(at_center[1] == std::exp(-0.5));

    const auto widened = BasisDescriptor::radial({DataPoint{0.0}}, 2.0);
    CHECK(kernel_transform_point(DataPoint{3.0}, widened)[0] == std::exp(-9.0 / 8.0));
}

TEST_CASE("basis descriptor and transform guards") {
    CHECK_THROWS_AS(BasisDescriptor::polynomial(0), SchemaError);
    CHECK_THROWS_AS(BasisDescriptor::radial({}, 1.0), SchemaError);
    CHECK_THROWS_AS(BasisDescriptor::radial({DataPoint{0.0}}, 0.0), SchemaError);
    CHECK_THROWS_AS(BasisDescriptor::radial({DataPoint{0.0}, DataPoint{0.0, 1.0}}, 1.0),
                    SchemaError);
    const auto rad = BasisDescriptor::radial({DataPoint{0.0, 0.0}}, 1.0);
    CHECK_THROWS_AS(kernel_transform_point(DataPoint{1.0}, rad), DomainError);
}

TEST_CASE("dataset transform widens the feature dimension and keeps labels") {
    const LabeledDataset s = scalar_rows({{2.0, 5.0}, {-1.0, 7.0}});
    const LabeledDataset t = kernel_transform(s, BasisDescriptor::polynomial(3));
    CHECK(t.x_dim == 3);
    CHECK(t.ys == s.ys);
    CHECK(t.xs[0] == DataPoint{2.0, 4.0, 8.0});
    CHECK(t.xs[1] == DataPoint{-1.0, 1.0, -1.0});
}

TEST_CASE("a parabola becomes linear under the degree-2 expansion") {
    LabeledDataset s;
    s.x_dim = 1;
    for (const double x : {-2.0, -1.0, 0.0, 1.0, 2.0}) s.add(DataPoint{x}, x * x);
    const LabeledDataset lifted = kernel_transform(s, BasisDescriptor::polynomial(2));
    const Decision d = ridge_train(lifted, 0.0);
    const auto& f = std::get<LinearModel>(d.payload);
    CHECK(f.w[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(f.w[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(f.b == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(d.loss == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("ridge loss: mean squared residual plus the weight penalty") {
    const LabeledDataset s = scalar_rows({{1.0, 0.0}, {1.0, 2.0}});
    CHECK(ridge_loss(LinearForm{{0.0}, 1.0}, s, 0.0) == 1.0);
    // Penalty 0.5 * 2^2 = 2 plus mean squared residual (4 + 0) / 2 = 2.
    CHECK(ridge_loss(LinearForm{{2.0}, 0.0}, s, 0.5) == 4.0);
    CHECK_THROWS_AS(ridge_loss(LinearForm{{0.0}, 0.0}, s, -1.0), DomainError);
}

TEST_CASE("closed-form fit recovers an exact line without a penalty") {
    const LabeledDataset s = scalar_rows({{0.0, 1.0}, {1.0, 4.0}, {2.0, 7.0}});
    const Decision d = ridge_train(s, 0.0);
    const auto& f = std::get<LinearModel>(d.payload);
    CHECK(f.w[0] == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(f.b == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d.loss == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("a huge penalty shrinks the slope but not the intercept") {
    const LabeledDataset s = scalar_rows({{0.0, 1.0}, {1.0, 3.0}});
    const Decision d = ridge_train(s, 1e9);
    const auto& f = std::get<LinearModel>(d.payload);
    CHECK(std::fabs(f.w[0]) < 1e-6);
    CHECK(f.b == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("the closed form is a local minimum of the penalized objective") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    LabeledDataset s;
    s.x_dim = 2;
    for (int i = 0; i < 12; ++i) {
        s.add(DataPoint{coord(rng), coord(rng)}, coord(rng));
    }
    const double alpha = 0.3;
    const Decision d = ridge_train(s, alpha);
    const auto& f = std::get<LinearModel>(d.payload);
    const double at_fit = ridge_loss(f, s, alpha);
    std::uniform_real_distribution<double> nudge(-0.05, 0.05);
    for (int p = 0; p < 100; ++p) {
        LinearForm g = f;
        g.w[0] += nudge(rng);
        g.w[1] += nudge(rng);
        g.b += nudge(rng);
        CHECK(ridge_loss(g, s, alpha) >= at_fit - 1e-9);
    }
}

TEST_CASE("repeated inputs make the unpenalized system singular") {
    const LabeledDataset s = scalar_rows({{1.0, 0.0}, {1.0, 2.0}});
    CHECK_THROWS_WITH_AS(ridge_train(s, 0.0),
                         "normal equations are singular; set a positive regularization weight",
                         DomainError);
    // A positive penalty restores solvability.
    CHECK_NOTHROW(ridge_train(s, 0.1));
    CHECK_THROWS_AS(ridge_train(s, -0.5), DomainError);
    LabeledDataset empty;
    empty.x_dim = 1;
    CHECK_THROWS_AS(ridge_train(empty, 1.0), DomainError);
}
