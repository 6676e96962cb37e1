#pragma once

#include "loh/learners/dataset.hpp"
#include "loh/theory.hpp"

namespace loh {

double squared_norm(const std::vector<double>& w);
double linear_eval(const LinearForm& f, const DataPoint& x);
double sigmoid(double t);

struct GdSchedule {
    double eta0 = 0.1;   // step at iteration t is eta0 / sqrt(t)
    int iterations = 10000;
};

// Mean over rows of log(max(|y - sigmoid(w.x+b)|, floor)); labels {0,1}.
// The clamp keeps an exact fit from sending a term to -infinity.
double logistic_loss(const LinearForm& f, const LabeledDataset& s, double floor = 1e-12);
Decision logistic_train(const LabeledDataset& s, const GdSchedule& sched = {},
                        double floor = 1e-12);

// Labels {-1,+1}. A row is correct when y*f(x) > 0. normalize_margin flips the
// sign when no row is correct, then rescales so the smallest correct |f(x)| is
// exactly 1; a function vanishing on every row cannot be normalized (error).
LinearForm normalize_margin(const LinearForm& f, const LabeledDataset& s);

// alpha*||w||^2 + (1/m) * sum over rows with y*f(x) <= 0 of |y - f(x)|.
// Requires a normalized f: at least one correct row, smallest correct margin
// 1 within 1e-9.
double svm_loss(const LinearForm& f, const LabeledDataset& s, double alpha);

// Subgradient descent on alpha*||w||^2 + (1/m) * sum max(0, 1 - y*f(x)),
// best-iterate tracking; the returned hypothesis is normalized and the
// reported loss is svm_loss of it. Needs both classes present.
Decision svm_train(const LabeledDataset& s, double alpha, const GdSchedule& sched = {});

// sum over rows of max(0, |y - f(x)| - epsilon) + lambda*||w||^2.
// Deliberately a sum, not a mean.
double svr_loss(const LinearForm& f, const LabeledDataset& s, double epsilon, double lambda);
Decision svr_train(const LabeledDataset& s, double epsilon, double lambda,
                   const GdSchedule& sched = {});

// Fixed basis expansion applied before a linear learner.
//   Identity:      x unchanged.
//   Polynomial(d): per coordinate j the powers x_j^1 .. x_j^d, coordinate-major.
//   RadialCenters: exp(-||x - c||^2 / (2*width^2)) per center c.
struct BasisDescriptor {
    enum class Kind { Identity, Polynomial, RadialCenters };
    Kind kind = Kind::Identity;
    int degree = 1;
    std::vector<DataPoint> centers;
    double width = 1.0;

    static BasisDescriptor identity();
    static BasisDescriptor polynomial(int degree);
    static BasisDescriptor radial(std::vector<DataPoint> centers, double width);
};

DataPoint kernel_transform_point(const DataPoint& x, const BasisDescriptor& basis);
LabeledDataset kernel_transform(const LabeledDataset& s, const BasisDescriptor& basis);

// alpha*||w||^2 + (1/m) * sum (f(x) - y)^2.
double ridge_loss(const LinearForm& f, const LabeledDataset& s, double alpha);

// Closed-form fit via the regularized normal equations; the intercept is not
// penalized. A singular system (possible only at alpha = 0) is an error.
Decision ridge_train(const LabeledDataset& s, double alpha);

}  // namespace loh
