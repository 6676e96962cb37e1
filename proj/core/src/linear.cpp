#include "loh/learners/linear.hpp"

#include <algorithm>
#include <cmath>

namespace loh {

namespace {

void check_linear(const LinearForm& f, const LabeledDataset& s) {
    s.validate();
    if (f.w.size() != s.x_dim) throw DomainError("weight dimension does not match dataset");
}

Decision package_linear(LinearForm f, double loss, double objective, int iterations) {
    Decision decision;
    decision.loss = loss;
    decision.trace = {
        {"Fitting", {{"iterations", static_cast<double>(iterations)}, {"objective", objective}}},
        {"Optimal selection", {{"loss", loss}}},
    };
    decision.payload = std::move(f);
    return decision;
}

}  // namespace

double squared_norm(const std::vector<double>& w) {
    double s = 0.0;
    for (double v : w) s += v * v;
    return s;
}

double linear_eval(const LinearForm& f, const DataPoint& x) {
    if (f.w.size() != x.size()) throw DomainError("weight dimension does not match point");
    double s = f.b;
    for (std::size_t i = 0; i < x.size(); ++i) s += f.w[i] * x[i];
    return s;
}

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

double logistic_loss(const LinearForm& f, const LabeledDataset& s, double floor) {
    check_linear(f, s);
    s.validate_labels({0.0, 1.0});
    if (s.size() == 0) throw DomainError("logistic loss needs at least one row");
    if (floor <= 0.0) throw DomainError("log clamp floor must be positive");
    double total = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double gap = std::fabs(s.ys[i] - sigmoid(linear_eval(f, s.xs[i])));
        total += std::log(std::max(gap, floor));
    }
    return total / static_cast<double>(s.size());
}

Decision logistic_train(const LabeledDataset& s, const GdSchedule& sched, double floor) {
    s.validate();
    s.validate_labels({0.0, 1.0});
    if (s.size() == 0) throw DomainError("logistic training needs at least one row");
    if (sched.iterations < 1) throw DomainError("iteration cap must be at least 1");

    const double m = static_cast<double>(s.size());
    LinearForm f{std::vector<double>(s.x_dim, 0.0), 0.0};
    LinearForm best = f;
    double best_loss = logistic_loss(f, s, floor);
    for (int t = 1; t <= sched.iterations; ++t) {
        std::vector<double> gw(s.x_dim, 0.0);
        double gb = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double sig = sigmoid(linear_eval(f, s.xs[i]));
            if (std::fabs(s.ys[i] - sig) <= floor) continue;  // clamped term is flat
            // d/dv log|y - sigmoid(v)| evaluated at v = f(x).
            const double g = s.ys[i] == 1.0 ? -sig : 1.0 - sig;
            for (std::size_t j = 0; j < s.x_dim; ++j) gw[j] += g * s.xs[i][j] / m;
            gb += g / m;
        }
        const double eta = sched.eta0 / std::sqrt(static_cast<double>(t));
        for (std::size_t j = 0; j < s.x_dim; ++j) f.w[j] -= eta * gw[j];
        f.b -= eta * gb;
        const double loss = logistic_loss(f, s, floor);
        if (loss < best_loss) {
            best_loss = loss;
            best = f;
        }
    }
    return package_linear(best, best_loss, best_loss, sched.iterations);
}

LinearForm normalize_margin(const LinearForm& f, const LabeledDataset& s) {
    check_linear(f, s);
    s.validate_labels({-1.0, 1.0});
    if (s.size() == 0) throw DomainError("margin normalization needs at least one row");

    LinearForm g = f;
    auto min_correct = [&](const LinearForm& h) {
        double q = 0.0;
        bool any = false;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double v = linear_eval(h, s.xs[i]);
            if (s.ys[i] * v > 0.0) {
                const double a = std::fabs(v);
                if (!any || a < q) q = a;
                any = true;
            }
        }
        return any ? q : -1.0;
    };

    double q = min_correct(g);
    if (q < 0.0) {
        for (double& v : g.w) v = -v;
        g.b = -g.b;
        q = min_correct(g);
    }
    if (q < 0.0) throw DomainError("function vanishes on every row; margins cannot be normalized");
    for (double& v : g.w) v /= q;
    g.b /= q;
    return g;
}

double svm_loss(const LinearForm& f, const LabeledDataset& s, double alpha) {
    check_linear(f, s);
    s.validate_labels({-1.0, 1.0});
    if (alpha < 0.0) throw DomainError("regularization weight must be nonnegative");
    if (s.size() == 0) throw DomainError("svm loss needs at least one row");

    double q = 0.0;
    bool any_correct = false;
    double slack = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double v = linear_eval(f, s.xs[i]);
        if (s.ys[i] * v > 0.0) {
            const double a = std::fabs(v);
            if (!any_correct || a < q) q = a;
            any_correct = true;
        } else {
            slack += std::fabs(s.ys[i] - v);
        }
    }
    if (!any_correct) throw DomainError("no correctly classified row; normalize the function first");
    if (std::fabs(q - 1.0) > 1e-9) {
        throw DomainError("smallest correct margin is not 1; normalize the function first");
    }
    return alpha * squared_norm(f.w) + slack / static_cast<double>(s.size());
}

Decision svm_train(const LabeledDataset& s, double alpha, const GdSchedule& sched) {
    s.validate();
    s.validate_labels({-1.0, 1.0});
    if (alpha < 0.0) throw DomainError("regularization weight must be nonnegative");
    if (sched.iterations < 1) throw DomainError("iteration cap must be at least 1");
    bool pos = false, neg = false;
    for (double y : s.ys) (y > 0.0 ? pos : neg) = true;
    if (!pos || !neg) throw DomainError("training needs both classes present");

    const double m = static_cast<double>(s.size());
    auto hinge_objective = [&](const LinearForm& f) {
        double total = alpha * squared_norm(f.w);
        for (std::size_t i = 0; i < s.size(); ++i) {
            total += std::max(0.0, 1.0 - s.ys[i] * linear_eval(f, s.xs[i])) / m;
        }
        return total;
    };

    LinearForm f{std::vector<double>(s.x_dim, 0.0), 0.0};
    LinearForm best = f;
    double best_obj = hinge_objective(f);
    for (int t = 1; t <= sched.iterations; ++t) {
        std::vector<double> gw(s.x_dim, 0.0);
        double gb = 0.0;
        for (std::size_t j = 0; j < s.x_dim; ++j) gw[j] = 2.0 * alpha * f.w[j];
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s.ys[i] * linear_eval(f, s.xs[i]) >= 1.0) continue;
            for (std::size_t j = 0; j < s.x_dim; ++j) gw[j] -= s.ys[i] * s.xs[i][j] / m;
            gb -= s.ys[i] / m;
        }
        const double eta = sched.eta0 / std::sqrt(static_cast<double>(t));
        for (std::size_t j = 0; j < s.x_dim; ++j) f.w[j] -= eta * gw[j];
        f.b -= eta * gb;
        const double obj = hinge_objective(f);
        if (obj < best_obj) {
            best_obj = obj;
            best = f;
        }
    }

    const LinearForm normalized = normalize_margin(best, s);
    return package_linear(normalized, svm_loss(normalized, s, alpha), best_obj, sched.iterations);
}

double svr_loss(const LinearForm& f, const LabeledDataset& s, double epsilon, double lambda) {
    check_linear(f, s);
    if (epsilon < 0.0) throw DomainError("tube width must be nonnegative");
    if (lambda < 0.0) throw DomainError("regularization weight must be nonnegative");
    double total = lambda * squared_norm(f.w);
    for (std::size_t i = 0; i < s.size(); ++i) {
        total += std::max(0.0, std::fabs(s.ys[i] - linear_eval(f, s.xs[i])) - epsilon);
    }
    return total;
}

Decision svr_train(const LabeledDataset& s, double epsilon, double lambda,
                   const GdSchedule& sched) {
    s.validate();
    if (s.size() == 0) throw DomainError("svr training needs at least one row");
    if (epsilon < 0.0) throw DomainError("tube width must be nonnegative");
    if (lambda < 0.0) throw DomainError("regularization weight must be nonnegative");
    if (sched.iterations < 1) throw DomainError("iteration cap must be at least 1");

    LinearForm f{std::vector<double>(s.x_dim, 0.0), 0.0};
    LinearForm best = f;
    double best_loss = svr_loss(f, s, epsilon, lambda);
    for (int t = 1; t <= sched.iterations; ++t) {
        std::vector<double> gw(s.x_dim, 0.0);
        double gb = 0.0;
        for (std::size_t j = 0; j < s.x_dim; ++j) gw[j] = 2.0 * lambda * f.w[j];
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double r = linear_eval(f, s.xs[i]) - s.ys[i];
            if (std::fabs(r) <= epsilon) continue;
            const double g = r > 0.0 ? 1.0 : -1.0;
            for (std::size_t j = 0; j < s.x_dim; ++j) gw[j] += g * s.xs[i][j];
            gb += g;
        }
        const double eta = sched.eta0 / std::sqrt(static_cast<double>(t));
        for (std::size_t j = 0; j < s.x_dim; ++j) f.w[j] -= eta * gw[j];
        f.b -= eta * gb;
        const double loss = svr_loss(f, s, epsilon, lambda);
        if (loss < best_loss) {
            best_loss = loss;
            best = f;
        }
    }
    return package_linear(best, best_loss, best_loss, sched.iterations);
}

BasisDescriptor BasisDescriptor::identity() { return {}; }

BasisDescriptor BasisDescriptor::polynomial(int degree) {
    if (degree < 1) throw SchemaError("polynomial degree must be at least 1");
    BasisDescriptor b;
    b.kind = Kind::Polynomial;
    b.degree = degree;
    return b;
}

BasisDescriptor BasisDescriptor::radial(std::vector<DataPoint> centers, double width) {
    if (centers.empty()) throw SchemaError("radial basis needs at least one center");
    if (width <= 0.0) throw SchemaError("radial width must be positive");
    const std::size_t dim = centers.front().size();
    for (const auto& c : centers) {
        if (c.size() != dim || dim == 0) throw SchemaError("radial centers must share a positive dimension");
    }
    BasisDescriptor b;
    b.kind = Kind::RadialCenters;
    b.centers = std::move(centers);
    b.width = width;
    return b;
}

DataPoint kernel_transform_point(const DataPoint& x, const BasisDescriptor& basis) {
    switch (basis.kind) {
        case BasisDescriptor::Kind::Identity:
            return x;
        case BasisDescriptor::Kind::Polynomial: {
            DataPoint out;
            out.reserve(x.size() * static_cast<std::size_t>(basis.degree));
            for (double v : x) {
                double p = 1.0;
                for (int d = 1; d <= basis.degree; ++d) {
                    p *= v;
                    out.push_back(p);
                }
            }
            return out;
        }
        case BasisDescriptor::Kind::RadialCenters: {
            DataPoint out;
            out.reserve(basis.centers.size());
            for (const auto& c : basis.centers) {
                if (c.size() != x.size()) throw DomainError("point dimension does not match centers");
                double sq = 0.0;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    const double d = x[i] - c[i];
                    sq += d * d;
                }
                out.push_back(std::exp(-sq / (2.0 * basis.width * basis.width)));
            }
            return out;
        }
    }
    throw DomainError("unknown basis kind");
}

LabeledDataset kernel_transform(const LabeledDataset& s, const BasisDescriptor& basis) {
    s.validate();
    LabeledDataset out;
    out.x_dim = kernel_transform_point(DataPoint(s.x_dim, 0.0), basis).size();
    out.ys = s.ys;
    out.xs.reserve(s.size());
    for (const auto& x : s.xs) out.xs.push_back(kernel_transform_point(x, basis));
    return out;
}

double ridge_loss(const LinearForm& f, const LabeledDataset& s, double alpha) {
    check_linear(f, s);
    if (alpha < 0.0) throw DomainError("regularization weight must be nonnegative");
    if (s.size() == 0) throw DomainError("ridge loss needs at least one row");
    double total = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double r = linear_eval(f, s.xs[i]) - s.ys[i];
        total += r * r;
    }
    return alpha * squared_norm(f.w) + total / static_cast<double>(s.size());
}

Decision ridge_train(const LabeledDataset& s, double alpha) {
    s.validate();
    if (alpha < 0.0) throw DomainError("regularization weight must be nonnegative");
    if (s.size() == 0) throw DomainError("ridge training needs at least one row");

    // Normal equations over the augmented point (x, 1); the intercept row of
    // the penalty diagonal stays zero.
    const std::size_t d = s.x_dim + 1;
    const double m = static_cast<double>(s.size());
    std::vector<std::vector<double>> a(d, std::vector<double>(d, 0.0));
    std::vector<double> rhs(d, 0.0);
    auto coord = [&](std::size_t row, std::size_t j) {
        return j < s.x_dim ? s.xs[row][j] : 1.0;
    };
    for (std::size_t r = 0; r < s.size(); ++r) {
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) a[i][j] += coord(r, i) * coord(r, j) / m;
            rhs[i] += coord(r, i) * s.ys[r] / m;
        }
    }
    for (std::size_t i = 0; i + 1 < d; ++i) a[i][i] += alpha;

    // Gaussian elimination with partial pivoting.
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < d; ++r) {
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        }
        if (std::fabs(a[pivot][col]) < 1e-12) {
            throw DomainError("normal equations are singular; set a positive regularization weight");
        }
        std::swap(a[col], a[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (std::size_t r = col + 1; r < d; ++r) {
            const double factor = a[r][col] / a[col][col];
            for (std::size_t j = col; j < d; ++j) a[r][j] -= factor * a[col][j];
            rhs[r] -= factor * rhs[col];
        }
    }
    std::vector<double> theta(d, 0.0);
    for (std::size_t i = d; i-- > 0;) {
        double v = rhs[i];
        for (std::size_t j = i + 1; j < d; ++j) v -= a[i][j] * theta[j];
        theta[i] = v / a[i][i];
    }

    LinearForm f{std::vector<double>(theta.begin(), theta.end() - 1), theta.back()};
    const double loss = ridge_loss(f, s, alpha);
    return package_linear(f, loss, loss, 1);
}

}  // namespace loh
