#pragma once

// The three energy models at the experiment parameters, each with an
// independent value function and 20 seeded admissible evaluation points.

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "geodev/energies.hpp"
#include "geodev/geometry.hpp"
#include "oracle.hpp"

namespace cases {

struct Point {
    geodev::Vector x;
    double t = 0.0;
};

struct ModelCase {
    std::string name;
    std::shared_ptr<const geodev::EnergyModel> model;
    std::function<double(const geodev::Vector&, double)> reference;
    double upsilon = 0.0;
    std::vector<Point> points;
};

inline ModelCase well_case(int count = 20) {
    geodev::Vector center(2), d(2);
    center << 1.0, 2.0;
    d << 400.0, 400.0;
    ModelCase c{"potential well", std::make_shared<geodev::PotentialWellEnergy>(center, d),
                [center, d](const geodev::Vector& x, double) { return oracle::well(x, center, d); },
                0.0,
                {}};
    std::mt19937_64 gen(11);
    const geodev::Vector r = geodev::Vector::Constant(2, 0.1);
    for (int i = 0; i < count; ++i) c.points.push_back({oracle::uniform_point(gen, center - r, center + r), 0.0});
    return c;
}

// States within one energy unit of the shell H = Z_t, where the experiment
// runs and the regularized metric is positive definite.
inline ModelCase duffing_case(int count = 20) {
    const double k = 1000.0, alpha = 300.0, sigma = 0.05, beta = 1.0;
    geodev::Vector x0(2);
    x0 << 0.1, 0.1;
    const double h0 = oracle::duffing_h(x0, k, alpha);
    ModelCase c{"duffing constraint",
                std::make_shared<geodev::DriftConstraintEnergy>(k, alpha, sigma, beta, h0),
                [=](const geodev::Vector& x, double t) {
                    return oracle::constraint(x, t, k, alpha, sigma, beta, h0);
                },
                1e4,
                {}};
    std::mt19937_64 gen(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < count; ++i) {
        const double x1 = -0.05 + 0.1 * u(gen);
        const double t = 10.0 * u(gen);
        const double target = h0 + 0.5 * sigma * sigma * t + (2.0 * u(gen) - 1.0);
        const double sign = u(gen) < 0.5 ? -1.0 : 1.0;
        geodev::Vector x(2);
        x << x1, sign * std::sqrt(2.0 * (target - 0.5 * k * x1 * x1 - 0.25 * alpha * std::pow(x1, 4)));
        c.points.push_back({x, t});
    }
    return c;
}

inline ModelCase ackley_case(int dim = 3, int count = 20) {
    ModelCase c{"ackley", std::make_shared<geodev::AckleyEnergy>(dim),
                [](const geodev::Vector& x, double) { return oracle::ackley(x); }, 1e6, {}};
    std::mt19937_64 gen(13);
    const geodev::Vector lo = geodev::Vector::Constant(dim, -5.0);
    while (static_cast<int>(c.points.size()) < count) {
        geodev::Vector x = oracle::uniform_point(gen, lo, -lo);
        if (x.norm() > 0.1) c.points.push_back({x, 0.0});
    }
    return c;
}

inline std::vector<ModelCase> all() { return {well_case(), duffing_case(), ackley_case()}; }

struct DerivativeErrors {
    double gradient = 0.0;
    double hessian = 0.0;
    double thirds = 0.0;
};

// Worst relative errors of the analytic derivatives against five-point
// differences: gradient from the reference value function, Hessian from the
// analytic gradient, thirds from the analytic Hessian.
inline DerivativeErrors derivative_errors(const ModelCase& c) {
    DerivativeErrors e;
    const auto& m = *c.model;
    for (const Point& p : c.points) {
        const auto fd_grad =
            oracle::gradient([&](const oracle::Vec& y) { return c.reference(y, p.t); }, p.x);
        e.gradient = std::max(e.gradient, oracle::rel(m.gradient(p.x, p.t), fd_grad));

        const auto fd_hess =
            oracle::jacobian([&](const oracle::Vec& y) { return oracle::Vec(m.gradient(y, p.t)); }, p.x);
        e.hessian = std::max(e.hessian, oracle::rel(m.hessian(p.x, p.t), fd_hess));

        const auto fd_thirds =
            oracle::matrix_derivative([&](const oracle::Vec& y) { return oracle::Mat(m.hessian(y, p.t)); }, p.x);
        const geodev::Tensor3 an = m.third_derivatives(p.x, p.t);
        double diff = 0.0;
        const int n = an.dim();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) diff = std::max(diff, std::abs(an(k, i, j) - fd_thirds[i][j][k]));
        e.thirds = std::max(e.thirds, diff / oracle::max_abs(fd_thirds));
    }
    return e;
}

// Worst relative error of metric_from_energy's connection against the
// linear-solve oracle, and whether every gamma was exactly symmetric.
struct ConnectionErrors {
    double relative = 0.0;
    bool symmetric = true;
};

inline ConnectionErrors connection_errors(const ModelCase& c) {
    ConnectionErrors e;
    for (const Point& p : c.points) {
        const geodev::MetricState ms = geodev::metric_from_energy(*c.model, p.x, p.t, c.upsilon);
        const auto reference = oracle::christoffel(
            [&](const oracle::Vec& y) { return oracle::Mat(0.5 * c.model->hessian(y, p.t)); },
            p.x, c.upsilon);
        const int n = ms.dim;
        double diff = 0.0;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    diff = std::max(diff, std::abs(ms.gamma(k, i, j) - reference[k][i][j]));
                    e.symmetric = e.symmetric && ms.gamma(k, i, j) == ms.gamma(k, j, i);
                }
        e.relative = std::max(e.relative, diff / oracle::max_abs(reference));
    }
    return e;
}

}  // namespace cases
