#pragma once

// Reference computations kept apart from the library: plain-formula energy
// values, five-point finite differences, and a Christoffel computation that
// solves linear systems instead of forming the inverse metric.

#include <cmath>
#include <functional>
#include <random>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// t3[i][j][k] = d M_ij / d x_k
using Cube = std::vector<std::vector<std::vector<double>>>;

inline Cube cube(int n) {
    return Cube(n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
}

inline double step(const Vec& x, int k, double scale = 1e-5) {
    return scale * std::max(1.0, std::abs(x(k)));
}

// (-f(x+2h) + 8 f(x+h) - 8 f(x-h) + f(x-2h)) / 12h along coordinate k
template <typename F>
auto five_point(const F& f, const Vec& x, int k, double h) {
    // Evaluated into a concrete type; an Eigen expression would dangle.
    using R = std::decay_t<decltype(f(x))>;
    Vec p1 = x, p2 = x, m1 = x, m2 = x;
    p1(k) += h;
    p2(k) += 2 * h;
    m1(k) -= h;
    m2(k) -= 2 * h;
    return R(((f(m2) - f(p2)) + 8.0 * (f(p1) - f(m1))) / (12.0 * h));
}

inline Vec gradient(const std::function<double(const Vec&)>& f, const Vec& x) {
    Vec g(x.size());
    for (int k = 0; k < x.size(); ++k) g(k) = five_point(f, x, k, step(x, k));
    return g;
}

// J(i, k) = d f_i / d x_k
inline Mat jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x) {
    Mat j(x.size(), x.size());
    for (int k = 0; k < x.size(); ++k) j.col(k) = five_point(f, x, k, step(x, k));
    return j;
}

inline Cube matrix_derivative(const std::function<Mat(const Vec&)>& f, const Vec& x) {
    const int n = static_cast<int>(x.size());
    Cube d = cube(n);
    for (int k = 0; k < n; ++k) {
        const Mat slice = five_point(f, x, k, step(x, k));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) d[i][j][k] = slice(i, j);
    }
    return d;
}

inline double max_abs(const Cube& c) {
    double m = 0.0;
    for (const auto& a : c)
        for (const auto& b : a)
            for (double v : b) m = std::max(m, std::abs(v));
    return m;
}

// max |a - b| / max |b|
inline double rel(const Mat& a, const Mat& b) {
    return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff();
}

// Christoffel symbols out[k][i][j] = Gamma^k_ij of the metric field plus a
// constant shift*I (which has no derivative).
inline Cube christoffel(const std::function<Mat(const Vec&)>& metric, const Vec& x,
                        double shift = 0.0) {
    const int n = static_cast<int>(x.size());
    const Cube dg = matrix_derivative(metric, x);
    Mat g = metric(x);
    g.diagonal().array() += shift;
    const Eigen::FullPivLU<Mat> lu(g);
    Cube out = cube(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec lower(n);
            for (int l = 0; l < n; ++l) lower(l) = 0.5 * (dg[j][l][i] + dg[i][l][j] - dg[i][j][l]);
            const Vec upper = lu.solve(lower);
            for (int k = 0; k < n; ++k) out[k][i][j] = upper(k);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Energies written directly from their definitions.

inline double well(const Vec& x, const Vec& center, const Vec& d) {
    double s = 0.0;
    for (int p = 0; p < x.size(); ++p) s += d(p) * (x(p) - center(p)) * (x(p) - center(p));
    return std::exp(s);
}

inline double duffing_h(const Vec& x, double k, double alpha) {
    return 0.5 * x(1) * x(1) + 0.5 * k * x(0) * x(0) + 0.25 * alpha * std::pow(x(0), 4);
}

inline double constraint(const Vec& x, double t, double k, double alpha, double sigma,
                         double beta, double h0) {
    const double z = h0 + 0.5 * sigma * sigma * t;
    const double dv = duffing_h(x, k, alpha) - z;
    return std::exp(beta * dv * dv) - 1.0;
}

inline double ackley(const Vec& x, double a = 20.0, double b = 0.2, double c = 2.0 * M_PI) {
    const double n = static_cast<double>(x.size());
    double sq = 0.0, cs = 0.0;
    for (int i = 0; i < x.size(); ++i) {
        sq += x(i) * x(i);
        cs += std::cos(c * x(i));
    }
    return -a * std::exp(-b * std::sqrt(sq / n)) - std::exp(cs / n) + a + std::exp(1.0);
}

// Uniform points in a box from a generator unrelated to the library's.
inline Vec uniform_point(std::mt19937_64& gen, const Vec& lo, const Vec& hi) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vec x(lo.size());
    for (int i = 0; i < lo.size(); ++i) x(i) = lo(i) + (hi(i) - lo(i)) * u(gen);
    return x;
}

}  // namespace oracle
