#include "geodev/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "geodev/errors.hpp"
#include "geodev/finite_difference.hpp"

namespace geodev {

namespace {

struct Spectrum {
    Vector eigenvalues;
    Matrix eigenvectors;
};

Spectrum checked_spectrum(const Matrix& g, const MetricOptions& options) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(g);
    if (solver.info() != Eigen::Success) {
        throw NonPositiveDefinite(std::nan(""), options.pd_floor);
    }
    Spectrum s{solver.eigenvalues(), solver.eigenvectors()};
    const double min_eig = s.eigenvalues.minCoeff();
    if (!(min_eig > options.pd_floor)) {
        if (!options.clamp_eigenvalues || std::isnan(min_eig)) {
            throw NonPositiveDefinite(min_eig, options.pd_floor);
        }
        s.eigenvalues = s.eigenvalues.cwiseMax(options.pd_floor);
    }
    return s;
}

Matrix symmetrized(const Matrix& m) {
    return 0.5 * (m + m.transpose());
}

Matrix spectral_function(const Spectrum& s, double power) {
    Vector d = s.eigenvalues.array().pow(power);
    return symmetrized(s.eigenvectors * d.asDiagonal() * s.eigenvectors.transpose());
}

void check_dim(const EnergyModel& model, const Vector& x) {
    if (x.size() != model.dim()) {
        throw std::invalid_argument("state dimension does not match the energy model");
    }
}

Tensor3 metric_derivative_from(const EnergyModel& model, const Vector& x, double t,
                               const EnergyDerivatives& derivs, const MetricOptions& options) {
    const int n = model.dim();
    Tensor3 raw;
    if (model.has_analytic_thirds() && derivs.thirds.dim() == n) {
        raw = Tensor3(n);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) raw(i, j, k) = derivs.thirds(k, i, j);
    } else {
        raw = central_matrix_derivative([&](const Vector& y) { return model.hessian(y, t); }, x,
                                        options.fd_scale);
    }
    Tensor3 dg(n);
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                const double v = 0.25 * (raw(i, j, k) + raw(j, i, k));
                dg(i, j, k) = v;
                dg(j, i, k) = v;
            }
        }
    }
    return dg;
}

}  // namespace

Tensor3 derivative_of_metric(const EnergyModel& model, const Vector& x, double t,
                             const MetricOptions& options) {
    check_dim(model, x);
    const int order = model.has_analytic_thirds() ? 3 : 0;
    return metric_derivative_from(model, x, t, model.evaluate(x, t, order), options);
}

Matrix symmetric_inverse_sqrt(const Matrix& g, const MetricOptions& options) {
    MetricOptions strict = options;
    strict.clamp_eigenvalues = false;
    return spectral_function(checked_spectrum(symmetrized(g), strict), -0.5);
}

Tensor3 christoffel_symbols(const Matrix& g_inv, const Tensor3& dg) {
    const int n = dg.dim();
    Tensor3 gamma(n);
    Vector lowered(n);
    Vector raised(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            for (int l = 0; l < n; ++l) {
                lowered[l] = dg(j, l, i) + dg(i, l, j) - dg(i, j, l);
            }
            raised.noalias() = 0.5 * (g_inv * lowered);
            for (int k = 0; k < n; ++k) {
                gamma(k, i, j) = raised[k];
                gamma(k, j, i) = raised[k];
            }
        }
    }
    return gamma;
}

MetricState metric_from_energy(const EnergyModel& model, const Vector& x, double t,
                               double upsilon, const MetricOptions& options) {
    check_dim(model, x);
    if (!(upsilon >= 0.0)) throw std::invalid_argument("upsilon must be nonnegative");

    const int n = model.dim();
    const EnergyDerivatives derivs = model.evaluate(x, t, model.has_analytic_thirds() ? 3 : 2);

    MetricState state;
    state.dim = n;
    state.g.resize(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const double v = 0.25 * (derivs.hessian(i, j) + derivs.hessian(j, i));
            state.g(i, j) = v;
            state.g(j, i) = v;
        }
        state.g(i, i) += upsilon;
    }

    const Spectrum spectrum = checked_spectrum(state.g, options);
    if (options.clamp_eigenvalues) {
        state.g = spectral_function(spectrum, 1.0);
    }
    state.g_inv = spectral_function(spectrum, -1.0);
    state.g_inv_sqrt = spectral_function(spectrum, -0.5);

    const Tensor3 dg = metric_derivative_from(model, x, t, derivs, options);
    state.gamma = christoffel_symbols(state.g_inv, dg);
    return state;
}

Vector covariant_derivative(const Tensor3& gamma, const Vector& X, const Vector& Y,
                            const Matrix& jacobian) {
    const int n = static_cast<int>(X.size());
    Vector out = jacobian * X;
    for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) acc += X[i] * Y[j] * gamma(k, i, j);
        out[k] += acc;
    }
    return out;
}

Vector contract_connection(const Matrix& M, const Tensor3& gamma) {
    const int n = gamma.dim();
    Vector out = Vector::Zero(n);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) acc += M(k, l) * gamma(i, k, l);
        out[i] = acc;
    }
    return out;
}

double metric_speed_squared(const Matrix& g, const Vector& v) {
    return v.dot(g * v);
}

std::vector<GeodesicSample> geodesic_trajectory(const EnergyModel& model, const Vector& x0,
                                                const Vector& v0, double t_span, double dt,
                                                double upsilon, const MetricOptions& options) {
    check_dim(model, x0);
    if (!(dt > 0.0)) throw std::invalid_argument("geodesic step must be positive");
    if (!(t_span >= 0.0)) throw std::invalid_argument("geodesic duration must be nonnegative");

    auto acceleration = [&](const Vector& x, const Vector& v) {
        const MetricState m = metric_from_energy(model, x, 0.0, upsilon, options);
        Matrix vv = v * v.transpose();
        return Vector(-contract_connection(vv, m.gamma));
    };

    const auto steps = static_cast<long>(std::ceil(t_span / dt - 1e-9));
    std::vector<GeodesicSample> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    out.push_back({0.0, x0, v0});

    Vector x = x0;
    Vector v = v0;
    for (long s = 0; s < steps; ++s) {
        const double t = static_cast<double>(s) * dt;
        const double h = std::min(dt, t_span - t);
        const Vector k1x = v;
        const Vector k1v = acceleration(x, v);
        const Vector k2x = v + 0.5 * h * k1v;
        const Vector k2v = acceleration(x + 0.5 * h * k1x, k2x);
        const Vector k3x = v + 0.5 * h * k2v;
        const Vector k3v = acceleration(x + 0.5 * h * k2x, k3x);
        const Vector k4x = v + h * k3v;
        const Vector k4v = acceleration(x + h * k3x, k4x);
        x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        out.push_back({s + 1 == steps ? t_span : t + h, x, v});
    }
    return out;
}

}  // namespace geodev
