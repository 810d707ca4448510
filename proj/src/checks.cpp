#include "geodev/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string_view>
#include <memory>

#include <Eigen/LU>

#include "geodev/applications.hpp"
#include "geodev/energies.hpp"
#include "geodev/finite_difference.hpp"
#include "geodev/geometry.hpp"
#include "geodev/rng.hpp"
#include "geodev/sde.hpp"

namespace geodev {

namespace {

constexpr double kGradientTol = 1e-6;
constexpr double kHessianTol = 1e-5;
constexpr double kThirdsTol = 1e-4;
constexpr double kConnectionTol = 1e-6;
constexpr double kFdScale = 1e-5;

// Delegates to a model and scales its gradient.
class PerturbedGradient final : public EnergyModel {
public:
    PerturbedGradient(const EnergyModel& inner, double eps) : inner_(inner), eps_(eps) {}
    int dim() const override { return inner_.dim(); }
    bool has_analytic_thirds() const override { return inner_.has_analytic_thirds(); }
    bool time_dependent() const override { return inner_.time_dependent(); }
    EnergyDerivatives evaluate(const Vector& x, double t, int order) const override {
        EnergyDerivatives d = inner_.evaluate(x, t, order);
        if (d.gradient.size()) d.gradient *= 1.0 + eps_;
        return d;
    }

private:
    const EnergyModel& inner_;
    double eps_;
};

struct Sample {
    Vector x;
    double t = 0.0;
};

struct Subject {
    std::string name;
    std::shared_ptr<const EnergyModel> model;
    double upsilon = 0.0;
    std::vector<Sample> points;
};

Vector in_box(std::uint64_t seed, std::uint32_t stream_id, std::uint64_t i, const Vector& lo,
              const Vector& hi) {
    const Vector u = open_uniforms(seed, Stream::Sample, stream_id, i, static_cast<int>(lo.size()));
    return (lo.array() + (hi - lo).array() * u.array()).matrix();
}

std::vector<Subject> subjects(const CheckOptions& opt) {
    std::vector<Subject> out;
    const auto n = static_cast<std::uint64_t>(opt.points);

    {
        Vector center(2), d(2);
        center << 1.0, 2.0;
        d << 400.0, 400.0;
        Subject s{"well", std::make_shared<PotentialWellEnergy>(center, d), 0.0, {}};
        const Vector half = Vector::Constant(2, 0.1);
        for (std::uint64_t i = 0; i < n; ++i) {
            s.points.push_back({in_box(opt.seed, 0, i, center - half, center + half), 0.0});
        }
        out.push_back(std::move(s));
    }
    {
        Vector x0(2);
        x0 << 0.1, 0.1;
        const double h0 = duffing_hamiltonian(x0, 1000.0, 300.0);
        Subject s{"duffing",
                  std::make_shared<DriftConstraintEnergy>(1000.0, 300.0, 0.05, 1.0, h0), 1e4, {}};
        const auto& shell = static_cast<const DriftConstraintEnergy&>(*s.model);
        // Points within one energy unit of the shell V = Z_t, where the
        // regularized metric stays positive definite.
        Vector lo(4), hi(4);
        lo << -0.05, -1.0, 0.0, -1.0;
        hi << 0.05, 1.0, 10.0, 1.0;
        for (std::uint64_t i = 0; i < n; ++i) {
            const Vector u = in_box(opt.seed, 1, i, lo, hi);
            const double x1 = u(0);
            const double kinetic =
                shell.mean_energy(u(2)) + u(1) - 500.0 * x1 * x1 - 75.0 * x1 * x1 * x1 * x1;
            Vector x(2);
            x << x1, std::copysign(std::sqrt(2.0 * kinetic), u(3));
            s.points.push_back({std::move(x), u(2)});
        }
        out.push_back(std::move(s));
    }
    {
        Subject s{"ackley", std::make_shared<AckleyEnergy>(3), 1e6, {}};
        const Vector lo = Vector::Constant(3, -5.0), hi = Vector::Constant(3, 5.0);
        for (std::uint64_t i = 0; s.points.size() < n; ++i) {
            Vector x = in_box(opt.seed, 2, i, lo, hi);
            if (x.norm() > 0.1) s.points.push_back({std::move(x), 0.0});
        }
        out.push_back(std::move(s));
    }
    return out;
}

CheckResult worst_over(const std::string& name, double tol, const std::vector<Sample>& pts,
                       const std::function<double(const Sample&)>& residual) {
    CheckResult r{name, true, 0.0, tol, {}};
    bool finite = true;
    for (const Sample& p : pts) {
        const double e = residual(p);
        finite = finite && std::isfinite(e);
        if (e > r.residual) r.residual = e;
    }
    r.passed = finite && r.residual <= tol;
    r.detail = std::to_string(pts.size()) + " points";
    return r;
}

// Christoffel symbols from finite differences of the metric, solving g z = b
// for every lower index pair instead of forming the inverse.
Tensor3 connection_oracle(const EnergyModel& model, const Vector& x, double t, double upsilon) {
    const int n = model.dim();
    // The constant upsilon*I is left out of the differenced field; it would
    // only add cancellation error.
    auto half_hessian = [&](const Vector& y) { return Matrix(0.5 * model.hessian(y, t)); };
    const Tensor3 dg = central_matrix_derivative(half_hessian, x, kFdScale, Stencil::Fourth);
    Matrix g = half_hessian(x);
    g.diagonal().array() += upsilon;
    const Eigen::PartialPivLU<Matrix> lu(g);
    Tensor3 gamma(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Vector lower(n);
            for (int l = 0; l < n; ++l) {
                lower(l) = 0.5 * (dg(j, l, i) + dg(i, l, j) - dg(i, j, l));
            }
            const Vector upper = lu.solve(lower);
            for (int k = 0; k < n; ++k) gamma(k, i, j) = upper(k);
        }
    }
    return gamma;
}

double third_asymmetry(const Tensor3& d) {
    const int n = d.dim();
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double v = d(i, j, k);
                for (double w : {d(i, k, j), d(j, i, k), d(j, k, i), d(k, i, j), d(k, j, i)}) {
                    worst = std::max(worst, std::abs(v - w));
                }
            }
    return worst / std::max(1.0, d.max_abs());
}

CheckResult derivative_check(const Subject& s, const CheckOptions& opt, std::string_view kind) {
    const EnergyModel& base = *s.model;
    const PerturbedGradient perturbed(base, opt.gradient_perturbation);
    const EnergyModel& model =
        opt.gradient_perturbation != 0.0 ? static_cast<const EnergyModel&>(perturbed) : base;
    const std::string name = s.name + std::string(kind);

    if (kind == "_gradient_fd") {
        return worst_over(name, kGradientTol, s.points, [&](const Sample& p) {
            const Vector fd = central_gradient([&](const Vector& y) { return model.value(y, p.t); },
                                               p.x, kFdScale, Stencil::Fourth);
            return relative_error(model.gradient(p.x, p.t), fd);
        });
    }
    if (kind == "_hessian_fd") {
        return worst_over(name, kHessianTol, s.points, [&](const Sample& p) {
            const Matrix fd = central_jacobian(
                [&](const Vector& y) { return model.gradient(y, p.t); }, p.x, kFdScale,
                Stencil::Fourth);
            return relative_error(model.hessian(p.x, p.t), fd);
        });
    }
    if (kind == "_thirds_fd") {
        return worst_over(name, kThirdsTol, s.points, [&](const Sample& p) {
            // fd(i, j, k) = d H_ij / d x_k; analytic(k, i, j) holds the same entry.
            const Tensor3 fd = central_matrix_derivative(
                [&](const Vector& y) { return model.hessian(y, p.t); }, p.x, kFdScale,
                Stencil::Fourth);
            const Tensor3 an = model.third_derivatives(p.x, p.t);
            Tensor3 reordered(an.dim());
            for (int i = 0; i < an.dim(); ++i)
                for (int j = 0; j < an.dim(); ++j)
                    for (int k = 0; k < an.dim(); ++k) reordered(i, j, k) = an(k, i, j);
            return relative_error(reordered, fd);
        });
    }
    if (kind == "_thirds_symmetric") {
        return worst_over(name, 1e-10, s.points, [&](const Sample& p) {
            return third_asymmetry(base.third_derivatives(p.x, p.t));
        });
    }
    return worst_over(name, kConnectionTol, s.points, [&](const Sample& p) {
        const MetricState m = metric_from_energy(base, p.x, p.t, s.upsilon);
        return relative_error(m.gamma, connection_oracle(base, p.x, p.t, s.upsilon));
    });
}

CheckResult christoffel_symmetry(const std::vector<Subject>& all) {
    CheckResult r{"christoffel_lower_symmetry", true, 0.0, 0.0, "exact equality"};
    std::size_t count = 0;
    for (const Subject& s : all) {
        for (const Sample& p : s.points) {
            const Tensor3 gamma = metric_from_energy(*s.model, p.x, p.t, s.upsilon).gamma;
            const int n = gamma.dim();
            for (int k = 0; k < n; ++k)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        r.residual = std::max(r.residual, std::abs(gamma(k, i, j) - gamma(k, j, i)));
            ++count;
        }
    }
    r.passed = r.residual == 0.0;
    r.detail = std::to_string(count) + " points";
    return r;
}

CheckResult metric_algebra(const std::vector<Subject>& all, bool square_root) {
    CheckResult r{square_root ? "inverse_sqrt_squares_to_inverse" : "inverse_times_metric_identity",
                  true, 0.0, 1e-8, {}};
    std::size_t count = 0;
    for (const Subject& s : all) {
        for (const Sample& p : s.points) {
            const MetricState m = metric_from_energy(*s.model, p.x, p.t, s.upsilon);
            const double e =
                square_root
                    ? (m.g_inv_sqrt * m.g_inv_sqrt - m.g_inv).norm() / m.g_inv.norm()
                    : (m.g_inv * m.g - Matrix::Identity(m.dim, m.dim)).norm() /
                          std::sqrt(static_cast<double>(m.dim));
            r.residual = std::max(r.residual, e);
            ++count;
        }
    }
    r.passed = r.residual <= r.tolerance;
    r.detail = std::to_string(count) + " points, Frobenius";
    return r;
}

CheckResult geodesic_speed() {
    Vector center(2), d(2), x0(2), v0(2);
    center << 1.0, 2.0;
    d << 400.0, 400.0;
    x0 << 1.01, 2.0;
    v0 << 0.01, 0.005;
    const PotentialWellEnergy well(center, d);
    const auto path = geodesic_trajectory(well, x0, v0, 1.0, 1e-3, 0.0);
    const double s0 =
        metric_speed_squared(metric_from_energy(well, path.front().x, 0.0, 0.0).g, path.front().v);
    CheckResult r{"geodesic_speed_conservation", true, 0.0, 1e-6, {}};
    for (const GeodesicSample& p : path) {
        const double s = metric_speed_squared(metric_from_energy(well, p.x, 0.0, 0.0).g, p.v);
        r.residual = std::max(r.residual, std::abs(s - s0) / s0);
    }
    r.passed = r.residual <= r.tolerance;
    r.detail = "well metric, t in [0, 1], " + std::to_string(path.size()) + " samples";
    return r;
}

CheckResult flat_metric_reduction() {
    SdeSystem sys;
    sys.dim = 2;
    sys.drift = [](const Vector& x, double t) {
        Vector a(2);
        a << -x(0) + std::sin(t), -x(1) + 0.5 * std::sin(x(0));
        return a;
    };
    sys.diffusion = [](const Vector& x, double) {
        Matrix b(2, 2);
        b << 1.0 + 0.1 * std::tanh(x(1)), 0.2, 0.0, 0.5 + 0.1 * std::cos(x(0));
        return b;
    };
    const QuadraticEnergy flat = QuadraticEnergy::identity(2);
    SimConfig cfg;
    cfg.dt = 0.01;
    cfg.n_steps = 1000;
    Vector x(2), y(2);
    x << 0.3, -0.2;
    y = x;
    std::uint64_t mismatches = 0;
    for (std::uint64_t s = 0; s < cfg.n_steps; ++s) {
        const double t = static_cast<double>(s) * cfg.dt;
        const Vector dB = gaussian_increments(7, 0, s, 2, cfg.dt);
        x = euclidean_em_step(sys, x, t, cfg.dt, dB);
        y = developed_em_step(sys, flat, y, t, cfg.dt, dB, cfg);
        if (!(x.array() == y.array()).all()) ++mismatches;
    }
    return {"flat_metric_reduction", mismatches == 0, static_cast<double>(mismatches), 0.0,
            "mismatching steps out of 1000"};
}

CheckResult known_metric_values() {
    Vector center(2), d(2);
    center << 1.0, 2.0;
    d << 400.0, 400.0;
    const PotentialWellEnergy well(center, d);
    const MetricState at_center = metric_from_energy(well, center, 0.0, 0.0);
    Matrix expected = Matrix::Zero(2, 2);
    expected.diagonal().setConstant(400.0);
    double residual = (at_center.g - expected).cwiseAbs().maxCoeff();

    const QuadraticEnergy flat = QuadraticEnergy::identity(2);
    const MetricState unit = metric_from_energy(flat, Vector::Constant(2, 0.7), 0.0, 0.0);
    residual = std::max(residual, (unit.g - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff());
    residual = std::max(residual, unit.gamma.max_abs());
    return {"known_metric_values", residual == 0.0, residual, 0.0,
            "well metric at its center, unit metric of x^T x"};
}

CheckResult ackley_identities() {
    const AckleyEnergy f(3);
    double residual = std::abs(f.value(Vector::Zero(3)));
    for (std::uint64_t i = 0; i < 20; ++i) {
        const Vector x = in_box(0, 3, i, Vector::Constant(3, -5.0), Vector::Constant(3, 5.0));
        const double fx = f.value(x);
        Vector p(3);
        p << x(2), x(0), x(1);
        const double scale = std::max(1.0, std::abs(fx));
        residual = std::max(residual, std::abs(f.value(p) - fx) / scale);
        residual = std::max(residual, std::abs(f.value(-x) - fx) / scale);
        if (!(fx > 0.0)) residual = std::max(residual, 1.0);
    }
    return {"ackley_origin_and_symmetry", residual <= 1e-12, residual, 1e-12,
            "f(0) = 0, permutation and sign invariance, positivity"};
}

CheckResult energy_floors() {
    Vector center(2), d(2), x0(2);
    center << 1.0, 2.0;
    d << 400.0, 400.0;
    x0 << 0.1, 0.1;
    const PotentialWellEnergy well(center, d);
    double residual = std::abs(well.value(center) - 1.0);
    const double h0 = duffing_hamiltonian(x0, 1000.0, 300.0);
    const DriftConstraintEnergy shell(1000.0, 300.0, 0.05, 1.0, h0);
    for (std::uint64_t i = 0; i < 20; ++i) {
        const Vector x = in_box(0, 4, i, center - Vector::Constant(2, 0.1),
                                center + Vector::Constant(2, 0.1));
        if (well.value(x) < 1.0) residual = std::max(residual, 1.0 - well.value(x));
        // A point on the shell V = Z_t: value and gradient vanish.
        const double t = 0.5 * static_cast<double>(i);
        const double x1 = 0.05;
        Vector y(2);
        y << x1, std::sqrt(2.0 * (shell.mean_energy(t) - 500.0 * x1 * x1 -
                                  75.0 * x1 * x1 * x1 * x1));
        const EnergyDerivatives e = shell.evaluate(y, t, 1);
        residual = std::max({residual, std::abs(e.value), e.gradient.cwiseAbs().maxCoeff()});
    }
    return {"energy_minima", residual <= 1e-12, residual, 1e-12,
            "well equals 1 at its center and is >= 1; constraint vanishes on its shell"};
}

CheckResult schedule_formula() {
    const std::vector<double> betas = annealing_schedule(1000.0, 0.01, 0.5);
    double residual = 0.0;
    for (std::size_t k = 1; k < betas.size(); ++k) {
        const double expected = betas[k - 1] / std::exp(0.01 * static_cast<double>(k));
        residual = std::max(residual, std::abs(betas[k] - expected) / expected);
    }
    const double next = betas.back() / std::exp(0.01 * static_cast<double>(betas.size()));
    const bool stops = betas.back() >= 0.5 && next < 0.5;
    return {"annealing_schedule", residual <= 1e-12 && stops, residual, 1e-12,
            std::to_string(betas.size()) + " temperatures"};
}

CheckResult brownian_variance() {
    SdeSystem sys;
    sys.dim = 1;
    sys.drift = [](const Vector&, double) { return Vector(Vector::Zero(1)); };
    sys.diffusion = [](const Vector&, double) { return Matrix(Matrix::Identity(1, 1)); };
    SimConfig cfg;
    cfg.scheme = Scheme::Euclidean;
    cfg.dt = 0.01;
    cfg.n_steps = 100;
    cfg.ensemble = 1000;
    const EnsembleResult run = run_ensemble(sys, nullptr, cfg, Vector(Vector::Zero(1)));
    double mean = 0.0, sq = 0.0;
    for (const Matrix& m : run.states) {
        const double v = m(0, m.cols() - 1);
        mean += v;
        sq += v * v;
    }
    const double n = static_cast<double>(run.states.size());
    mean /= n;
    const double var = (sq - n * mean * mean) / (n - 1.0);
    const double residual = std::abs(var - 1.0);
    return {"brownian_variance", residual <= 0.1, residual, 0.1,
            "Euclidean Brownian motion, variance at t = 1"};
}

}  // namespace

std::vector<CheckResult> run_checks(const CheckOptions& options) {
    const std::vector<Subject> all = subjects(options);
    std::vector<CheckResult> out;
    // An exception inside a check is reported as that check failing.
    auto guarded = [&out](const std::string& name, const std::function<void()>& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            out.push_back({name, false, std::numeric_limits<double>::quiet_NaN(), 0.0, e.what()});
        }
    };
    for (const Subject& s : all) {
        for (const char* kind : {"_gradient_fd", "_hessian_fd", "_thirds_fd",
                                 "_thirds_symmetric", "_christoffel_fd"}) {
            guarded(s.name + kind, [&] { out.push_back(derivative_check(s, options, kind)); });
        }
    }
    const std::vector<std::pair<std::string, std::function<CheckResult()>>> singles{
        {"christoffel_lower_symmetry", [&] { return christoffel_symmetry(all); }},
        {"inverse_times_metric_identity", [&] { return metric_algebra(all, false); }},
        {"inverse_sqrt_squares_to_inverse", [&] { return metric_algebra(all, true); }},
        {"geodesic_speed_conservation", geodesic_speed},
        {"flat_metric_reduction", flat_metric_reduction},
        {"known_metric_values", known_metric_values},
        {"ackley_origin_and_symmetry", ackley_identities},
        {"energy_minima", energy_floors},
        {"annealing_schedule", schedule_formula},
        {"brownian_variance", brownian_variance},
    };
    for (const auto& [name, fn] : singles) guarded(name, [&] { out.push_back(fn()); });
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.passed; });
}

nlohmann::json check_report(const std::vector<CheckResult>& results) {
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckResult& r : results) {
        checks.push_back({{"name", r.name},
                          {"passed", r.passed},
                          {"residual", r.residual},
                          {"tolerance", r.tolerance},
                          {"detail", r.detail}});
    }
    return {{"passed", all_passed(results)}, {"count", results.size()}, {"checks", checks}};
}

}  // namespace geodev
