#include "geodev/sde.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "geodev/errors.hpp"
#include "geodev/rng.hpp"

namespace geodev {

namespace {

Vector checked(Vector next) {
    if (!next.allFinite()) throw Diverged("integrator step produced a non-finite state");
    return next;
}

void check_shapes(const SdeSystem& sys, const Vector& x, const Vector& drift,
                  const Matrix& diffusion, const Vector& dB) {
    if (x.size() != sys.dim || drift.size() != sys.dim || diffusion.rows() != sys.dim ||
        diffusion.cols() != dB.size()) {
        throw std::invalid_argument("SDE system dimensions are inconsistent");
    }
}

}  // namespace

std::string_view to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::Euclidean: return "euclidean";
        case Scheme::Developed: return "developed";
        case Scheme::DevelopedUnscaledNoise: return "developed_literal_eq25";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name) {
    if (name == "euclidean") return Scheme::Euclidean;
    if (name == "developed") return Scheme::Developed;
    if (name == "developed_literal_eq25") return Scheme::DevelopedUnscaledNoise;
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

void SimConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
    if (n_steps < 1) throw std::invalid_argument("n_steps must be at least 1");
    if (n_steps >= (std::uint64_t{1} << 32)) throw std::invalid_argument("n_steps is too large");
    if (ensemble < 1) throw std::invalid_argument("ensemble must be at least 1");
    if (!(upsilon >= 0.0)) throw std::invalid_argument("upsilon must be nonnegative");
    if (!(pd_floor > 0.0)) throw std::invalid_argument("pd_floor must be positive");
    if (!(fd_scale > 0.0)) throw std::invalid_argument("fd_scale must be positive");
}

MetricOptions SimConfig::metric_options() const {
    return MetricOptions{pd_floor, clamp_eigenvalues, fd_scale};
}

std::size_t EnsembleResult::diverged_count() const {
    return static_cast<std::size_t>(
        std::count_if(status.begin(), status.end(), [](const auto& s) { return s.diverged; }));
}

std::vector<std::uint32_t> EnsembleResult::surviving_members() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 0; m < status.size(); ++m)
        if (!status[m].diverged) out.push_back(m);
    return out;
}

const std::vector<double>& EnsembleResult::diagnostic(std::string_view name) const {
    for (const auto& [key, series] : diagnostics)
        if (key == name) return series;
    throw std::out_of_range("no diagnostic named '" + std::string(name) + "'");
}

Vector euclidean_em_step(const SdeSystem& sys, const Vector& x, double t, double dt,
                         const Vector& dB) {
    const Vector a = sys.drift(x, t);
    const Matrix b = sys.diffusion(x, t);
    check_shapes(sys, x, a, b, dB);

    const Vector drift_part = a * dt;
    const Vector noise_part = b * dB;
    return checked(x + drift_part + noise_part);
}

Vector developed_em_step(const SdeSystem& sys, const EnergyModel& model, const Vector& x,
                         double t, double dt, const Vector& dB, const SimConfig& cfg) {
    const Vector a = sys.drift(x, t);
    const Matrix b = sys.diffusion(x, t);
    check_shapes(sys, x, a, b, dB);

    const MetricState metric =
        metric_from_energy(model, x, t, cfg.upsilon, cfg.metric_options());
    const Matrix sigma = metric.g_inv_sqrt * b;

    Vector scaled_drift = metric.g_inv_sqrt * a;
    const Vector drift_part = scaled_drift * dt;
    Vector noise_part;
    if (cfg.scheme == Scheme::DevelopedUnscaledNoise) {
        if (!a.isZero(0.0) || !b.isIdentity(0.0)) {
            throw std::invalid_argument(
                "developed_literal_eq25 requires zero drift and identity diffusion");
        }
        noise_part = dB;
    } else {
        noise_part = sigma * dB;
    }
    const Matrix noise_cov = sigma * sigma.transpose();
    const Vector correction = contract_connection(noise_cov, metric.gamma);

    Vector next = x + drift_part + noise_part;
    next -= (0.5 * dt) * correction;
    return checked(std::move(next));
}

Vector scheme_step(const SdeSystem& sys, const EnergyModel* model, const Vector& x, double t,
                   double dt, const Vector& dB, const SimConfig& cfg) {
    if (cfg.scheme == Scheme::Euclidean) return euclidean_em_step(sys, x, t, dt, dB);
    if (model == nullptr) throw std::invalid_argument("developed schemes need an energy model");
    return developed_em_step(sys, *model, x, t, dt, dB, cfg);
}

unsigned resolve_threads(unsigned requested, std::uint32_t members) {
    unsigned n = requested > 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("GEODEV_THREADS")) {
        char* end = nullptr;
        const unsigned long cap = std::strtoul(env, &end, 10);
        if (end != env && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return std::max(1u, std::min<unsigned>(n, members));
}

EnsembleResult run_ensemble(const SdeSystem& sys, const EnergyModel* model, const SimConfig& cfg,
                            const InitialState& initial,
                            const std::vector<Diagnostic>& diagnostics,
                            bool allow_all_diverged) {
    cfg.validate();
    const auto steps = cfg.n_steps;
    const int dim = sys.dim;

    EnsembleResult result;
    result.times.resize(steps + 1);
    for (std::uint64_t s = 0; s <= steps; ++s) result.times[s] = static_cast<double>(s) * cfg.dt;
    result.states.assign(cfg.ensemble, Matrix());
    result.status.assign(cfg.ensemble, MemberStatus{});

    auto simulate = [&](std::uint32_t m) {
        Matrix& path = result.states[m];
        path.resize(dim, static_cast<Eigen::Index>(steps + 1));
        Vector x = initial(m);
        if (x.size() != dim) throw std::invalid_argument("initial state has the wrong dimension");
        path.col(0) = x;
        for (std::uint64_t s = 0; s < steps; ++s) {
            const double t = result.times[s];
            try {
                const Vector dB = gaussian_increments(cfg.seed, m, s, dim, cfg.dt);
                x = scheme_step(sys, model, x, t, cfg.dt, dB, cfg);
            } catch (const Diverged& e) {
                result.status[m] = {true, static_cast<std::int64_t>(s), e.what()};
            } catch (const NonPositiveDefinite& e) {
                result.status[m] = {true, static_cast<std::int64_t>(s), e.what()};
            } catch (const EnergyOverflow& e) {
                result.status[m] = {true, static_cast<std::int64_t>(s), e.what()};
            } catch (const OriginSingularity& e) {
                result.status[m] = {true, static_cast<std::int64_t>(s), e.what()};
            }
            if (result.status[m].diverged) {
                path.rightCols(static_cast<Eigen::Index>(steps - s))
                    .setConstant(std::numeric_limits<double>::quiet_NaN());
                return;
            }
            path.col(static_cast<Eigen::Index>(s + 1)) = x;
        }
    };

    const unsigned workers = resolve_threads(cfg.threads, cfg.ensemble);
    if (workers <= 1) {
        for (std::uint32_t m = 0; m < cfg.ensemble; ++m) simulate(m);
    } else {
        std::atomic<std::uint32_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::uint32_t m = next++; m < cfg.ensemble; m = next++) {
                    try {
                        simulate(m);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
        pool.clear();
        if (failure) std::rethrow_exception(failure);
    }

    const auto survivors = result.surviving_members();
    if (survivors.empty() && !allow_all_diverged) {
        throw AllDiverged("all " + std::to_string(cfg.ensemble) + " ensemble members diverged");
    }

    for (const auto& diag : diagnostics) {
        std::vector<double> series(steps + 1, std::numeric_limits<double>::quiet_NaN());
        if (!survivors.empty()) {
            for (std::uint64_t s = 0; s <= steps; ++s) {
                double sum = 0.0;
                for (auto m : survivors)
                    sum += diag.fn(result.states[m].col(static_cast<Eigen::Index>(s)),
                                   result.times[s]);
                series[s] = sum / static_cast<double>(survivors.size());
            }
        }
        result.diagnostics.emplace_back(diag.name, std::move(series));
    }
    return result;
}

EnsembleResult run_ensemble(const SdeSystem& sys, const EnergyModel* model, const SimConfig& cfg,
                            const Vector& x0, const std::vector<Diagnostic>& diagnostics,
                            bool allow_all_diverged) {
    return run_ensemble(
        sys, model, cfg, [&](std::uint32_t) { return x0; }, diagnostics, allow_all_diverged);
}

}  // namespace geodev
