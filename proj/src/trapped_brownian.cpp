#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "geodev/applications.hpp"

namespace geodev {

namespace {

SdeSystem brownian_system(int dim) {
    return SdeSystem{dim, [dim](const Vector&, double) { return Vector(Vector::Zero(dim)); },
                     [dim](const Vector&, double) { return Matrix(Matrix::Identity(dim, dim)); }};
}

std::vector<double> rms_series(const EnsembleResult& run, const Vector& reference) {
    std::vector<double> out(run.times.size());
    for (std::size_t s = 0; s < out.size(); ++s) out[s] = window_rms(run, reference, s, s + 1);
    return out;
}

double max_excursion(const EnsembleResult& run, const Vector& reference) {
    double m = 0.0;
    for (auto member : run.surviving_members()) {
        const Matrix& path = run.states[member];
        m = std::max(m, (path.colwise() - reference).colwise().norm().maxCoeff());
    }
    return m;
}

}  // namespace

void WellExperimentConfig::validate() const {
    sim.validate();
    if (center.size() == 0 || center.size() != sharpness.size()) {
        throw std::invalid_argument("center and d must have the same nonzero length");
    }
    if ((sharpness.array() <= 0.0).any()) throw std::invalid_argument("d entries must be positive");
    if (initial_state && initial_state->size() != center.size()) {
        throw std::invalid_argument("initial_state must match the dimension of center");
    }
    const double horizon = static_cast<double>(sim.n_steps) * sim.dt;
    if (!(burn_in >= 0.0) || burn_in >= horizon) {
        throw std::invalid_argument("burn_in must lie in [0, n_steps * dt)");
    }
}

double window_rms(const EnsembleResult& run, const Vector& reference, std::size_t begin,
                  std::size_t end) {
    double sum = 0.0;
    std::size_t count = 0;
    for (auto member : run.surviving_members()) {
        const Matrix& path = run.states[member];
        for (std::size_t s = begin; s < end; ++s) {
            sum += (path.col(static_cast<Eigen::Index>(s)) - reference).squaredNorm();
            ++count;
        }
    }
    return count == 0 ? std::nan("") : std::sqrt(sum / static_cast<double>(count));
}

WellExperimentResult run_trapped_brownian(const WellExperimentConfig& cfg) {
    cfg.validate();
    const int dim = static_cast<int>(cfg.center.size());
    const PotentialWellEnergy well(cfg.center, cfg.sharpness);
    const SdeSystem sys = brownian_system(dim);
    const Vector x0 = cfg.initial_state.value_or(cfg.center);

    WellExperimentResult out;
    out.geometric = run_ensemble(sys, &well, cfg.sim, x0);

    SimConfig euclid = cfg.sim;
    euclid.scheme = Scheme::Euclidean;
    out.euclidean = run_ensemble(sys, nullptr, euclid, x0);

    WellSummary& summary = out.summary;
    summary.rms_geometric = rms_series(out.geometric, cfg.center);
    summary.rms_euclidean = rms_series(out.euclidean, x0);
    summary.max_excursion_geometric = max_excursion(out.geometric, cfg.center);
    summary.max_excursion_euclidean = max_excursion(out.euclidean, x0);

    // Post burn-in window split into four equal blocks of time indices.
    const auto first = static_cast<std::size_t>(std::ceil(cfg.burn_in / cfg.sim.dt - 1e-9));
    const std::size_t last = out.geometric.times.size();
    const std::size_t quarter = std::max<std::size_t>(1, (last - first) / 4);
    summary.first_quarter_rms = window_rms(out.geometric, cfg.center, first, first + quarter);
    summary.last_quarter_rms = window_rms(out.geometric, cfg.center, last - quarter, last);
    return out;
}

}  // namespace geodev
