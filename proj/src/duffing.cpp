#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "geodev/applications.hpp"

namespace geodev {

void DuffingExperimentConfig::validate() const {
    sim.validate();
    if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be nonnegative");
    if (!(sharpness > 0.0)) throw std::invalid_argument("beta_e must be positive");
    if (x0.size() != 2) throw std::invalid_argument("x0 must have two entries");
    for (double b : sharpness_sweep)
        if (!(b > 0.0)) throw std::invalid_argument("beta_sweep entries must be positive");
}

double DuffingExperimentConfig::initial_energy() const {
    return duffing_hamiltonian(x0, stiffness, cubic_stiffness);
}

double theoretical_mean_energy(double h0, const Matrix& noise_intensity, double t) {
    return h0 + 0.5 * (noise_intensity.transpose() * noise_intensity).trace() * t;
}

double theoretical_mean_energy(double h0, double sigma, double t) {
    return h0 + 0.5 * sigma * sigma * t;
}

SdeSystem duffing_system(double stiffness, double cubic_stiffness, double sigma) {
    SdeSystem sys;
    sys.dim = 2;
    sys.drift = [stiffness, cubic_stiffness](const Vector& x, double) {
        Vector f(2);
        f << x[1], -stiffness * x[0] - cubic_stiffness * x[0] * x[0] * x[0];
        return f;
    };
    sys.diffusion = [sigma](const Vector&, double) {
        Matrix s = Matrix::Zero(2, 2);
        s(1, 1) = sigma;
        return s;
    };
    return sys;
}

EnergySeries energy_series(const EnsembleResult& run, double stiffness, double cubic_stiffness,
                           double h0, double sigma) {
    const auto survivors = run.surviving_members();
    const std::size_t n = run.times.size();
    EnergySeries out;
    out.mean_h.assign(n, std::nan(""));
    out.rmse.assign(n, std::nan(""));
    out.theory_z.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
        const double z = theoretical_mean_energy(h0, sigma, run.times[s]);
        out.theory_z[s] = z;
        if (survivors.empty()) continue;
        double sum = 0.0;
        double sq = 0.0;
        for (auto m : survivors) {
            const double h = duffing_hamiltonian(run.states[m].col(static_cast<Eigen::Index>(s)),
                                                 stiffness, cubic_stiffness);
            sum += h;
            sq += (h - z) * (h - z);
        }
        const auto count = static_cast<double>(survivors.size());
        out.mean_h[s] = sum / count;
        out.rmse[s] = std::sqrt(sq / count);
        out.sup_relative_error =
            std::max(out.sup_relative_error, std::abs(out.mean_h[s] - z) / std::abs(z));
    }
    if (survivors.empty()) out.sup_relative_error = std::nan("");
    return out;
}

DuffingExperimentResult run_duffing_drift_preserving(const DuffingExperimentConfig& cfg) {
    cfg.validate();
    const double h0 = cfg.initial_energy();
    const DriftConstraintEnergy constraint(cfg.stiffness, cfg.cubic_stiffness, cfg.sigma,
                                           cfg.sharpness, h0);
    const SdeSystem sys = duffing_system(cfg.stiffness, cfg.cubic_stiffness, cfg.sigma);

    DuffingExperimentResult out;
    out.geometric = run_ensemble(sys, &constraint, cfg.sim, cfg.x0);

    SimConfig euclid = cfg.sim;
    euclid.scheme = Scheme::Euclidean;
    out.euclidean = run_ensemble(sys, nullptr, euclid, cfg.x0, {}, /*allow_all_diverged=*/true);

    DuffingSummary& summary = out.summary;
    summary.geometric = energy_series(out.geometric, cfg.stiffness, cfg.cubic_stiffness, h0, cfg.sigma);
    summary.euclidean = energy_series(out.euclidean, cfg.stiffness, cfg.cubic_stiffness, h0, cfg.sigma);
    summary.euclidean_diverged = out.euclidean.diverged_count();

    std::optional<std::size_t> blowup;
    for (const auto& st : out.euclidean.status) {
        if (!st.diverged) continue;
        const auto s = static_cast<std::size_t>(st.failed_step + 1);
        blowup = blowup ? std::min(*blowup, s) : s;
    }
    const auto& series = summary.euclidean;
    for (std::size_t s = 0; s < series.mean_h.size(); ++s) {
        if (blowup && s >= *blowup) break;
        if (std::abs(series.mean_h[s] - series.theory_z[s]) > std::abs(series.theory_z[s])) {
            blowup = s;
            break;
        }
    }
    if (blowup) summary.euclidean_blowup_time = out.euclidean.times[*blowup];
    return out;
}

std::vector<SweepPoint> sweep_constraint_sharpness(const DuffingExperimentConfig& cfg,
                                                   const std::vector<double>& sharpness_values) {
    std::vector<SweepPoint> out;
    const double h0 = cfg.initial_energy();
    const SdeSystem sys = duffing_system(cfg.stiffness, cfg.cubic_stiffness, cfg.sigma);
    for (double beta : sharpness_values) {
        const DriftConstraintEnergy constraint(cfg.stiffness, cfg.cubic_stiffness, cfg.sigma, beta, h0);
        const EnsembleResult run = run_ensemble(sys, &constraint, cfg.sim, cfg.x0, {}, true);
        const EnergySeries series =
            energy_series(run, cfg.stiffness, cfg.cubic_stiffness, h0, cfg.sigma);
        out.push_back({beta, series.sup_relative_error, run.diverged_count()});
    }
    return out;
}

}  // namespace geodev
