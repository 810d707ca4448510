#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "geodev/energies.hpp"
#include "geodev/sde.hpp"

namespace geodev {

// ---------------------------------------------------------------------------
// Brownian motion trapped in a potential well

struct WellExperimentConfig {
    SimConfig sim = [] {
        SimConfig s;
        s.dt = 0.01;
        s.n_steps = 1000;
        s.ensemble = 100;
        s.upsilon = 0.0;
        return s;
    }();
    Vector center = Vector::Constant(2, 0.0);
    Vector sharpness = Vector::Constant(2, 400.0);
    // Defaults to the well center.
    std::optional<Vector> initial_state;
    // Leading time window discarded before the stationarity comparison.
    double burn_in = 1.0;

    WellExperimentConfig() { center << 1.0, 2.0; }
    void validate() const;
};

struct WellSummary {
    // RMS over surviving members of the distance to the center (geometric)
    // and to the start (Euclidean comparator), one value per time.
    std::vector<double> rms_geometric;
    std::vector<double> rms_euclidean;
    double max_excursion_geometric = 0.0;
    double max_excursion_euclidean = 0.0;
    // RMS distance over the first and last quarter of the post burn-in window.
    double first_quarter_rms = 0.0;
    double last_quarter_rms = 0.0;
};

struct WellExperimentResult {
    EnsembleResult geometric;
    EnsembleResult euclidean;
    WellSummary summary;
};

WellExperimentResult run_trapped_brownian(const WellExperimentConfig& cfg);

// RMS of |x - reference| over surviving members and the time indices [begin, end).
double window_rms(const EnsembleResult& run, const Vector& reference, std::size_t begin,
                  std::size_t end);

// ---------------------------------------------------------------------------
// Drift-preserving integration of the noisy Duffing oscillator

struct DuffingExperimentConfig {
    SimConfig sim = [] {
        SimConfig s;
        s.dt = 0.01;
        s.n_steps = 1000;
        s.ensemble = 50;
        s.upsilon = 1e4;
        return s;
    }();
    double stiffness = 1000.0;
    double cubic_stiffness = 300.0;
    double sigma = 0.05;
    // Constraint sharpness of the energy shell; a tuning knob.
    double sharpness = 1.0;
    Vector x0 = Vector::Constant(2, 0.1);
    // Optional sharpness values for sweep_constraint_sharpness.
    std::vector<double> sharpness_sweep;

    void validate() const;
    double initial_energy() const;
};

struct EnergySeries {
    std::vector<double> mean_h;    // ensemble mean Hamiltonian
    std::vector<double> theory_z;  // H0 + sigma^2 t / 2
    std::vector<double> rmse;      // sqrt(mean_m (H_m - Z_t)^2)
    double sup_relative_error = 0.0;
};

struct DuffingSummary {
    EnergySeries geometric;
    EnergySeries euclidean;
    std::size_t euclidean_diverged = 0;
    // First time the comparator's mean energy is off by more than 100% or a
    // member fails; empty if neither happens within the horizon.
    std::optional<double> euclidean_blowup_time;
};

struct DuffingExperimentResult {
    EnsembleResult geometric;
    EnsembleResult euclidean;
    DuffingSummary summary;
};

SdeSystem duffing_system(double stiffness, double cubic_stiffness, double sigma);

DuffingExperimentResult run_duffing_drift_preserving(const DuffingExperimentConfig& cfg);

EnergySeries energy_series(const EnsembleResult& run, double stiffness, double cubic_stiffness,
                           double h0, double sigma);

struct SweepPoint {
    double sharpness = 0.0;
    double sup_relative_error = 0.0;
    std::size_t diverged = 0;
};

std::vector<SweepPoint> sweep_constraint_sharpness(const DuffingExperimentConfig& cfg,
                                                   const std::vector<double>& sharpness_values);

// H0 + tr(Sigma^T Sigma) t / 2
double theoretical_mean_energy(double h0, const Matrix& noise_intensity, double t);
// Scalar form for Sigma = diag(0, sigma).
double theoretical_mean_energy(double h0, double sigma, double t);

// ---------------------------------------------------------------------------
// Annealed Langevin search on the Ackley function

struct OptimizerConfig {
    // dt, ensemble, seed, upsilon, scheme and metric options are used;
    // the step count follows from the annealing schedule.
    SimConfig sim = [] {
        SimConfig s;
        s.dt = 0.5;
        s.ensemble = 5;
        s.upsilon = 1e6;
        return s;
    }();
    int dim = 2;
    double a = 20.0;
    double b = 0.2;
    double c = 2.0 * 3.14159265358979323846;
    double beta0 = 1000.0;
    double decay = 0.01;
    double beta_min = 0.5;
    double init_low = -5.0;
    double init_high = 5.0;
    // Initial members are drawn outside this ball around the origin.
    double exclusion_radius = 0.1;
    double origin_eps = 1e-8;
    // Parameters of the plain Langevin comparator.
    double euclidean_dt = 0.01;
    double euclidean_beta0 = 50.0;

    void validate() const;
};

// beta_k = beta_{k-1} / exp(decay * k) for k = 1, 2, ...; the returned list
// holds beta_0 followed by every beta_k >= beta_min.
std::vector<double> annealing_schedule(double beta0, double decay, double beta_min);

struct OptimizerResult {
    Scheme scheme = Scheme::Developed;
    Vector best_point;
    double best_value = 0.0;
    // Row 0 is the initial ensemble (beta_0); row k follows step k.
    std::vector<double> betas;
    std::vector<double> ensemble_best;
    std::vector<double> incumbent;
    std::vector<std::vector<double>> member_values;  // [iteration][member]
    std::vector<Matrix> trajectories;                // [member].col(iteration)
    std::vector<MemberStatus> status;
    // Steps whose derivatives were taken at the last admissible point.
    std::size_t singular_evaluations = 0;
};

// Initial ensemble: uniform on [init_low, init_high]^n outside exclusion_radius.
std::vector<Vector> initial_ensemble(const OptimizerConfig& cfg);

// Runs cfg.sim.scheme with cfg.sim.dt and cfg.beta0.
OptimizerResult run_geometric_optimizer(const OptimizerConfig& cfg);
// Plain Langevin with euclidean_dt and euclidean_beta0, same initial ensemble.
OptimizerResult run_euclidean_optimizer(const OptimizerConfig& cfg);

}  // namespace geodev
