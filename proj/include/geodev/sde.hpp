#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "geodev/energy_model.hpp"
#include "geodev/geometry.hpp"

namespace geodev {

// Euclidean Ito SDE dX = drift(X, t) dt + diffusion(X, t) dB.
struct SdeSystem {
    int dim = 0;
    std::function<Vector(const Vector&, double)> drift;
    std::function<Matrix(const Vector&, double)> diffusion;
};

enum class Scheme {
    Euclidean,
    // Developed SDE with noise sigma = sqrt(g^-1) beta.
    Developed,
    // Brownian-motion form that keeps the raw increment dB as the noise term;
    // only defined for zero drift and identity diffusion.
    DevelopedUnscaledNoise,
};

std::string_view to_string(Scheme scheme);
// Accepts "euclidean", "developed", "developed_literal_eq25".
Scheme parse_scheme(std::string_view name);

struct SimConfig {
    double dt = 0.01;
    std::uint64_t n_steps = 1000;
    std::uint32_t ensemble = 1;
    std::uint64_t seed = 0;
    double upsilon = 0.0;
    Scheme scheme = Scheme::Developed;
    bool clamp_eigenvalues = false;
    double pd_floor = 1e-10;
    double fd_scale = 1e-5;
    // 0 picks hardware concurrency; GEODEV_THREADS caps either way.
    unsigned threads = 0;

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
    MetricOptions metric_options() const;
};

struct MemberStatus {
    bool diverged = false;
    std::int64_t failed_step = -1;  // step whose update failed
    std::string reason;
};

struct Diagnostic {
    std::string name;
    std::function<double(const Vector&, double)> fn;
};

struct EnsembleResult {
    std::vector<double> times;         // n_steps + 1 points, spacing dt
    std::vector<Matrix> states;        // states[m].col(s): member m at times[s]
    std::vector<MemberStatus> status;  // per member
    // Ensemble mean over non-diverged members, one value per time.
    std::vector<std::pair<std::string, std::vector<double>>> diagnostics;

    std::size_t diverged_count() const;
    std::vector<std::uint32_t> surviving_members() const;
    const std::vector<double>& diagnostic(std::string_view name) const;
};

Vector euclidean_em_step(const SdeSystem& sys, const Vector& x, double t, double dt,
                         const Vector& dB);

// One explicit step of the developed SDE
//   dx = sqrt(g^-1) a dt + sigma dB - 1/2 (sigma sigma^T)_kl Gamma^i_kl dt,
//   sigma = sqrt(g^-1) b,
// with g, Gamma frozen at (x, t) and a, b evaluated at the manifold state.
Vector developed_em_step(const SdeSystem& sys, const EnergyModel& model, const Vector& x,
                         double t, double dt, const Vector& dB, const SimConfig& cfg);

// Dispatches on cfg.scheme; model may be null for the Euclidean scheme.
Vector scheme_step(const SdeSystem& sys, const EnergyModel* model, const Vector& x, double t,
                   double dt, const Vector& dB, const SimConfig& cfg);

using InitialState = std::function<Vector(std::uint32_t member)>;

// Integrates cfg.ensemble members with noise keyed by (cfg.seed, member,
// step). Members whose step fails (non-finite state, metric breakdown,
// energy overflow) are flagged, padded with NaN, and excluded from the
// diagnostics. Throws AllDiverged when no member survives unless
// allow_all_diverged is set.
EnsembleResult run_ensemble(const SdeSystem& sys, const EnergyModel* model, const SimConfig& cfg,
                            const InitialState& initial,
                            const std::vector<Diagnostic>& diagnostics = {},
                            bool allow_all_diverged = false);

EnsembleResult run_ensemble(const SdeSystem& sys, const EnergyModel* model, const SimConfig& cfg,
                            const Vector& x0, const std::vector<Diagnostic>& diagnostics = {},
                            bool allow_all_diverged = false);

// Worker count for an ensemble of the given size.
unsigned resolve_threads(unsigned requested, std::uint32_t members);

}  // namespace geodev
