#include <cmath>
#include <limits>
#include <stdexcept>

#include "geodev/applications.hpp"
#include "geodev/errors.hpp"
#include "geodev/rng.hpp"

namespace geodev {

void OptimizerConfig::validate() const {
    sim.validate();
    if (dim < 1) throw std::invalid_argument("dim must be positive");
    if (!(beta_min > 0.0)) throw std::invalid_argument("beta_min must be positive");
    if (!(beta0 > beta_min)) throw std::invalid_argument("beta0 must exceed beta_min");
    if (!(euclidean_beta0 > beta_min)) {
        throw std::invalid_argument("euclidean_beta0 must exceed beta_min");
    }
    if (!(decay > 0.0)) throw std::invalid_argument("decay must be positive");
    if (!(init_high > init_low)) throw std::invalid_argument("init_high must exceed init_low");
    if (!(exclusion_radius >= origin_eps)) {
        throw std::invalid_argument("exclusion_radius must be at least origin_eps");
    }
    const double corner = std::sqrt(static_cast<double>(dim)) *
                          std::max(std::abs(init_low), std::abs(init_high));
    if (!(exclusion_radius < corner)) {
        throw std::invalid_argument("exclusion_radius leaves no admissible initial points");
    }
    if (!(euclidean_dt > 0.0)) throw std::invalid_argument("euclidean_dt must be positive");
}

std::vector<double> annealing_schedule(double beta0, double decay, double beta_min) {
    std::vector<double> betas{beta0};
    double beta = beta0;
    for (int k = 1;; ++k) {
        beta /= std::exp(decay * k);
        if (beta < beta_min) break;
        betas.push_back(beta);
    }
    return betas;
}

std::vector<Vector> initial_ensemble(const OptimizerConfig& cfg) {
    std::vector<Vector> out;
    out.reserve(cfg.sim.ensemble);
    for (std::uint32_t m = 0; m < cfg.sim.ensemble; ++m) {
        for (std::uint64_t attempt = 0;; ++attempt) {
            const Vector u = open_uniforms(cfg.sim.seed, Stream::Initial, m, attempt, cfg.dim);
            Vector x = (cfg.init_low + (cfg.init_high - cfg.init_low) * u.array()).matrix();
            if (x.norm() >= cfg.exclusion_radius) {
                out.push_back(std::move(x));
                break;
            }
        }
    }
    return out;
}

namespace {

OptimizerResult run_annealed_langevin(const OptimizerConfig& cfg, SimConfig sim, double beta0) {
    cfg.validate();
    const AckleyEnergy ackley(cfg.dim, cfg.a, cfg.b, cfg.c, cfg.origin_eps);
    const std::vector<double> betas = annealing_schedule(beta0, cfg.decay, cfg.beta_min);
    const std::size_t iterations = betas.size() - 1;
    sim.n_steps = std::max<std::uint64_t>(1, iterations);
    sim.validate();

    const std::uint32_t members = sim.ensemble;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    OptimizerResult out;
    out.scheme = sim.scheme;
    out.betas = betas;
    out.status.assign(members, MemberStatus{});
    out.trajectories.assign(members, Matrix::Constant(cfg.dim, iterations + 1, nan));
    out.member_values.assign(iterations + 1, std::vector<double>(members, nan));
    out.best_value = std::numeric_limits<double>::infinity();

    std::vector<Vector> state = initial_ensemble(cfg);
    std::vector<Vector> last_admissible = state;

    auto record = [&](std::size_t k) {
        double best = std::numeric_limits<double>::infinity();
        for (std::uint32_t m = 0; m < members; ++m) {
            if (out.status[m].diverged) continue;
            out.trajectories[m].col(static_cast<Eigen::Index>(k)) = state[m];
            const double f = ackley.value(state[m]);
            out.member_values[k][m] = f;
            if (f < best) best = f;
            if (f < out.best_value) {
                out.best_value = f;
                out.best_point = state[m];
            }
        }
        out.ensemble_best.push_back(best);
        out.incumbent.push_back(out.best_value);
    };
    record(0);

    for (std::size_t k = 1; k <= iterations; ++k) {
        const double beta = betas[k];
        const double t = static_cast<double>(k - 1) * sim.dt;
        SdeSystem langevin;
        langevin.dim = cfg.dim;
        langevin.drift = [&ackley, beta](const Vector& x, double) {
            return Vector(-beta * ackley.gradient(x));
        };
        langevin.diffusion = [n = cfg.dim, beta](const Vector&, double) {
            return Matrix(std::sqrt(2.0 * beta) * Matrix::Identity(n, n));
        };

        for (std::uint32_t m = 0; m < members; ++m) {
            if (out.status[m].diverged) continue;
            // Near the origin the derivatives are taken at the last admissible
            // point and the resulting increment is applied to the current state.
            const bool singular = state[m].norm() < cfg.origin_eps;
            if (singular) ++out.singular_evaluations;
            const Vector& eval_at = singular ? last_admissible[m] : state[m];
            const Vector dB = gaussian_increments(sim.seed, m, k - 1, cfg.dim, sim.dt);
            try {
                const Vector moved = scheme_step(langevin, &ackley, eval_at, t, sim.dt, dB, sim);
                state[m] = singular ? Vector(state[m] + (moved - eval_at)) : moved;
                if (!state[m].allFinite()) throw Diverged("non-finite optimizer state");
            } catch (const Diverged& e) {
                out.status[m] = {true, static_cast<std::int64_t>(k - 1), e.what()};
            } catch (const NonPositiveDefinite& e) {
                out.status[m] = {true, static_cast<std::int64_t>(k - 1), e.what()};
            }
            if (!out.status[m].diverged && state[m].norm() >= cfg.origin_eps) {
                last_admissible[m] = state[m];
            }
        }
        record(k);
    }

    bool any_alive = false;
    for (const auto& s : out.status) any_alive = any_alive || !s.diverged;
    if (!any_alive) throw AllDiverged("all optimizer members diverged");
    return out;
}

}  // namespace

OptimizerResult run_geometric_optimizer(const OptimizerConfig& cfg) {
    return run_annealed_langevin(cfg, cfg.sim, cfg.beta0);
}

OptimizerResult run_euclidean_optimizer(const OptimizerConfig& cfg) {
    SimConfig sim = cfg.sim;
    sim.scheme = Scheme::Euclidean;
    sim.dt = cfg.euclidean_dt;
    return run_annealed_langevin(cfg, sim, cfg.euclidean_beta0);
}

}  // namespace geodev
