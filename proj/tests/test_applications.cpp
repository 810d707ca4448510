#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geodev/applications.hpp"
#include "oracle.hpp"

using namespace geodev;

TEST_CASE("annealing schedule") {
    const auto betas = annealing_schedule(1000.0, 0.01, 0.5);
    REQUIRE(betas.size() > 2);
    CHECK(betas.front() == 1000.0);
    for (std::size_t k = 1; k < betas.size(); ++k) {
        const double expected = betas[k - 1] / std::exp(0.01 * static_cast<double>(k));
        CHECK(std::abs(betas[k] - expected) <= 1e-12 * expected);
        CHECK(betas[k] >= 0.5);
    }
    CHECK(betas.back() / std::exp(0.01 * static_cast<double>(betas.size())) < 0.5);
    // Closed form: beta_k = beta_0 exp(-0.01 k (k + 1) / 2).
    const std::size_t k = betas.size() - 1;
    CHECK(betas[k] == doctest::Approx(1000.0 * std::exp(-0.005 * k * (k + 1.0))).epsilon(1e-12));
}

TEST_CASE("optimizer config validation") {
    OptimizerConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.beta_min = 2000.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = OptimizerConfig{};
    cfg.decay = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = OptimizerConfig{};
    cfg.beta_min = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("initial ensemble stays in the box and outside the exclusion ball") {
    OptimizerConfig cfg;
    cfg.sim.ensemble = 200;
    cfg.exclusion_radius = 2.0;
    const auto pts = initial_ensemble(cfg);
    REQUIRE(pts.size() == 200);
    for (const Vector& x : pts) {
        CHECK(x.norm() >= 2.0);
        CHECK(x.maxCoeff() <= 5.0);
        CHECK(x.minCoeff() >= -5.0);
    }
    CHECK(initial_ensemble(cfg)[17] == pts[17]);
}

TEST_CASE("2-D geometric optimizer") {
    OptimizerConfig cfg;
    const OptimizerResult r = run_geometric_optimizer(cfg);
    REQUIRE(r.incumbent.size() == r.betas.size());
    REQUIRE(r.member_values.size() == r.betas.size());
    for (std::size_t k = 1; k < r.incumbent.size(); ++k) CHECK(r.incumbent[k] <= r.incumbent[k - 1]);
    for (std::size_t k = 0; k < r.incumbent.size(); ++k) CHECK(r.ensemble_best[k] >= r.incumbent[k]);
    CHECK(r.best_value == r.incumbent.back());
    CHECK(oracle::ackley(r.best_point) == doctest::Approx(r.best_value).epsilon(1e-12));
    CHECK(r.best_value < 0.1);
    // Trajectory column 0 is the initial ensemble.
    const auto init = initial_ensemble(cfg);
    for (std::size_t m = 0; m < init.size(); ++m) CHECK(r.trajectories[m].col(0) == init[m]);
}

TEST_CASE("40-D: geometric search converges, plain Langevin does not") {
    OptimizerConfig cfg;
    cfg.dim = 40;
    cfg.beta0 = 5e4;
    cfg.euclidean_beta0 = 1000.0;
    cfg.sim.seed = 3;
    const OptimizerResult g = run_geometric_optimizer(cfg);
    const OptimizerResult e = run_euclidean_optimizer(cfg);
    CHECK(g.incumbent.back() < g.incumbent.front());
    const std::size_t k40 = std::min<std::size_t>(40, g.incumbent.size() - 1);
    CHECK(g.incumbent[k40] <= 0.1 * g.incumbent[0]);
    CHECK(e.incumbent[0] == g.incumbent[0]);
    const std::size_t e40 = std::min<std::size_t>(40, e.incumbent.size() - 1);
    CHECK(e.incumbent[e40] > 0.1 * e.incumbent[0]);
}

TEST_CASE("trapped brownian motion") {
    WellExperimentConfig cfg;
    cfg.sim.ensemble = 20;
    const WellExperimentResult r = run_trapped_brownian(cfg);
    CHECK(r.geometric.states.size() == 20);
    CHECK(r.summary.rms_geometric.size() == cfg.sim.n_steps + 1);
    CHECK(r.summary.rms_geometric.front() == 0.0);
    CHECK(r.summary.last_quarter_rms <= 2.0 * r.summary.first_quarter_rms);
    // The trap keeps the geometric path far tighter than free diffusion.
    CHECK(r.summary.max_excursion_geometric < r.summary.rms_euclidean.back());
    CHECK_FALSE(cfg.initial_state.has_value());
    CHECK(r.geometric.states[0].col(0) == cfg.center);

    WellExperimentConfig bad;
    bad.sharpness(1) = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("free diffusion comparator has mean squared displacement 2t") {
    WellExperimentConfig cfg;
    cfg.sim.ensemble = 500;
    cfg.sim.scheme = Scheme::Euclidean;
    cfg.sim.seed = 1;
    const WellExperimentResult r = run_trapped_brownian(cfg);
    const double t = r.euclidean.times.back();
    const double msd = std::pow(r.summary.rms_euclidean.back(), 2);
    CHECK(std::abs(msd - 2.0 * t) <= 0.15 * 2.0 * t);
}

TEST_CASE("mean energy law") {
    CHECK(theoretical_mean_energy(5.0125, 0.05, 10.0) == doctest::Approx(5.025).epsilon(1e-15));
    Matrix sigma = Matrix::Zero(2, 2);
    sigma(1, 1) = 0.05;
    for (double t : {0.0, 1.0, 7.3}) {
        CHECK(theoretical_mean_energy(5.0125, sigma, t) ==
              doctest::Approx(theoretical_mean_energy(5.0125, 0.05, t)).epsilon(1e-15));
    }
    DuffingExperimentConfig cfg;
    CHECK(cfg.initial_energy() == doctest::Approx(5.0125).epsilon(1e-15));
}

TEST_CASE("drift-preserving duffing run") {
    DuffingExperimentConfig cfg;
    cfg.sim.ensemble = 10;
    const DuffingExperimentResult r = run_duffing_drift_preserving(cfg);
    const auto& s = r.summary;
    REQUIRE(s.geometric.mean_h.size() == cfg.sim.n_steps + 1);
    for (std::size_t i = 0; i < r.geometric.times.size(); ++i) {
        CHECK(s.geometric.theory_z[i] == doctest::Approx(5.0125 + 0.00125 * r.geometric.times[i]).epsilon(1e-14));
    }
    CHECK(s.geometric.mean_h.front() == doctest::Approx(5.0125).epsilon(1e-14));
    CHECK(s.geometric.sup_relative_error <= 0.05);
    CHECK(r.geometric.diverged_count() == 0);
    REQUIRE(s.euclidean_blowup_time.has_value());
    CHECK(*s.euclidean_blowup_time < 10.0);
}

TEST_CASE("noise-free duffing run conserves energy") {
    DuffingExperimentConfig cfg;
    cfg.sigma = 0.0;
    cfg.sim.ensemble = 2;
    const DuffingExperimentResult r = run_duffing_drift_preserving(cfg);
    CHECK(r.summary.geometric.sup_relative_error <= 0.01);
    // Every member follows the same path without noise.
    CHECK((r.geometric.states[0].array() == r.geometric.states[1].array()).all());
}

TEST_CASE("constraint sharpness sweep") {
    DuffingExperimentConfig cfg;
    cfg.sim.ensemble = 4;
    cfg.sim.n_steps = 200;
    const auto sweep = sweep_constraint_sharpness(cfg, {0.5, 1.0, 2.0});
    REQUIRE(sweep.size() == 3);
    CHECK(sweep[1].sharpness == 1.0);
    for (const auto& p : sweep) CHECK(std::isfinite(p.sup_relative_error));

    DuffingExperimentConfig bad;
    bad.sigma = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
