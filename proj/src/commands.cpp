#include "geodev/commands.hpp"

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "geodev/applications.hpp"
#include "geodev/checks.hpp"
#include "geodev/config.hpp"
#include "geodev/errors.hpp"
#include "geodev/output.hpp"

namespace geodev {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Session {
public:
    Session(std::string_view command, const CommandOptions& options)
        : command_(command), options_(options), start_(std::chrono::steady_clock::now()) {}

    RunConfig load(std::string_view block) const {
        RunConfig cfg = options_.config ? load_config(*options_.config) : RunConfig{};
        if (options_.seed) cfg.common.seed = *options_.seed;
        if (options_.scheme) cfg.common.scheme = *options_.scheme;
        cfg.apply_common();
        if (cfg.common.scheme == Scheme::DevelopedUnscaledNoise &&
            (block == "duffing" || block == "optimize")) {
            throw ConfigError("common.scheme: developed_literal_eq25 only applies to `well`");
        }
        validate_config(cfg, block);
        std::error_code ec;
        fs::create_directories(options_.out_dir, ec);
        if (ec) {
            throw ConfigError("--out: cannot create " + options_.out_dir.string() + ": " +
                              ec.message());
        }
        return cfg;
    }

    fs::path artifact(const std::string& name) {
        artifacts_.push_back(name);
        return options_.out_dir / name;
    }

    void write_manifest(const RunConfig& cfg, json divergence) {
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        json versions = {
            {"geodev", std::string(kVersion)},
            {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                          std::to_string(EIGEN_MAJOR_VERSION) + "." +
                          std::to_string(EIGEN_MINOR_VERSION)},
            {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
            {"compiler", __VERSION__},
        };
        artifacts_.push_back("manifest.json");
        const json manifest = {
            {"command", command_},
            {"config", to_json(cfg)},
            {"seed", cfg.common.seed},
            {"artifacts", artifacts_},
            {"wall_clock_seconds", seconds},
            {"versions", std::move(versions)},
            {"divergence", std::move(divergence)},
        };
        write_json(options_.out_dir / "manifest.json", manifest);
    }

private:
    std::string command_;
    const CommandOptions& options_;
    std::chrono::steady_clock::time_point start_;
    std::vector<std::string> artifacts_;
};

json status_json(const std::vector<MemberStatus>& status) {
    json failed = json::array();
    for (std::size_t m = 0; m < status.size(); ++m) {
        if (!status[m].diverged) continue;
        failed.push_back(
            {{"member", m}, {"step", status[m].failed_step}, {"reason", status[m].reason}});
    }
    return failed;
}

std::size_t count_diverged(const std::vector<MemberStatus>& status) {
    std::size_t n = 0;
    for (const auto& s : status) n += s.diverged ? 1 : 0;
    return n;
}

void write_energy_csv(const fs::path& path, const std::vector<double>& times,
                      const EnergySeries& series) {
    CsvWriter csv(path, {"t", "mean_H", "theory_Z", "rmse"});
    for (std::size_t s = 0; s < times.size(); ++s) {
        csv << times[s] << series.mean_h[s] << series.theory_z[s] << series.rmse[s];
        csv.end_row();
    }
    csv.close();
}

void write_history_csv(const fs::path& path, const OptimizerResult& r) {
    std::vector<std::string> header{"iteration", "beta", "best_f", "incumbent_f"};
    for (std::size_t m = 0; m < r.status.size(); ++m) header.push_back("f" + std::to_string(m + 1));
    CsvWriter csv(path, header);
    for (std::size_t k = 0; k < r.betas.size(); ++k) {
        csv << static_cast<std::uint64_t>(k) << r.betas[k] << r.ensemble_best[k] << r.incumbent[k];
        for (double f : r.member_values[k]) csv << f;
        csv.end_row();
    }
    csv.close();
}

void write_optimizer_trajectories(const fs::path& path, const OptimizerResult& r) {
    const int dim = r.trajectories.empty() ? 0 : static_cast<int>(r.trajectories[0].rows());
    CsvWriter csv(path, state_header({"iteration", "member"}, dim));
    for (std::size_t m = 0; m < r.trajectories.size(); ++m) {
        for (Eigen::Index k = 0; k < r.trajectories[m].cols(); ++k) {
            csv << static_cast<std::uint64_t>(k) << static_cast<std::uint64_t>(m);
            for (int i = 0; i < dim; ++i) csv << r.trajectories[m](i, k);
            csv.end_row();
        }
    }
    csv.close();
}

json best_json(const OptimizerResult& r) {
    return {
        {"scheme", std::string(to_string(r.scheme))},
        {"best_value", r.best_value},
        {"best_point", vector_to_json(r.best_point)},
        {"iterations", r.betas.size() - 1},
        {"final_beta", r.betas.back()},
        {"singular_evaluations", r.singular_evaluations},
        {"diverged", count_diverged(r.status)},
    };
}

template <typename Body>
ExitCode guarded(std::string_view command, Body&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        std::cerr << "geodev " << command << ": config error: " << e.what() << '\n';
        return ExitCode::ConfigError;
    } catch (const AllDiverged& e) {
        std::cerr << "geodev " << command << ": " << e.what() << '\n';
        return ExitCode::AllDiverged;
    } catch (const std::exception& e) {
        std::cerr << "geodev " << command << ": " << e.what() << '\n';
        return ExitCode::Failure;
    }
}

}  // namespace

ExitCode cmd_well(const CommandOptions& options) {
    return guarded("well", [&] {
        Session session("well", options);
        const RunConfig cfg = session.load("well");
        const WellExperimentResult r = run_trapped_brownian(cfg.well);

        write_ensemble_csv(session.artifact("well_geometric.csv"), r.geometric);
        write_ensemble_csv(session.artifact("well_euclidean.csv"), r.euclidean);
        const WellSummary& s = r.summary;
        const json summary = {
            {"scheme", std::string(to_string(cfg.well.sim.scheme))},
            {"t", series_json(r.geometric.times)},
            {"rms_geometric", series_json(s.rms_geometric)},
            {"rms_euclidean", series_json(s.rms_euclidean)},
            {"max_excursion_geometric", s.max_excursion_geometric},
            {"max_excursion_euclidean", s.max_excursion_euclidean},
            {"first_quarter_rms", s.first_quarter_rms},
            {"last_quarter_rms", s.last_quarter_rms},
            {"burn_in", cfg.well.burn_in},
            {"diverged_geometric", r.geometric.diverged_count()},
            {"diverged_euclidean", r.euclidean.diverged_count()},
        };
        write_json(session.artifact("well_summary.json"), summary);
        session.write_manifest(cfg, {{"geometric", status_json(r.geometric.status)},
                                     {"euclidean", status_json(r.euclidean.status)}});
        return ExitCode::Ok;
    });
}

ExitCode cmd_duffing(const CommandOptions& options) {
    return guarded("duffing", [&] {
        Session session("duffing", options);
        const RunConfig cfg = session.load("duffing");
        const DuffingExperimentResult r = run_duffing_drift_preserving(cfg.duffing);
        const DuffingSummary& s = r.summary;

        write_ensemble_csv(session.artifact("duffing_states.csv"), r.geometric);
        write_energy_csv(session.artifact("duffing_energy.csv"), r.geometric.times, s.geometric);
        write_ensemble_csv(session.artifact("duffing_euclidean_states.csv"), r.euclidean);
        write_energy_csv(session.artifact("duffing_euclidean_energy.csv"), r.euclidean.times,
                         s.euclidean);

        if (!cfg.duffing.sharpness_sweep.empty()) {
            const auto sweep =
                sweep_constraint_sharpness(cfg.duffing, cfg.duffing.sharpness_sweep);
            CsvWriter csv(session.artifact("duffing_sweep.csv"),
                          {"beta_e", "sup_relative_error", "diverged"});
            for (const SweepPoint& p : sweep) {
                csv << p.sharpness << p.sup_relative_error
                    << static_cast<std::uint64_t>(p.diverged);
                csv.end_row();
            }
            csv.close();
        }

        const json summary = {
            {"h0", cfg.duffing.initial_energy()},
            {"sup_relative_error", s.geometric.sup_relative_error},
            {"euclidean_sup_relative_error", s.euclidean.sup_relative_error},
            {"diverged_geometric", r.geometric.diverged_count()},
            {"diverged_euclidean", s.euclidean_diverged},
            {"euclidean_blowup_time",
             s.euclidean_blowup_time ? json(*s.euclidean_blowup_time) : json()},
        };
        write_json(session.artifact("duffing_summary.json"), summary);
        session.write_manifest(
            cfg, {{"geometric", status_json(r.geometric.status)},
                  {"euclidean", status_json(r.euclidean.status)},
                  {"euclidean_blowup_time",
                   s.euclidean_blowup_time ? json(*s.euclidean_blowup_time) : json()}});
        return ExitCode::Ok;
    });
}

ExitCode cmd_optimize(const CommandOptions& options) {
    return guarded("optimize", [&] {
        Session session("optimize", options);
        const RunConfig cfg = session.load("optimize");
        const OptimizerResult r = run_geometric_optimizer(cfg.optimize);

        write_history_csv(session.artifact("opt_history.csv"), r);
        write_optimizer_trajectories(session.artifact("opt_trajectories.csv"), r);
        write_json(session.artifact("opt_best.json"), best_json(r));
        json divergence = {{"geometric", status_json(r.status)}};

        if (cfg.optimize_euclidean) {
            // The comparator may fail outright; that is a result, not an error.
            try {
                const OptimizerResult e = run_euclidean_optimizer(cfg.optimize);
                write_history_csv(session.artifact("opt_euclidean_history.csv"), e);
                write_json(session.artifact("opt_euclidean_best.json"), best_json(e));
                divergence["euclidean"] = status_json(e.status);
            } catch (const AllDiverged& e) {
                divergence["euclidean"] = e.what();
            }
        }
        session.write_manifest(cfg, std::move(divergence));
        return ExitCode::Ok;
    });
}

ExitCode cmd_check(const CommandOptions& options) {
    return guarded("check", [&] {
        Session session("check", options);
        const RunConfig cfg = session.load("");
        CheckOptions check;
        check.seed = cfg.common.seed;
        check.gradient_perturbation = options.gradient_perturbation;
        const std::vector<CheckResult> results = run_checks(check);
        write_json(session.artifact("check_report.json"), check_report(results));
        session.write_manifest(cfg, json::object());
        for (const CheckResult& r : results) {
            if (!r.passed) std::cerr << "check failed: " << r.name << " (" << r.detail << ")\n";
        }
        return all_passed(results) ? ExitCode::Ok : ExitCode::Failure;
    });
}

ExitCode run_command(std::string_view command, const CommandOptions& options) {
    if (command == "well") return cmd_well(options);
    if (command == "duffing") return cmd_duffing(options);
    if (command == "optimize") return cmd_optimize(options);
    if (command == "check") return cmd_check(options);
    std::cerr << "geodev: unknown command " << command << '\n';
    return ExitCode::ConfigError;
}

}  // namespace geodev
