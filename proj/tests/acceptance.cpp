// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cases.hpp"
#include "geodev/applications.hpp"
#include "geodev/commands.hpp"
#include "geodev/energies.hpp"
#include "geodev/geometry.hpp"
#include "geodev/rng.hpp"
#include "geodev/sde.hpp"

using namespace geodev;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

Outcome derivatives() {
    Outcome o{true, {}};
    for (const auto& c : cases::all()) {
        const auto e = cases::derivative_errors(c);
        const bool ok = e.gradient <= 1e-6 && e.hessian <= 1e-5 && e.thirds <= 1e-4;
        o.pass = o.pass && ok;
        o.detail += fmt("%s %.1e/%.1e/%.1e; ", c.name.c_str(), e.gradient, e.hessian, e.thirds);
    }
    o.detail += "tol 1e-6/1e-5/1e-4, 20 points each";
    return o;
}

Outcome connection() {
    Outcome o{true, {}};
    for (const auto& c : cases::all()) {
        const auto e = cases::connection_errors(c);
        o.pass = o.pass && e.relative <= 1e-6 && e.symmetric;
        o.detail += fmt("%s %.1e%s; ", c.name.c_str(), e.relative, e.symmetric ? "" : " ASYMMETRIC");
    }
    o.detail += "tol 1e-6, lower-index symmetry exact";
    return o;
}

Outcome flat_reduction() {
    SdeSystem sys;
    sys.dim = 2;
    sys.drift = [](const Vector& x, double t) { return vec2(-x(0) + std::sin(t), -x(1) * (1.0 + 0.1 * std::cos(x(0)))); };
    sys.diffusion = [](const Vector& x, double) {
        Matrix b(2, 2);
        b << 1.0, 0.3 * std::tanh(x(1)), 0.0, 0.7;
        return b;
    };
    const QuadraticEnergy flat = QuadraticEnergy::identity(2);
    SimConfig dev;
    dev.n_steps = 1000;
    dev.ensemble = 8;
    dev.seed = 2024;
    SimConfig euc = dev;
    euc.scheme = Scheme::Euclidean;
    const auto a = run_ensemble(sys, &flat, dev, vec2(0.5, -0.5));
    const auto b = run_ensemble(sys, nullptr, euc, vec2(0.5, -0.5));
    std::size_t mismatched = 0;
    for (std::size_t m = 0; m < a.states.size(); ++m) {
        mismatched += static_cast<std::size_t>((a.states[m].array() != b.states[m].array()).count());
    }
    return {mismatched == 0, fmt("%zu differing entries over 8 members x 1000 steps", mismatched)};
}

Outcome geodesic() {
    const PotentialWellEnergy well(vec2(1.0, 2.0), vec2(400.0, 400.0));
    const Vector x0 = vec2(1.01, 2.0);
    const Vector v0 = vec2(0.01, 0.005);
    const auto path = geodesic_trajectory(well, x0, v0, 1.0, 1e-3, 0.0);
    const double s0 = metric_speed_squared(metric_from_energy(well, x0, 0.0, 0.0).g, v0);
    double worst = 0.0;
    for (const auto& p : path) {
        const double s = metric_speed_squared(metric_from_energy(well, p.x, 0.0, 0.0).g, p.v);
        worst = std::max(worst, std::abs(s - s0) / s0);
    }
    return {worst <= 1e-6, fmt("max relative speed drift %.2e over t in [0, 1] (tol 1e-6)", worst)};
}

Outcome trapped_brownian() {
    double worst_ratio = 0.0;
    const int seeds = 10;
    for (int s = 0; s < seeds; ++s) {
        WellExperimentConfig cfg;
        cfg.sim.seed = static_cast<std::uint64_t>(s);
        const auto r = run_trapped_brownian(cfg);
        worst_ratio = std::max(worst_ratio, r.summary.last_quarter_rms / r.summary.first_quarter_rms);
    }
    WellExperimentConfig wide;
    wide.sim.ensemble = 500;
    wide.sim.seed = 100;
    const auto r = run_trapped_brownian(wide);
    const double t = r.euclidean.times.back();
    const double msd = std::pow(r.summary.rms_euclidean.back(), 2);
    const double msd_err = std::abs(msd - 2.0 * t) / (2.0 * t);
    return {worst_ratio <= 2.0 && msd_err <= 0.15,
            fmt("worst last/first quarter RMS %.3f over %d seeds (<= 2); Euclidean MSD %.3f vs 2t = %.1f, "
                "error %.1f%% (<= 15%%, N=500)",
                worst_ratio, seeds, msd, 2.0 * t, 100.0 * msd_err)};
}

Outcome duffing() {
    double mean_sup = 0.0;
    bool blowup = true;
    double latest_blowup = 0.0;
    for (int s = 0; s < 5; ++s) {
        DuffingExperimentConfig cfg;
        cfg.sim.seed = static_cast<std::uint64_t>(s);
        const auto r = run_duffing_drift_preserving(cfg);
        mean_sup += r.summary.geometric.sup_relative_error / 5.0;
        const auto& b = r.summary.euclidean_blowup_time;
        blowup = blowup && b.has_value() && *b < 10.0;
        if (b) latest_blowup = std::max(latest_blowup, *b);
    }
    DuffingExperimentConfig quiet;
    quiet.sigma = 0.0;
    const auto q = run_duffing_drift_preserving(quiet);
    const double drift = q.summary.geometric.sup_relative_error;
    return {mean_sup <= 0.05 && drift <= 0.01 && blowup,
            fmt("mean sup relative error %.4f over 5 seeds (<= 0.05); sigma=0 energy drift %.4f (<= 0.01); "
                "Euclidean blow-up %s (latest t=%.2f)",
                mean_sup, drift, blowup ? "in every seed" : "MISSING", latest_blowup)};
}

Outcome optimization() {
    const int seeds = 20;
    int solved_2d = 0, solved_40d = 0, euclid_40d = 0;
    for (int s = 0; s < seeds; ++s) {
        OptimizerConfig two;
        two.sim.seed = static_cast<std::uint64_t>(s);
        if (run_geometric_optimizer(two).best_value < 0.1) ++solved_2d;

        OptimizerConfig forty;
        forty.dim = 40;
        forty.beta0 = 5e4;
        forty.euclidean_beta0 = 1000.0;
        forty.sim.seed = static_cast<std::uint64_t>(s);
        const auto g = run_geometric_optimizer(forty);
        const std::size_t k = std::min<std::size_t>(40, g.incumbent.size() - 1);
        if (g.incumbent[k] <= 0.1 * g.incumbent[0]) ++solved_40d;
        const auto e = run_euclidean_optimizer(forty);
        const std::size_t ke = std::min<std::size_t>(40, e.incumbent.size() - 1);
        if (e.incumbent[ke] <= 0.1 * e.incumbent[0]) ++euclid_40d;
    }
    const int majority = seeds / 2 + 1;
    return {solved_2d >= majority && solved_40d >= majority && euclid_40d < majority,
            fmt("2-D f<0.1 in %d/%d seeds; 40-D >=90%% reduction by iteration 40 in %d/%d; "
                "Euclidean 40-D in %d/%d",
                solved_2d, seeds, solved_40d, seeds, euclid_40d, seeds)};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    const fs::path root = fs::current_path() / "acceptance_runs";
    fs::remove_all(root);
    std::size_t compared = 0;
    std::vector<std::string> differing;
    bool ok = true;
    for (const char* cmd : {"well", "duffing", "optimize", "check"}) {
        for (const char* run : {"a", "b"}) {
            CommandOptions opt;
            opt.out_dir = root / cmd / run;
            opt.seed = 7;
            ok = ok && run_command(cmd, opt) == ExitCode::Ok;
        }
        for (const auto& entry : fs::directory_iterator(root / cmd / "a")) {
            const fs::path name = entry.path().filename();
            std::string a = slurp(entry.path());
            std::string b = slurp(root / cmd / "b" / name);
            if (name == "manifest.json") {
                // Wall-clock time is the one field expected to differ.
                auto ja = nlohmann::json::parse(a), jb = nlohmann::json::parse(b);
                ja.erase("wall_clock_seconds");
                jb.erase("wall_clock_seconds");
                a = ja.dump();
                b = jb.dump();
            }
            ++compared;
            if (a != b) differing.push_back(std::string(cmd) + "/" + name.string());
        }
    }
    std::string detail = fmt("%zu files compared across 4 commands", compared);
    for (const auto& d : differing) detail += "; differs: " + d;
    if (!ok) detail += "; a command failed";
    return {ok && differing.empty(), detail + " (manifest wall-clock field excluded)"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"derivative correctness", derivatives},
        {"connection correctness", connection},
        {"flat-metric reduction", flat_reduction},
        {"geodesic conservation", geodesic},
        {"trapped Brownian motion", trapped_brownian},
        {"drift-preserving Duffing", duffing},
        {"geometric optimization", optimization},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed;
}
