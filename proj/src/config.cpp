#include "geodev/config.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>
#include <type_traits>

#include "geodev/errors.hpp"

namespace geodev {

using nlohmann::json;

namespace {

json vector_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

// Reads the keys of one block, remembering which ones were consumed.
class BlockReader {
public:
    BlockReader(const json& doc, std::string name) : name_(std::move(name)) {
        if (!doc.contains(name_)) return;
        block_ = &doc.at(name_);
        if (!block_->is_object()) throw ConfigError(name_ + ": expected an object");
    }

    template <typename T>
    void read(const char* key, T& out) {
        if (!block_) return;
        const auto it = block_->find(key);
        if (it == block_->end()) return;
        seen_.insert(key);
        try {
            if constexpr (std::is_same_v<T, double>) {
                if (!it->is_number()) throw ConfigError(field(key) + ": expected a number");
                out = it->template get<double>();
            } else if constexpr (std::is_same_v<T, bool>) {
                if (!it->is_boolean()) throw ConfigError(field(key) + ": expected true or false");
                out = it->template get<bool>();
            } else if constexpr (std::is_integral_v<T>) {
                if (!it->is_number_integer()) throw ConfigError(field(key) + ": expected an integer");
                if (it->is_number_unsigned()) {
                    const auto v = it->template get<std::uint64_t>();
                    if (v > std::numeric_limits<T>::max()) throw ConfigError(field(key) + ": out of range");
                    out = static_cast<T>(v);
                } else {
                    const auto v = it->template get<std::int64_t>();
                    if (v < 0 && std::is_unsigned_v<T>) {
                        throw ConfigError(field(key) + ": must be nonnegative");
                    }
                    if (v > static_cast<std::int64_t>(std::numeric_limits<T>::max()) ||
                        v < static_cast<std::int64_t>(std::numeric_limits<T>::min())) {
                        throw ConfigError(field(key) + ": out of range");
                    }
                    out = static_cast<T>(v);
                }
            } else {
                static_assert(sizeof(T) == 0, "unsupported config type");
            }
        } catch (const json::exception& e) {
            throw ConfigError(field(key) + ": " + e.what());
        }
    }

    void read_vector(const char* key, Vector& out) {
        if (!block_) return;
        const auto it = block_->find(key);
        if (it == block_->end()) return;
        seen_.insert(key);
        out = parse_vector(*it, key);
    }

    void read_optional_vector(const char* key, std::optional<Vector>& out) {
        if (!block_) return;
        const auto it = block_->find(key);
        if (it == block_->end()) return;
        seen_.insert(key);
        if (it->is_null()) {
            out.reset();
        } else {
            out = parse_vector(*it, key);
        }
    }

    void read_list(const char* key, std::vector<double>& out) {
        Vector v;
        if (!block_ || !block_->contains(key)) return;
        read_vector(key, v);
        out.assign(v.data(), v.data() + v.size());
    }

    void read_scheme(const char* key, Scheme& out) {
        if (!block_) return;
        const auto it = block_->find(key);
        if (it == block_->end()) return;
        seen_.insert(key);
        if (!it->is_string()) throw ConfigError(field(key) + ": expected a string");
        try {
            out = parse_scheme(it->get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(field(key) + ": " + e.what());
        }
    }

    // Every key must have been consumed.
    void finish() const {
        if (!block_) return;
        for (const auto& [key, value] : block_->items()) {
            if (!seen_.contains(key)) throw ConfigError(field(key) + ": unknown key");
        }
    }

private:
    std::string field(const std::string& key) const { return name_ + "." + key; }

    Vector parse_vector(const json& node, const char* key) const {
        if (!node.is_array()) throw ConfigError(field(key) + ": expected an array of numbers");
        Vector v(static_cast<Eigen::Index>(node.size()));
        for (std::size_t i = 0; i < node.size(); ++i) {
            if (!node[i].is_number()) {
                throw ConfigError(field(key) + ": expected an array of numbers");
            }
            v(static_cast<Eigen::Index>(i)) = node[i].get<double>();
        }
        return v;
    }

    std::string name_;
    const json* block_ = nullptr;
    std::set<std::string, std::less<>> seen_;
};

void read_sim(BlockReader& r, SimConfig& sim, bool with_steps) {
    r.read("dt", sim.dt);
    if (with_steps) r.read("n_steps", sim.n_steps);
    r.read("ensemble", sim.ensemble);
    r.read("upsilon", sim.upsilon);
}

json sim_json(const SimConfig& sim, bool with_steps) {
    json out;
    out["dt"] = sim.dt;
    if (with_steps) out["n_steps"] = sim.n_steps;
    out["ensemble"] = sim.ensemble;
    out["upsilon"] = sim.upsilon;
    return out;
}

template <typename F>
void prefixed(const std::string& block, F&& fn) {
    try {
        fn();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(block + ": " + e.what());
    }
}

}  // namespace

void RunConfig::apply_common() {
    for (SimConfig* sim : {&well.sim, &duffing.sim, &optimize.sim}) {
        sim->seed = common.seed;
        sim->scheme = common.scheme;
        sim->clamp_eigenvalues = common.clamp_eigenvalues;
        sim->pd_floor = common.pd_floor;
        sim->fd_scale = common.fd_scale;
        sim->threads = common.threads;
    }
}

RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
    static const std::set<std::string, std::less<>> blocks{"common", "well", "duffing",
                                                           "optimize"};
    for (const auto& [key, value] : doc.items()) {
        if (!blocks.contains(key)) throw ConfigError(key + ": unknown block");
    }

    RunConfig cfg;

    BlockReader common(doc, "common");
    common.read("seed", cfg.common.seed);
    common.read_scheme("scheme", cfg.common.scheme);
    common.read("clamp_eigenvalues", cfg.common.clamp_eigenvalues);
    common.read("pd_floor", cfg.common.pd_floor);
    common.read("fd_scale", cfg.common.fd_scale);
    common.read("threads", cfg.common.threads);
    common.finish();

    BlockReader well(doc, "well");
    read_sim(well, cfg.well.sim, true);
    well.read_vector("center", cfg.well.center);
    well.read_vector("d", cfg.well.sharpness);
    well.read_optional_vector("initial_state", cfg.well.initial_state);
    well.read("burn_in", cfg.well.burn_in);
    well.finish();

    BlockReader duffing(doc, "duffing");
    read_sim(duffing, cfg.duffing.sim, true);
    duffing.read("k", cfg.duffing.stiffness);
    duffing.read("alpha", cfg.duffing.cubic_stiffness);
    duffing.read("sigma", cfg.duffing.sigma);
    duffing.read("beta_e", cfg.duffing.sharpness);
    duffing.read_vector("x0", cfg.duffing.x0);
    duffing.read_list("beta_sweep", cfg.duffing.sharpness_sweep);
    duffing.finish();

    BlockReader opt(doc, "optimize");
    read_sim(opt, cfg.optimize.sim, false);
    opt.read("dim", cfg.optimize.dim);
    opt.read("a", cfg.optimize.a);
    opt.read("b", cfg.optimize.b);
    opt.read("c", cfg.optimize.c);
    opt.read("beta0", cfg.optimize.beta0);
    opt.read("decay", cfg.optimize.decay);
    opt.read("beta_min", cfg.optimize.beta_min);
    opt.read("init_low", cfg.optimize.init_low);
    opt.read("init_high", cfg.optimize.init_high);
    opt.read("exclusion_radius", cfg.optimize.exclusion_radius);
    opt.read("origin_eps", cfg.optimize.origin_eps);
    opt.read("euclidean_dt", cfg.optimize.euclidean_dt);
    opt.read("euclidean_beta0", cfg.optimize.euclidean_beta0);
    opt.read("run_euclidean", cfg.optimize_euclidean);
    opt.finish();

    cfg.apply_common();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + ": " + e.what());
    }
    return parse_config(doc);
}

json to_json(const RunConfig& cfg) {
    json doc;
    doc["common"] = {
        {"seed", cfg.common.seed},
        {"scheme", std::string(to_string(cfg.common.scheme))},
        {"clamp_eigenvalues", cfg.common.clamp_eigenvalues},
        {"pd_floor", cfg.common.pd_floor},
        {"fd_scale", cfg.common.fd_scale},
        {"threads", cfg.common.threads},
    };

    json well = sim_json(cfg.well.sim, true);
    well["center"] = vector_json(cfg.well.center);
    well["d"] = vector_json(cfg.well.sharpness);
    well["initial_state"] = cfg.well.initial_state ? vector_json(*cfg.well.initial_state) : json();
    well["burn_in"] = cfg.well.burn_in;
    doc["well"] = std::move(well);

    json duffing = sim_json(cfg.duffing.sim, true);
    duffing["k"] = cfg.duffing.stiffness;
    duffing["alpha"] = cfg.duffing.cubic_stiffness;
    duffing["sigma"] = cfg.duffing.sigma;
    duffing["beta_e"] = cfg.duffing.sharpness;
    duffing["x0"] = vector_json(cfg.duffing.x0);
    duffing["beta_sweep"] = cfg.duffing.sharpness_sweep;
    doc["duffing"] = std::move(duffing);

    const OptimizerConfig& o = cfg.optimize;
    json opt = sim_json(o.sim, false);
    opt["dim"] = o.dim;
    opt["a"] = o.a;
    opt["b"] = o.b;
    opt["c"] = o.c;
    opt["beta0"] = o.beta0;
    opt["decay"] = o.decay;
    opt["beta_min"] = o.beta_min;
    opt["init_low"] = o.init_low;
    opt["init_high"] = o.init_high;
    opt["exclusion_radius"] = o.exclusion_radius;
    opt["origin_eps"] = o.origin_eps;
    opt["euclidean_dt"] = o.euclidean_dt;
    opt["euclidean_beta0"] = o.euclidean_beta0;
    opt["run_euclidean"] = cfg.optimize_euclidean;
    doc["optimize"] = std::move(opt);
    return doc;
}

void validate_config(const RunConfig& cfg, std::string_view block) {
    if (block.empty() || block == "well") prefixed("well", [&] { cfg.well.validate(); });
    if (block.empty() || block == "duffing") prefixed("duffing", [&] { cfg.duffing.validate(); });
    if (block.empty() || block == "optimize") {
        prefixed("optimize", [&] { cfg.optimize.validate(); });
    }
}

}  // namespace geodev
