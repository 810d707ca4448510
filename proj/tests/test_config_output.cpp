#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "geodev/config.hpp"
#include "geodev/errors.hpp"
#include "geodev/output.hpp"

using namespace geodev;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("shortest round-trip doubles") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1e-5) == "1e-05");
    CHECK(format_double(5.0125) == "5.0125");
    CHECK(format_double(3.0) == "3");
    CHECK(format_double(-0.0) == "-0");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(-INFINITY) == "-inf");

    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 2000; ++i) {
        const double v = u(gen) * std::pow(10.0, (i % 40) - 20);
        const std::string s = format_double(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
        CHECK(s.find(',') == std::string::npos);
    }
}

TEST_CASE("csv layout") {
    const auto dir = std::filesystem::temp_directory_path() / "geodev_csv_test";
    std::filesystem::create_directories(dir);
    {
        CsvWriter csv(dir / "a.csv", {"t", "member", "x1"});
        csv << 0.5 << std::uint64_t{2} << 1e-7;
        csv.end_row();
        csv.close();
    }
    CHECK(slurp(dir / "a.csv") == "t,member,x1\n0.5,2,1e-07\n");

    CsvWriter short_row(dir / "b.csv", {"a", "b"});
    short_row << 1.0;
    CHECK_THROWS(short_row.end_row());

    EnsembleResult run;
    run.times = {0.0, 0.25};
    run.states = {Matrix::Zero(2, 2), Matrix::Ones(2, 2)};
    run.status.resize(2);
    write_ensemble_csv(dir / "c.csv", run);
    CHECK(slurp(dir / "c.csv") == "t,member,x1,x2\n0,0,0,0\n0.25,0,0,0\n0,1,1,1\n0.25,1,1,1\n");
    std::filesystem::remove_all(dir);
}

TEST_CASE("config round trip with defaults materialized") {
    const RunConfig defaults = parse_config(json::object());
    const json doc = to_json(defaults);
    CHECK(to_json(parse_config(doc)) == doc);
    CHECK(doc["well"]["d"] == json::array({400.0, 400.0}));
    CHECK(doc["duffing"]["upsilon"] == 1e4);
    CHECK(doc["optimize"]["upsilon"] == 1e6);
    CHECK(doc["common"]["scheme"] == "developed");

    const json custom = json::parse(R"({
        "common": {"seed": 18446744073709551615, "scheme": "euclidean", "threads": 2},
        "well": {"dt": 0.02, "center": [0.5, -1.0, 3.0], "d": [1, 2, 3], "initial_state": [0, 0, 0]},
        "duffing": {"sigma": 0.0, "beta_sweep": [0.5, 2.0]},
        "optimize": {"dim": 40, "beta0": 50000, "run_euclidean": false}
    })");
    const RunConfig c = parse_config(custom);
    CHECK(c.common.seed == 18446744073709551615ULL);
    CHECK(c.well.sim.seed == c.common.seed);
    CHECK(c.optimize.sim.scheme == Scheme::Euclidean);
    CHECK(c.well.center.size() == 3);
    CHECK(c.well.initial_state.has_value());
    CHECK(c.duffing.sharpness_sweep == std::vector<double>{0.5, 2.0});
    CHECK(c.optimize.dim == 40);
    CHECK_FALSE(c.optimize_euclidean);
    const json once = to_json(c);
    CHECK(to_json(parse_config(once)) == once);
    CHECK(json::parse(once.dump()) == once);
}

TEST_CASE("unknown keys and bad types name the field") {
    CHECK_THROWS_WITH_AS(parse_config(json::parse(R"({"well": {"dtt": 0.1}})")),
                         doctest::Contains("well.dtt"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(json::parse(R"({"wel": {}})")), doctest::Contains("wel"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(json::parse(R"({"duffing": {"sigma": "big"}})")),
                         doctest::Contains("duffing.sigma"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(json::parse(R"({"well": {"n_steps": 1.5}})")),
                         doctest::Contains("well.n_steps"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(json::parse(R"({"well": {"ensemble": -3}})")),
                         doctest::Contains("well.ensemble"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(json::parse(R"({"common": {"scheme": "ito"}})")),
                         doctest::Contains("common.scheme"), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse("[1, 2]")), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/geodev.json"), ConfigError);
}

TEST_CASE("validation errors carry the block name") {
    RunConfig c = parse_config(json::parse(R"({"well": {"dt": -0.01}})"));
    CHECK_THROWS_WITH_AS(validate_config(c, "well"), doctest::Contains("well: dt"), ConfigError);
    CHECK_NOTHROW(validate_config(c, "duffing"));
    CHECK_THROWS_AS(validate_config(c), ConfigError);
}

TEST_CASE("shipped example configs parse and validate") {
    std::size_t count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(GEODEV_CONFIG_DIR)) {
        if (entry.path().extension() != ".json") continue;
        CAPTURE(entry.path().string());
        const RunConfig c = load_config(entry.path());
        CHECK_NOTHROW(validate_config(c));
        ++count;
    }
    CHECK(count >= 4);
}
