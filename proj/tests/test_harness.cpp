#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "iscc/errors.hpp"
#include "iscc/harness.hpp"

using namespace iscc;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SystemConfig tiny_config() {
    SystemConfig cfg;
    cfg.mc_samples = 200;
    cfg.moea.pop_size = 16;
    cfg.moea.budget = 320;
    return cfg;
}

}  // namespace

TEST_CASE("median") {
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 3.0, 2.0}) == 2.5);
    CHECK(median({7.0}) == 7.0);
    CHECK_THROWS_AS(median({}), InvalidParameter);
}

TEST_CASE("spearman") {
    CHECK(spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
    CHECK(spearman({1, 2, 3, 4}, {9, 7, 5, 3}) == doctest::Approx(-1.0));
    // monotone but non-linear is still rho = 1
    CHECK(spearman({1, 2, 3, 4}, {1, 10, 100, 1000}) == doctest::Approx(1.0));
    // ties get average ranks
    CHECK(spearman({1, 2, 3, 4}, {5, 5, 6, 7}) > 0.8);
    CHECK_THROWS_AS(spearman({1.0}, {2.0}), InvalidParameter);
}

TEST_CASE("set_param") {
    SystemConfig cfg;
    set_param(cfg, "dims.n_bs", 72);
    CHECK(cfg.n_bs == 72);
    set_param(cfg, "dims.n_eave", 10);
    CHECK(cfg.n_eave == 10);
    set_param(cfg, "channel.noise_level", 1.5);
    CHECK(cfg.noise.noise_uav == 1.5);
    CHECK(cfg.noise.noise_user == 1.5);
    CHECK(cfg.noise.noise_eave == 1.5);
    set_param(cfg, "channel.an_level", 5.25);
    CHECK(cfg.noise.noise_an == 5.25);
    set_param(cfg, "power.p_sum", 3.0);
    CHECK(cfg.p_sum == 3.0);
    CHECK_THROWS_AS(set_param(cfg, "dims.n_bss", 1.0), ConfigError);
}

TEST_CASE("run_algorithm: smoke test, all algorithms feasible at defaults") {
    SystemConfig cfg = tiny_config();
    for (const char* algo : {"dqn", "ga", "imode"}) {
        RunResult r = run_algorithm(cfg, algo, 0);
        CHECK(r.has_feasible);
        CHECK(r.evaluations == cfg.moea.budget);
        CHECK(run_scalar(r) == r.best_f);
    }
    CHECK_THROWS_AS(run_algorithm(cfg, "annealing", 0), ConfigError);
}

TEST_CASE("run_scalar penalizes infeasible runs") {
    RunResult r;
    r.has_feasible = false;
    r.best.eval.f = 2.0;
    r.best.eval.phi = 0.25;
    CHECK(run_scalar(r) == doctest::Approx(252.0));
}

TEST_CASE("sweep bookkeeping and medians") {
    SystemConfig cfg = tiny_config();
    SweepSpec spec;
    spec.param = "dims.n_bs";
    spec.values = {60, 64};
    spec.seeds = {0, 1, 2};
    spec.algos = {"ga"};
    SweepTable t = run_sweep(cfg, spec);
    REQUIRE(t.cells.size() == 6);
    REQUIRE(t.medians.size() == 1);
    REQUIRE(t.medians[0].size() == 2);
    std::vector<double> v0 = {t.cells[0].scalar, t.cells[1].scalar, t.cells[2].scalar};
    CHECK(t.medians[0][0] == median(v0));

    // single value, single seed equals run()
    SweepSpec one;
    one.param = "dims.n_bs";
    one.values = {64};
    one.seeds = {5};
    one.algos = {"ga"};
    SweepTable t1 = run_sweep(cfg, one);
    RunResult direct = run_algorithm(cfg, "ga", 5);
    CHECK(t1.cells[0].scalar == run_scalar(direct));

    SweepSpec empty;
    CHECK_THROWS_AS(run_sweep(cfg, empty), ConfigError);
}

TEST_CASE("export: deterministic bytes, constant csv schema, json round-trip") {
    SystemConfig cfg = tiny_config();
    SweepSpec spec;
    spec.param = "dims.n_bs";
    spec.values = {60, 64};
    spec.seeds = {0, 1};
    spec.algos = {"ga", "imode"};
    SweepTable t = run_sweep(cfg, spec);

    auto dir_a = std::filesystem::temp_directory_path() / "iscc_export_a";
    auto dir_b = std::filesystem::temp_directory_path() / "iscc_export_b";
    export_sweep(cfg, t, dir_a.string());
    SweepTable t2 = run_sweep(cfg, spec);  // full re-run of the same manifest
    export_sweep(cfg, t2, dir_b.string());

    for (const char* f : {"runs.csv", "summary.json", "pareto.csv"})
        CHECK(slurp(dir_a / f) == slurp(dir_b / f));

    // constant column count across all rows
    for (const char* f : {"runs.csv", "pareto.csv"}) {
        std::istringstream in(slurp(dir_a / f));
        std::string line;
        long cols = -1;
        while (std::getline(in, line)) {
            long n = std::count(line.begin(), line.end(), ',');
            if (cols < 0) cols = n;
            CHECK(n == cols);
        }
        CHECK(cols > 0);
    }

    // summary.json re-parses and reproduces the medians bit-exactly
    nlohmann::json summary = nlohmann::json::parse(slurp(dir_a / "summary.json"));
    for (std::size_t a = 0; a < spec.algos.size(); ++a) {
        std::vector<double> meds = summary["medians"][spec.algos[a]];
        REQUIRE(meds.size() == t.medians[a].size());
        for (std::size_t v = 0; v < meds.size(); ++v) CHECK(meds[v] == t.medians[a][v]);
    }
    CHECK(summary["manifest"]["code_version"] == kCodeVersion);
    CHECK(summary["manifest"]["config_hash"].get<std::string>().size() == 16);

    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
}

TEST_CASE("export_run reproducibility") {
    SystemConfig cfg = tiny_config();
    RunResult r1 = run_algorithm(cfg, "dqn", 3);
    RunResult r2 = run_algorithm(cfg, "dqn", 3);
    auto dir_a = std::filesystem::temp_directory_path() / "iscc_run_a";
    auto dir_b = std::filesystem::temp_directory_path() / "iscc_run_b";
    export_run(cfg, "dqn", r1, dir_a.string());
    export_run(cfg, "dqn", r2, dir_b.string());
    for (const char* f : {"runs.csv", "summary.json", "pareto.csv"})
        CHECK(slurp(dir_a / f) == slurp(dir_b / f));
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
}

TEST_CASE("aoi oracle suite sampler") {
    std::vector<AoiValidationRow> rows = aoi_oracle_suite(3, 100000, 7);
    REQUIRE(rows.size() == 3);
    for (const AoiValidationRow& r : rows) {
        CHECK(std::abs(r.rates.mu_trans - r.rates.mu_bs) > 0.05);
        CHECK(r.rates.mu_bs >= 0.2);
        CHECK(r.rates.mu_bs <= 5.0);
        CHECK(r.rel_err < 0.05);  // loose at 1e5 packets; the acceptance suite runs 1e6
    }
}
