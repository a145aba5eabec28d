#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iscc/config.hpp"
#include "iscc/dqn.hpp"
#include "iscc/moea.hpp"

namespace iscc {

inline constexpr const char* kCodeVersion = "iscc-0.1.0";

/// Comparable scalar for a run: the best feasible F, or — when the whole run
/// stayed infeasible — the least-violating individual's F plus a large
/// violation penalty, so sweep orderings remain defined on infeasible cells.
double run_scalar(const RunResult& r);

/// Applies a sweep parameter. Paths mirror the config keys; two virtual paths
/// set grouped values: channel.noise_level (all three channel noise variances)
/// and channel.an_level (the artificial-noise variance).
void set_param(SystemConfig& cfg, const std::string& path, double value);

/// Dispatches to the selected optimizer with a root seed that derives every
/// substream. algo is one of dqn | ga | imode.
RunResult run_algorithm(const SystemConfig& cfg, const std::string& algo, std::uint64_t seed);

struct SweepSpec {
    std::string param;
    std::vector<double> values;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> algos;
};

struct SweepCell {
    std::string algo;
    double value = 0.0;
    std::uint64_t seed = 0;
    RunResult result;
    double scalar = 0.0;
};

struct SweepTable {
    SweepSpec spec;
    std::vector<SweepCell> cells;          // ordered (algo, value, seed)
    std::vector<std::vector<double>> medians;  // [algo][value] of scalar
};

/// Cartesian product of (algo, value, seed); cells run in an ISCC_THREADS-wide
/// worker pool, results are ordered deterministically.
SweepTable run_sweep(const SystemConfig& base, const SweepSpec& spec);

double median(std::vector<double> v);

struct AoiValidationRow {
    QueueRates rates;
    double closed_form = 0.0;
    double simulated = 0.0;
    double rel_err = 0.0;
    bool pass = false;
};

/// Oracle-agreement suite: random stable, non-singular rate triples sampled
/// log-uniformly in [0.2, 5], closed form vs the discrete-event simulator.
/// A row passes when the relative gap stays under 2%.
std::vector<AoiValidationRow> aoi_oracle_suite(int n_triples, long n_packets,
                                               std::uint64_t seed);

/// Spearman rank correlation with average ranks on ties.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

/// Writes runs.csv, summary.json, and pareto.csv into dir. Output bytes are a
/// pure function of the inputs (wall-clock time is reported on the console
/// only, never written).
void export_run(const SystemConfig& cfg, const std::string& algo, const RunResult& result,
                const std::string& dir);
void export_sweep(const SystemConfig& base, const SweepTable& table, const std::string& dir);

}  // namespace iscc
