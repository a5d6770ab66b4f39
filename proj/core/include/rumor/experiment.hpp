#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rumor/meanfield.hpp"
#include "rumor/montecarlo.hpp"
#include "rumor/scenario.hpp"
#include "rumor/thresholds.hpp"

namespace rumor {

/// Everything computed for one grid point. Quantities of an engine that did
/// not run are NaN.
struct PointResult {
    GridPoint point;
    /// Analytic critical rate for this point's exponents and inoculation,
    /// in units of lambda (already multiplied by sigma).
    CriticalRate lambda_c;
    double R_mf = 0.0;
    /// Fixed-point (t -> infinity, vanishing seed) mean-field size.
    double R_mf_asymptotic = 0.0;
    double R_mc_mean = 0.0;
    double R_mc_std = 0.0;
    double peak_S_mc = 0.0;
    bool ok = true;
    std::string error;
    std::optional<Trajectory> trajectory;
    std::optional<EnsembleSummary> ensemble;
};

/// Runs every grid point, in parallel up to `s.workers`. A failing point is
/// flagged and the sweep continues. Results are ordered by point index and
/// do not depend on the worker count.
std::vector<PointResult> evaluate_grid(const Scenario& s);

struct OutputFile {
    std::string path;
    std::string sha256;
};

struct PointFailure {
    std::size_t point = 0;
    std::string error;
};

struct Manifest {
    std::string name;
    std::uint64_t seed = 0;
    std::filesystem::path directory;
    std::vector<OutputFile> files;
    std::vector<PointFailure> failures;
};

/// Evaluates the grid and writes into `s.output_dir`:
///   final_size.csv          one row per grid point
///   thresholds_N<N>.csv     lambda_c against alpha and beta for each size
///   mf_trajectory_p<i>.csv  mean-field R, S, I against t
///   mc_trace_p<i>.csv       ensemble-mean I, S, R against t
///   mc_ensemble_p<i>.csv    per-run final size and peak
///   comparison.csv          engine deviations (engine = both)
/// with an SVG next to each CSV and manifest.json listing SHA-256 hashes.
Manifest run_scenario(const Scenario& s);

struct Deviation {
    GridPoint point;
    double R_mf = 0.0;
    double R_mc = 0.0;
    double deviation = 0.0;
    bool pass = false;
    std::string error;
};

struct DeviationReport {
    double tolerance = 0.1;
    std::vector<Deviation> rows;

    bool all_pass() const;
};

/// |R_MC mean - R_MF| per grid point against `s.tolerance`. Requires
/// engine = both (ConfigError otherwise).
DeviationReport compare_engines(const Scenario& s);
DeviationReport compare_engines(const Scenario& s, const std::vector<PointResult>& results);

/// CSV `point,N,lambda,alpha,beta,sigma,g,R_mf,R_mc,deviation,pass`.
void write_deviation_csv(std::ostream& out, const DeviationReport& report,
                         const std::vector<std::string>& comments = {});

/// Analytic threshold table for one network size: lambda_c against each alpha
/// of the grid (at the first beta) and against each beta (at the first alpha).
std::vector<ThresholdRow> threshold_table(const Scenario& s, std::uint64_t n);

/// Degree distribution the mean-field engine uses for size `n`.
DegreeDistribution meanfield_distribution(const GeneratorSpec& spec, std::uint64_t n);

/// Draws one network of the scenario's family.
Network generate_network(const GeneratorSpec& spec, std::uint64_t n, Rng& rng);

std::string sha256_hex(std::string_view data);

}  // namespace rumor
