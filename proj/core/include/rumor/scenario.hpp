#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rumor/degree_distribution.hpp"
#include "rumor/inoculation.hpp"

namespace rumor {

enum class Engine { meanfield, montecarlo, both };
enum class GeneratorKind { configuration, ba };

std::string_view to_string(Engine engine);
std::string_view to_string(GeneratorKind kind);

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::configuration;
    double gamma = 2.4;
    Degree k_min = 2;
    std::vector<std::uint64_t> sizes;
    std::size_t m0 = 5;
    std::size_t m = 3;
    /// Draw a fresh network for every Monte Carlo run instead of one per size.
    bool per_run = false;
};

/// One point of the parameter grid.
struct GridPoint {
    std::size_t index = 0;
    std::size_t size_index = 0;
    std::uint64_t n = 0;
    double lambda = 0.0;
    double alpha = 1.0;
    double beta = 0.0;
    double sigma = 1.0;
    double g = 0.0;
};

/// Declarative experiment: a network family, a grid of model parameters, an
/// inoculation strategy and which engines to run.
struct Scenario {
    std::string name = "scenario";
    Engine engine = Engine::meanfield;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    std::string output_dir;

    GeneratorSpec network;

    std::vector<double> lambdas;
    std::vector<double> alphas{1.0};
    std::vector<double> betas{0.0};
    std::vector<double> sigmas{1.0};
    double delta = 0.0;
    double b = 1.0;

    InoculationKind inoculation = InoculationKind::none;
    std::vector<double> g_values{0.0};

    double mf_dt = 0.01;
    double mf_t_end = 100.0;
    /// Initial spreader fraction for the mean-field engine; 1/N when unset.
    std::optional<double> mf_seed_fraction;
    bool mf_trajectories = true;

    std::size_t runs = 50;
    double mc_dt = 0.1;
    double mc_t_max = 1000.0;
    std::size_t initial_spreaders = 1;
    std::optional<double> initial_fraction;
    bool mc_trajectories = true;

    double tolerance = 0.1;

    bool uses_meanfield() const noexcept { return engine != Engine::montecarlo; }
    bool uses_montecarlo() const noexcept { return engine != Engine::meanfield; }

    /// Cartesian product in the order N, lambda, alpha, beta, sigma, g
    /// (g varies fastest).
    std::vector<GridPoint> grid() const;

    /// `key=value` lines listing every resolved setting; used as the audit
    /// header of every output file.
    std::vector<std::string> describe() const;
};

/// Parses the flat `key = value` format with `[section]` headers. Lists are
/// comma-separated; `#` starts a comment. Defaults: sigma = 1, b = 1,
/// mean-field dt = 0.01, Monte Carlo dt = 0.1, 50 runs, N = 10^4 when Monte
/// Carlo is involved and 10^5 otherwise. Throws ConfigError with the offending
/// line for unknown keys, malformed values, empty lists and out-of-range
/// parameters.
Scenario parse_scenario_text(std::string_view text);
Scenario parse_scenario(const std::filesystem::path& path);

}  // namespace rumor
