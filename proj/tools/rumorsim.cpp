// rumorsim: network generation, threshold tables and rumor-spreading sweeps.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "rumor/errors.hpp"
#include "rumor/experiment.hpp"
#include "rumor/network.hpp"
#include "rumor/table.hpp"
#include "rumor/thresholds.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 1, kRuntime = 2, kCompare = 3 };

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::optional<std::size_t> workers;
};

void add_common(CLI::App* cmd, Common& c, bool config_required) {
    auto* opt = cmd->add_option("--config", c.config, "Scenario file");
    if (config_required) opt->required();
    opt->check(CLI::ExistingFile);
    cmd->add_option("--seed", c.seed, "Master seed (overrides the scenario)");
    cmd->add_option("--out", c.out, "Output directory (overrides the scenario)");
    cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
}

rumor::Scenario load(const Common& c) {
    rumor::Scenario s;
    if (!c.config.empty()) {
        s = rumor::parse_scenario(c.config);
    } else {
        s.network.sizes = {100000};
        s.lambdas = {0.0};
    }
    if (c.seed) s.seed = *c.seed;
    if (!c.out.empty()) s.output_dir = c.out;
    if (s.output_dir.empty()) s.output_dir = ".";
    if (c.workers) s.workers = *c.workers;
    return s;
}

int cmd_generate(const Common& c, std::optional<std::string> generator, std::optional<double> gamma,
                 std::optional<int> k_min, std::optional<std::uint64_t> n) {
    auto s = load(c);
    if (generator) {
        if (*generator == "ba") s.network.kind = rumor::GeneratorKind::ba;
        else if (*generator == "configuration") s.network.kind = rumor::GeneratorKind::configuration;
        else throw rumor::ConfigError(0, "generator must be configuration or ba");
    }
    if (gamma) s.network.gamma = *gamma;
    if (k_min) s.network.k_min = *k_min;
    if (n) s.network.sizes = {*n};

    std::filesystem::create_directories(s.output_dir);
    for (std::size_t i = 0; i < s.network.sizes.size(); ++i) {
        const auto size = s.network.sizes[i];
        rumor::Rng rng(rumor::derive_seed(s.seed, i, 3));
        const auto net = rumor::generate_network(s.network, size, rng);
        const auto path = std::filesystem::path(s.output_dir) / ("network_N" + std::to_string(size) + ".edges");
        std::ofstream out(path);
        rumor::write_edge_list(out, net);
        std::printf("%s: %zu nodes, %zu edges, <k>=%s\n", path.string().c_str(), net.size(), net.edge_count(),
                    rumor::format_double(net.mean_degree()).c_str());
    }
    return kOk;
}

int cmd_threshold(const Common& c) {
    const auto s = load(c);
    std::filesystem::create_directories(s.output_dir);
    for (auto n : s.network.sizes) {
        const auto rows = rumor::threshold_table(s, n);
        const auto path = std::filesystem::path(s.output_dir) / ("thresholds_N" + std::to_string(n) + ".csv");
        auto comments = s.describe();
        comments.push_back("N=" + std::to_string(n));
        std::ofstream out(path);
        rumor::write_threshold_csv(out, rows, comments);
        std::printf("N=%llu\n", static_cast<unsigned long long>(n));
        for (const auto& r : rows)
            std::printf("  %-5s %-10s lambda_c=%-12s %s\n", r.param.c_str(), rumor::format_double(r.value).c_str(),
                        r.lambda_c ? rumor::format_double(*r.lambda_c).c_str() : "none",
                        std::string(rumor::to_string(r.regime)).c_str());
        if (s.network.kind == rumor::GeneratorKind::configuration) {
            const auto rep = rumor::threshold_modified_bounded(s.network.gamma, s.network.k_min, n,
                                                               s.alphas.front(), s.betas.front());
            std::printf("  bounded (alpha=%s, beta=%s): %s [%s]\n", rumor::format_double(s.alphas.front()).c_str(),
                        rumor::format_double(s.betas.front()).c_str(), rumor::format_double(rep.value).c_str(),
                        std::string(rumor::to_string(rep.regime)).c_str());
        }
    }
    return kOk;
}

int cmd_simulate(const Common& c) {
    const auto s = load(c);
    const auto manifest = rumor::run_scenario(s);
    std::printf("%zu files written to %s\n", manifest.files.size(), manifest.directory.string().c_str());
    for (const auto& f : manifest.failures)
        std::fprintf(stderr, "point %zu failed: %s\n", f.point, f.error.c_str());
    return manifest.failures.empty() ? kOk : kRuntime;
}

int cmd_compare(const Common& c) {
    const auto s = load(c);
    if (s.engine != rumor::Engine::both) throw rumor::ConfigError(0, "compare needs engine = both");
    const auto manifest = rumor::run_scenario(s);
    std::ifstream in(manifest.directory / "comparison.csv");
    const auto table = rumor::read_csv(in);
    bool all_pass = true;
    std::printf("%-6s %-10s %-10s %-10s %s\n", "point", "R_mf", "R_mc", "deviation", "pass");
    for (const auto& row : table.rows) {
        const bool pass = row[table.column("pass")] == "true";
        all_pass = all_pass && pass;
        std::printf("%-6s %-10.4g %-10.4g %-10.4g %s\n", row[table.column("point")].c_str(),
                    rumor::parse_double(row[table.column("R_mf")]), rumor::parse_double(row[table.column("R_mc")]),
                    rumor::parse_double(row[table.column("deviation")]), pass ? "pass" : "FAIL");
    }
    if (!manifest.failures.empty()) return kRuntime;
    return all_pass ? kOk : kCompare;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rumor spreading on scale-free networks"};
    app.require_subcommand(1);

    Common common;
    std::optional<std::string> generator;
    std::optional<double> gamma;
    std::optional<int> k_min;
    std::optional<std::uint64_t> n;

    auto* gen = app.add_subcommand("generate", "Write networks of the scenario family as edge lists");
    add_common(gen, common, false);
    gen->add_option("--generator", generator, "configuration or ba");
    gen->add_option("--gamma", gamma, "Degree exponent");
    gen->add_option("--k-min", k_min, "Minimum degree");
    gen->add_option("--n", n, "Number of nodes");

    auto* thr = app.add_subcommand("threshold", "Analytic threshold tables");
    add_common(thr, common, true);
    auto* sim = app.add_subcommand("simulate", "Run a scenario sweep");
    add_common(sim, common, true);
    auto* cmp = app.add_subcommand("compare", "Cross-check mean-field against Monte Carlo");
    add_common(cmp, common, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (*gen) return cmd_generate(common, generator, gamma, k_min, n);
        if (*thr) return cmd_threshold(common);
        if (*sim) return cmd_simulate(common);
        if (*cmp) return cmd_compare(common);
    } catch (const rumor::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfig;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid argument: %s\n", e.what());
        return kConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kRuntime;
    }
    return kOk;
}
