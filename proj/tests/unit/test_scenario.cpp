#include <algorithm>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "rumor/errors.hpp"
#include "rumor/scenario.hpp"

using namespace rumor;

namespace {

std::size_t error_line(const std::string& text) {
    try {
        parse_scenario_text(text);
    } catch (const ConfigError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_CASE("minimal meanfield scenario gets defaults") {
    auto s = parse_scenario_text(
        "engine = meanfield\n"
        "[network]\n"
        "gamma = 2.4\n"
        "n = 1e5\n"
        "[model]\n"
        "lambda = 0.2, 0.4, 0.8\n");
    CHECK(s.engine == Engine::meanfield);
    CHECK(s.network.gamma == 2.4);
    CHECK(s.network.sizes == std::vector<std::uint64_t>{100000});
    CHECK(s.lambdas.size() == 3);
    CHECK(s.sigmas == std::vector<double>{1.0});
    CHECK(s.b == 1.0);
    CHECK(s.alphas == std::vector<double>{1.0});
    CHECK(s.betas == std::vector<double>{0.0});
    CHECK(s.mf_dt == 0.01);
    CHECK(s.grid().size() == 3);
}

TEST_CASE("engine both and Monte Carlo defaults") {
    auto s = parse_scenario_text("engine = both\n[model]\nlambda = 0.8\n");
    CHECK(s.engine == Engine::both);
    CHECK(s.uses_meanfield());
    CHECK(s.uses_montecarlo());
    CHECK(s.runs == 50);
    CHECK(s.mc_dt == 0.1);
    CHECK(s.network.sizes == std::vector<std::uint64_t>{10000});
    CHECK(parse_scenario_text("[model]\nlambda = 1\n").network.sizes == std::vector<std::uint64_t>{100000});
}

TEST_CASE("alpha outside (0, 1] is rejected with its line") {
    CHECK(error_line("[model]\nlambda = 1\nalpha = 1.5\n") == 3);
    CHECK(error_line("[model]\nlambda = 1\nalpha = 0\n") == 3);
}

TEST_CASE("line-numbered errors") {
    CHECK(error_line("name = x\nbogus = 1\n") == 2);
    CHECK(error_line("[model]\nlambda = 1\nsigma = fast\n") == 3);
    CHECK(error_line("[model]\nlambda = 1,,2\n") == 2);
    CHECK(error_line("[nowhere]\n") == 1);
    CHECK(error_line("[model]\nlambda = 1\nlambda = 2\n") == 3);
    CHECK(error_line("[network]\nn = 10.5\n[model]\nlambda = 1\n") == 2);
    CHECK(error_line("engine = quantum\n") == 1);
    CHECK(error_line("[model]\nlambda\n") == 2);
    CHECK(error_line("[model]\nlambda = 1\n[inoculation]\ng = 1.2\n") == 4);
    CHECK(error_line("engine = montecarlo\n[model]\nlambda = 1\n[montecarlo]\nruns = 0\n") == 5);
    // Missing lambda grid: not tied to a line.
    CHECK_THROWS_AS(parse_scenario_text("engine = meanfield\n"), ConfigError);
}

TEST_CASE("comments, whitespace and grid order") {
    auto s = parse_scenario_text(
        "# sweep\n"
        "name = demo   # trailing\n"
        "\n"
        "[model]\n"
        "  lambda = 0.5 , 1\n"
        "beta = -1, 0\n"
        "[inoculation]\n"
        "strategy = targeted\n"
        "g = 0, 0.1\n");
    CHECK(s.name == "demo");
    CHECK(s.inoculation == InoculationKind::targeted);
    auto grid = s.grid();
    REQUIRE(grid.size() == 8);
    CHECK(grid[0].g == 0.0);
    CHECK(grid[1].g == 0.1);
    CHECK(grid[2].beta == 0.0);
    CHECK(grid[4].lambda == 1.0);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(grid[i].index == i);
}

TEST_CASE("parse from file") {
    const auto path = std::filesystem::temp_directory_path() / "rumor_scenario_test.ini";
    {
        std::ofstream out(path);
        out << "name = filed\n[model]\nlambda = 1\n";
    }
    auto s = parse_scenario(path);
    CHECK(s.name == "filed");
    CHECK(s.output_dir == "filed");
    std::filesystem::remove(path);
    CHECK_THROWS_AS(parse_scenario(path), ConfigError);
}

TEST_CASE("describe lists resolved settings") {
    auto s = parse_scenario_text("seed = 99\n[model]\nlambda = 1, 2\n");
    const auto lines = s.describe();
    CHECK(std::find(lines.begin(), lines.end(), "seed=99") != lines.end());
    CHECK(std::find(lines.begin(), lines.end(), "model.lambda=1,2") != lines.end());
}
