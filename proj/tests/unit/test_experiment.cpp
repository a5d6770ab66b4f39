#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rumor/errors.hpp"
#include "rumor/experiment.hpp"
#include "rumor/table.hpp"

using namespace rumor;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("rumor_experiment_" + name);
    fs::remove_all(dir);
    return dir;
}

Table load(const fs::path& p) {
    std::ifstream in(p);
    return read_csv(in);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("one final-size row per grid point") {
    auto s = parse_scenario_text("engine = meanfield\n[network]\nn = 1000\n[model]\nlambda = 0.2, 0.6, 1.0\n");
    s.output_dir = scratch("rows").string();
    auto m = run_scenario(s);
    auto t = load(fs::path(s.output_dir) / "final_size.csv");
    CHECK(t.rows.size() == 3);
    CHECK(m.failures.empty());
    auto r = t.numeric("R_mf");
    CHECK(r[0] < r[1]);
    CHECK(r[1] < r[2]);
    for (const auto& f : m.files) CHECK(fs::exists(fs::path(s.output_dir) / f.path));
    CHECK(fs::exists(fs::path(s.output_dir) / "manifest.json"));
    CHECK(fs::exists(fs::path(s.output_dir) / "final_size.svg"));
    CHECK(fs::exists(fs::path(s.output_dir) / "mf_trajectory_p2.svg"));
}

TEST_CASE("every csv carries the audit header") {
    auto s = parse_scenario_text(
        "engine = both\nseed = 123\n[network]\nn = 500\n[model]\nlambda = 1.5\n[montecarlo]\nruns = 4\n");
    s.output_dir = scratch("header").string();
    auto m = run_scenario(s);
    for (const auto& f : m.files) {
        if (f.path.size() < 4 || f.path.substr(f.path.size() - 4) != ".csv") continue;
        auto t = load(fs::path(s.output_dir) / f.path);
        CHECK(std::find(t.comments.begin(), t.comments.end(), "seed=123") != t.comments.end());
        CHECK(std::find(t.comments.begin(), t.comments.end(), "model.lambda=1.5") != t.comments.end());
    }
}

TEST_CASE("fixed seed reproduces every file") {
    auto text =
        "engine = both\nseed = 5\nworkers = 3\n[network]\nn = 2000\n[model]\nlambda = 0.5, 1.5\n"
        "[inoculation]\nstrategy = targeted\ng = 0, 0.05\n[montecarlo]\nruns = 6\n";
    auto a = parse_scenario_text(text);
    a.output_dir = scratch("det_a").string();
    auto b = parse_scenario_text(text);
    b.output_dir = scratch("det_b").string();
    b.workers = 1;
    auto ma = run_scenario(a);
    auto mb = run_scenario(b);
    REQUIRE(ma.files.size() == mb.files.size());
    for (std::size_t i = 0; i < ma.files.size(); ++i) {
        CHECK(ma.files[i].path == mb.files[i].path);
        CHECK(ma.files[i].sha256 == mb.files[i].sha256);
    }
    CHECK(slurp(fs::path(a.output_dir) / "manifest.json") == slurp(fs::path(b.output_dir) / "manifest.json"));
}

TEST_CASE("threshold table decreases in alpha for each size") {
    auto s = parse_scenario_text(
        "engine = meanfield\n[network]\ngamma = 2.4\nn = 1000, 100000\n[model]\nlambda = 0.5\n"
        "alpha = 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1\nbeta = 0\n[meanfield]\ntrajectories = false\n");
    s.output_dir = scratch("fig3").string();
    run_scenario(s);
    for (const char* n : {"1000", "100000"}) {
        auto t = load(fs::path(s.output_dir) / (std::string("thresholds_N") + n + ".csv"));
        std::vector<double> lc;
        for (const auto& row : t.rows)
            if (row[t.column("param")] == "alpha") lc.push_back(parse_double(row[t.column("lambda_c")]));
        REQUIRE(lc.size() == 10);
        for (std::size_t i = 1; i < lc.size(); ++i) CHECK(lc[i] < lc[i - 1]);
    }
}

TEST_CASE("a failing point is recorded and skipped") {
    auto s = parse_scenario_text(
        "engine = both\n[network]\nn = 50, 1000\n[model]\nlambda = 1\n[montecarlo]\nruns = 2\n"
        "initial_spreaders = 100\n");
    s.output_dir = scratch("failure").string();
    auto m = run_scenario(s);
    REQUIRE(m.failures.size() == 1);
    CHECK(m.failures[0].point == 0);
    auto t = load(fs::path(s.output_dir) / "final_size.csv");
    CHECK(t.rows.size() == 2);
    CHECK(t.rows[0][t.column("status")].rfind("failed", 0) == 0);
    CHECK(t.rows[1][t.column("status")] == "ok");
    CHECK(slurp(fs::path(s.output_dir) / "manifest.json").find("\"failures\"") != std::string::npos);
}

TEST_CASE("compare needs both engines") {
    auto s = parse_scenario_text("engine = meanfield\n[model]\nlambda = 1\n");
    CHECK_THROWS_AS(compare_engines(s), ConfigError);
}

TEST_CASE("engines agree when nothing spreads") {
    auto s = parse_scenario_text(
        "engine = both\nseed = 2\n[network]\nn = 10000\n[model]\nlambda = 0, 0.1\nalpha = 0.5\nbeta = -0.5\n"
        "[montecarlo]\nruns = 50\n");
    s.workers = 4;
    auto report = compare_engines(s);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].deviation <= 1.0 / 10000.0);
    CHECK(report.rows[0].pass);
    CHECK(report.rows[1].R_mf < 0.02);
    CHECK(report.rows[1].R_mc < 0.02);
    CHECK(report.rows[1].pass);
    CHECK(report.all_pass());

    std::stringstream out;
    write_deviation_csv(out, report);
    CHECK(read_csv(out).rows.size() == 2);
}

TEST_CASE("sha256 of known input") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("scenario network families") {
    GeneratorSpec ba;
    ba.kind = GeneratorKind::ba;
    ba.m0 = 4;
    ba.m = 2;
    Rng rng(1);
    auto net = generate_network(ba, 300, rng);
    CHECK(net.size() == 300);
    CHECK(meanfield_distribution(ba, 300).k_min() == 2);
    GeneratorSpec conf;
    auto cnet = generate_network(conf, 300, rng);
    CHECK(cnet.size() == 300);
}
