#include "rumor/experiment.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include "json.hpp"
#include <sstream>

#include "rumor/errors.hpp"
#include "rumor/parallel.hpp"
#include "rumor/svg_plot.hpp"
#include "rumor/table.hpp"

namespace rumor {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kPointStream = 2;
constexpr std::uint64_t kNetworkStream = 3;

ModelParams params_for(const Scenario& s, const GridPoint& p) {
    ModelParams m;
    m.lambda = p.lambda;
    m.alpha = p.alpha;
    m.sigma = p.sigma;
    m.delta = s.delta;
    m.tie.beta = p.beta;
    m.tie.b = s.b;
    m.validate();
    return m;
}

InoculationPlan plan_for(const Scenario& s, const DegreeDistribution& dist, double g) {
    switch (s.inoculation) {
        case InoculationKind::none: return InoculationPlan::none();
        case InoculationKind::random: return make_random_plan(g);
        case InoculationKind::targeted: return make_targeted_plan(dist, g);
    }
    return InoculationPlan::none();
}

CriticalRate point_threshold(const DegreeDistribution& dist, const ModelParams& m, const InoculationPlan& plan) {
    CriticalRate rate;
    const double base = threshold_modified(dist, m.alpha, m.beta());
    switch (plan.kind()) {
        case InoculationKind::none: rate = base; break;
        case InoculationKind::random: rate = threshold_random_inoc(base, plan.g()); break;
        case InoculationKind::targeted: rate = threshold_targeted_inoc(dist, m.alpha, m.beta(), plan); break;
    }
    if (rate) *rate *= m.sigma;
    return rate;
}

InitialSpreaders mc_seeds(const Scenario& s) {
    return s.initial_fraction ? InitialSpreaders::fraction(*s.initial_fraction)
                              : InitialSpreaders::count(s.initial_spreaders);
}

}  // namespace

DegreeDistribution meanfield_distribution(const GeneratorSpec& spec, std::uint64_t n) {
    if (spec.kind == GeneratorKind::ba)
        return sample_powerlaw_distribution(3.0, static_cast<Degree>(spec.m), n);
    return sample_powerlaw_distribution(spec.gamma, spec.k_min, n);
}

Network generate_network(const GeneratorSpec& spec, std::uint64_t n, Rng& rng) {
    if (spec.kind == GeneratorKind::ba) return build_ba_network(n, spec.m0, spec.m, rng);
    return build_configuration_network(meanfield_distribution(spec, n), n, rng).network;
}

std::vector<PointResult> evaluate_grid(const Scenario& s) {
    const auto points = s.grid();
    const auto& sizes = s.network.sizes;

    std::vector<DegreeDistribution> dists;
    for (auto n : sizes) dists.push_back(meanfield_distribution(s.network, n));

    // One shared network per size unless every run draws its own.
    std::vector<std::shared_ptr<const Network>> networks(sizes.size());
    std::vector<std::string> network_errors(sizes.size());
    std::vector<std::optional<DegreeDistribution>> empirical(sizes.size());
    if (s.uses_montecarlo() && !s.network.per_run) {
        parallel_for(sizes.size(), s.workers, [&](std::size_t i) {
            try {
                Rng rng(derive_seed(s.seed, i, kNetworkStream));
                networks[i] = std::make_shared<const Network>(generate_network(s.network, sizes[i], rng));
                empirical[i] = networks[i]->degree_distribution();
            } catch (const std::exception& e) {
                network_errors[i] = e.what();
            }
        });
    }

    std::vector<PointResult> results(points.size());
    const std::size_t inner_workers = points.size() < s.workers ? s.workers / std::max<std::size_t>(1, points.size()) : 1;

    parallel_for(points.size(), s.workers, [&](std::size_t idx) {
        const GridPoint& gp = points[idx];
        PointResult& r = results[idx];
        r.point = gp;
        r.R_mf = r.R_mf_asymptotic = kNaN;
        r.R_mc_mean = r.R_mc_std = r.peak_S_mc = kNaN;
        try {
            const ModelParams m = params_for(s, gp);
            const DegreeDistribution& dist = dists[gp.size_index];
            const InoculationPlan mf_plan = plan_for(s, dist, gp.g);
            r.lambda_c = point_threshold(dist, m, mf_plan);

            if (s.uses_meanfield()) {
                const double s0 = s.mf_seed_fraction.value_or(1.0 / static_cast<double>(gp.n));
                IntegrationOptions opt;
                opt.store_states = false;
                Trajectory traj = integrate(DegreeClassState::seeded(dist, s0), dist, m, mf_plan, s.mf_t_end,
                                            s.mf_dt, opt);
                r.R_mf = traj.final_R();
                r.R_mf_asymptotic = final_rumor_size(dist, m, mf_plan);
                if (s.mf_trajectories) r.trajectory = std::move(traj);
            }

            if (s.uses_montecarlo()) {
                RunOptions ro;
                ro.dt = s.mc_dt;
                ro.t_max = s.mc_t_max;
                const std::uint64_t master = derive_seed(s.seed, gp.index, kPointStream);
                EnsembleSummary sum;
                if (s.network.per_run) {
                    const InoculationPlan plan = plan_for(s, dist, gp.g);
                    const GeneratorSpec spec = s.network;
                    const std::uint64_t n = gp.n;
                    NetworkFactory factory = [spec, n](Rng& rng) { return generate_network(spec, n, rng); };
                    sum = ensemble(factory, m, plan, mc_seeds(s), s.runs, master, ro, inner_workers);
                } else {
                    const auto& net = networks[gp.size_index];
                    if (!net) throw GenerationError(network_errors[gp.size_index]);
                    const InoculationPlan plan = plan_for(s, *empirical[gp.size_index], gp.g);
                    sum = ensemble(*net, m, plan, mc_seeds(s), s.runs, master, ro, inner_workers);
                }
                r.R_mc_mean = sum.mean_R;
                r.R_mc_std = sum.std_R;
                r.peak_S_mc = sum.mean_peak_S;
                r.ensemble = std::move(sum);
            }
        } catch (const std::exception& e) {
            r.ok = false;
            r.error = e.what();
        }
    });
    return results;
}

std::vector<ThresholdRow> threshold_table(const Scenario& s, std::uint64_t n) {
    const DegreeDistribution dist = meanfield_distribution(s.network, n);
    const double gamma = dist.gamma().value_or(s.network.gamma);
    std::vector<ThresholdRow> rows;
    const double beta0 = s.betas.front();
    const double alpha0 = s.alphas.front();
    for (double a : s.alphas)
        rows.push_back({"alpha", a, threshold_modified(dist, a, beta0), classify_regime(gamma, a, beta0)});
    for (double b : s.betas)
        rows.push_back({"beta", b, threshold_modified(dist, alpha0, b), classify_regime(gamma, alpha0, b)});
    return rows;
}

bool DeviationReport::all_pass() const {
    for (const auto& d : rows)
        if (!d.pass) return false;
    return true;
}

DeviationReport compare_engines(const Scenario& s) {
    if (s.engine != Engine::both) throw ConfigError(0, "compare needs engine = both");
    return compare_engines(s, evaluate_grid(s));
}

DeviationReport compare_engines(const Scenario& s, const std::vector<PointResult>& results) {
    DeviationReport report;
    report.tolerance = s.tolerance;
    for (const auto& r : results) {
        Deviation d;
        d.point = r.point;
        d.R_mf = r.R_mf;
        d.R_mc = r.R_mc_mean;
        d.error = r.error;
        d.deviation = std::fabs(r.R_mc_mean - r.R_mf);
        d.pass = r.ok && d.deviation < s.tolerance;
        report.rows.push_back(std::move(d));
    }
    return report;
}

namespace {

std::string fmt(double v) { return std::isnan(v) ? "nan" : format_double(v); }

std::string fmt(const CriticalRate& v) { return v ? format_double(*v) : "none"; }

std::string clean(std::string msg) {
    for (char& c : msg)
        if (c == ',' || c == '\n') c = ';';
    return msg;
}

std::vector<std::string> point_header(const std::vector<std::string>& base, const GridPoint& p) {
    auto h = base;
    h.push_back("point=" + std::to_string(p.index) + " N=" + std::to_string(p.n) + " lambda=" + fmt(p.lambda) +
                " alpha=" + fmt(p.alpha) + " beta=" + fmt(p.beta) + " sigma=" + fmt(p.sigma) + " g=" + fmt(p.g));
    return h;
}

std::string with_comments(const std::vector<std::string>& comments, const std::string& body) {
    std::string out;
    for (const auto& c : comments) out += "# " + c + "\n";
    return out + body;
}

}  // namespace

void write_deviation_csv(std::ostream& out, const DeviationReport& report, const std::vector<std::string>& comments) {
    Table t;
    t.comments = comments;
    t.comments.push_back("tolerance=" + format_double(report.tolerance));
    t.columns = {"point", "N", "lambda", "alpha", "beta", "sigma", "g", "R_mf", "R_mc", "deviation", "pass"};
    for (const auto& d : report.rows)
        t.rows.push_back({std::to_string(d.point.index), std::to_string(d.point.n), fmt(d.point.lambda),
                          fmt(d.point.alpha), fmt(d.point.beta), fmt(d.point.sigma), fmt(d.point.g), fmt(d.R_mf),
                          fmt(d.R_mc), fmt(d.deviation), d.pass ? "true" : "false"});
    write_csv(out, t);
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

namespace {

class Collector {
public:
    explicit Collector(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

    void write(const std::string& name, const std::string& content) {
        std::ofstream out(dir_ / name, std::ios::binary);
        out << content;
        if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
        files_.push_back({name, sha256_hex(content)});
    }

    /// CSV plus an SVG rendered from the parsed CSV text.
    void write_with_plot(const std::string& stem, const std::string& csv, PlotSpec spec,
                         const std::string& x, const std::vector<std::string>& ys) {
        write(stem + ".csv", csv);
        std::istringstream in(csv);
        Table t = read_csv(in);
        std::vector<PlotSeries> series;
        for (const auto& y : ys) series.push_back({y, t.numeric(x), t.numeric(y)});
        write(stem + ".svg", render_svg(spec, series));
    }

    std::vector<OutputFile> files() const { return files_; }
    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
    std::vector<OutputFile> files_;
};

struct Axis {
    std::string column;
    std::size_t distinct;
};

std::vector<PlotSeries> final_size_series(const Scenario& s, const Table& t, std::string& x_axis) {
    const std::vector<std::string> candidates{"lambda", "beta", "alpha", "g", "sigma", "N"};
    std::vector<Axis> varying;
    for (const auto& c : candidates) {
        std::map<std::string, int> values;
        for (const auto& row : t.rows) values[row[t.column(c)]] = 1;
        if (values.size() > 1) varying.push_back({c, values.size()});
    }
    x_axis = varying.empty() ? "lambda" : varying.front().column;

    std::vector<std::string> engines;
    if (s.uses_meanfield()) engines.push_back("R_mf");
    if (s.uses_montecarlo()) engines.push_back("R_mc_mean");

    std::map<std::string, std::size_t> index;
    std::vector<PlotSeries> series;
    for (const auto& row : t.rows) {
        if (row[t.column("status")] != "ok") continue;
        std::string key;
        for (std::size_t i = 1; i < varying.size(); ++i)
            key += (key.empty() ? "" : " ") + varying[i].column + "=" + row[t.column(varying[i].column)];
        for (const auto& e : engines) {
            std::string label = key;
            if (engines.size() > 1) label += (label.empty() ? "" : " ") + std::string(e == "R_mf" ? "MF" : "MC");
            if (label.empty()) label = "R";
            auto [it, inserted] = index.try_emplace(label, series.size());
            if (inserted) series.push_back({label, {}, {}});
            series[it->second].x.push_back(parse_double(row[t.column(x_axis)]));
            series[it->second].y.push_back(parse_double(row[t.column(e)]));
        }
    }
    return series;
}

}  // namespace

Manifest run_scenario(const Scenario& s) {
    const auto results = evaluate_grid(s);
    const auto header = s.describe();
    Collector out(s.output_dir.empty() ? std::filesystem::path(s.name) : std::filesystem::path(s.output_dir));

    Manifest manifest;
    manifest.name = s.name;
    manifest.seed = s.seed;
    manifest.directory = out.dir();

    {
        Table t;
        t.comments = header;
        t.columns = {"point", "N",     "lambda", "alpha", "beta", "sigma",     "g",         "lambda_c",
                     "R_mf",  "R_mf_asymptotic", "R_mc_mean", "R_mc_std", "peak_S_mc", "status"};
        for (const auto& r : results) {
            const auto& p = r.point;
            t.rows.push_back({std::to_string(p.index), std::to_string(p.n), fmt(p.lambda), fmt(p.alpha),
                              fmt(p.beta), fmt(p.sigma), fmt(p.g), fmt(r.lambda_c), fmt(r.R_mf),
                              fmt(r.R_mf_asymptotic), fmt(r.R_mc_mean), fmt(r.R_mc_std), fmt(r.peak_S_mc),
                              r.ok ? "ok" : "failed: " + clean(r.error)});
            if (!r.ok) manifest.failures.push_back({p.index, r.error});
        }
        std::ostringstream csv;
        write_csv(csv, t);
        out.write("final_size.csv", csv.str());
        std::string x_axis;
        auto series = final_size_series(s, t, x_axis);
        out.write("final_size.svg",
                  render_svg({"Final rumor size", x_axis, "R", x_axis == "N", true}, series));
    }

    for (auto n : s.network.sizes) {
        std::ostringstream csv;
        auto comments = header;
        comments.push_back("N=" + std::to_string(n));
        write_threshold_csv(csv, threshold_table(s, n), comments);
        std::istringstream in(csv.str());
        Table t = read_csv(in);
        std::vector<PlotSeries> series;
        std::map<std::string, std::size_t> index;
        for (const auto& row : t.rows) {
            const auto& param = row[t.column("param")];
            auto [it, inserted] = index.try_emplace(param, series.size());
            if (inserted) series.push_back({"vs " + param, {}, {}});
            const auto& lc = row[t.column("lambda_c")];
            series[it->second].x.push_back(parse_double(row[t.column("value")]));
            series[it->second].y.push_back(lc == "none" ? kNaN : parse_double(lc));
        }
        const std::string stem = "thresholds_N" + std::to_string(n);
        out.write(stem + ".csv", csv.str());
        out.write(stem + ".svg",
                  render_svg({"Threshold at N=" + std::to_string(n), "exponent", "lambda_c", false, true}, series));
    }

    for (const auto& r : results) {
        const auto comments = point_header(header, r.point);
        const std::string id = std::to_string(r.point.index);
        if (r.trajectory) {
            std::ostringstream body;
            write_trajectory_csv(body, *r.trajectory);
            out.write_with_plot("mf_trajectory_p" + id, with_comments(comments, body.str()),
                                {"Mean-field dynamics, point " + id, "t", "fraction"}, "t", {"R", "S", "I"});
        }
        if (r.ensemble) {
            if (s.mc_trajectories) {
                std::ostringstream body;
                write_trace_csv(body, r.ensemble->mean_trace);
                out.write_with_plot("mc_trace_p" + id, with_comments(comments, body.str()),
                                    {"Monte Carlo ensemble mean, point " + id, "t", "fraction"}, "t",
                                    {"R", "S", "I"});
            }
            std::ostringstream body;
            write_ensemble_csv(body, *r.ensemble);
            out.write_with_plot("mc_ensemble_p" + id, with_comments(comments, body.str()),
                                {"Final size per run, point " + id, "run", "R", false, true}, "run",
                                {"final_R"});
        }
    }

    if (s.engine == Engine::both) {
        std::ostringstream csv;
        const auto report = compare_engines(s, results);
        write_deviation_csv(csv, report, header);
        out.write_with_plot("comparison", csv.str(), {"Engine deviation", "point", "|R_MC - R_MF|", false, true},
                            "point", {"deviation"});
    }

    manifest.files = out.files();

    nlohmann::ordered_json j;
    j["name"] = manifest.name;
    j["seed"] = manifest.seed;
    j["engine"] = std::string(to_string(s.engine));
    j["points"] = results.size();
    j["files"] = nlohmann::ordered_json::array();
    for (const auto& f : manifest.files) j["files"].push_back({{"path", f.path}, {"sha256", f.sha256}});
    j["failures"] = nlohmann::ordered_json::array();
    for (const auto& f : manifest.failures) j["failures"].push_back({{"point", f.point}, {"error", f.error}});
    std::ofstream mf(out.dir() / "manifest.json", std::ios::binary);
    mf << j.dump(2) << '\n';
    return manifest;
}

}  // namespace rumor
