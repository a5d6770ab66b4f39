#include "rumor/scenario.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "rumor/errors.hpp"
#include "rumor/table.hpp"

namespace rumor {

std::string_view to_string(Engine engine) {
    switch (engine) {
        case Engine::meanfield: return "meanfield";
        case Engine::montecarlo: return "montecarlo";
        case Engine::both: return "both";
    }
    return "unknown";
}

std::string_view to_string(GeneratorKind kind) {
    return kind == GeneratorKind::ba ? "ba" : "configuration";
}

std::vector<GridPoint> Scenario::grid() const {
    std::vector<GridPoint> points;
    for (std::size_t ni = 0; ni < network.sizes.size(); ++ni)
        for (double lambda : lambdas)
            for (double alpha : alphas)
                for (double beta : betas)
                    for (double sigma : sigmas)
                        for (double g : g_values) {
                            GridPoint p;
                            p.index = points.size();
                            p.size_index = ni;
                            p.n = network.sizes[ni];
                            p.lambda = lambda;
                            p.alpha = alpha;
                            p.beta = beta;
                            p.sigma = sigma;
                            p.g = g;
                            points.push_back(p);
                        }
    return points;
}

namespace {

template <typename T, typename F>
std::string join(const std::vector<T>& values, F fmt) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += fmt(values[i]);
    }
    return out;
}

std::string doubles(const std::vector<double>& v) { return join(v, format_double); }

}  // namespace

std::vector<std::string> Scenario::describe() const {
    std::vector<std::string> lines;
    auto add = [&](const std::string& k, const std::string& v) { lines.push_back(k + "=" + v); };
    add("name", name);
    add("engine", std::string(to_string(engine)));
    add("seed", std::to_string(seed));
    add("network.generator", std::string(to_string(network.kind)));
    if (network.kind == GeneratorKind::configuration) {
        add("network.gamma", format_double(network.gamma));
        add("network.k_min", std::to_string(network.k_min));
    } else {
        add("network.m0", std::to_string(network.m0));
        add("network.m", std::to_string(network.m));
    }
    add("network.n", join(network.sizes, [](std::uint64_t n) { return std::to_string(n); }));
    add("network.per_run", network.per_run ? "true" : "false");
    add("model.lambda", doubles(lambdas));
    add("model.alpha", doubles(alphas));
    add("model.beta", doubles(betas));
    add("model.sigma", doubles(sigmas));
    add("model.delta", format_double(delta));
    add("model.b", format_double(b));
    add("inoculation.strategy", std::string(to_string(inoculation)));
    add("inoculation.g", doubles(g_values));
    if (uses_meanfield()) {
        add("meanfield.dt", format_double(mf_dt));
        add("meanfield.t_end", format_double(mf_t_end));
        add("meanfield.seed_fraction", mf_seed_fraction ? format_double(*mf_seed_fraction) : "1/N");
    }
    if (uses_montecarlo()) {
        add("montecarlo.runs", std::to_string(runs));
        add("montecarlo.dt", format_double(mc_dt));
        add("montecarlo.t_max", format_double(mc_t_max));
        if (initial_fraction)
            add("montecarlo.initial_fraction", format_double(*initial_fraction));
        else
            add("montecarlo.initial_spreaders", std::to_string(initial_spreaders));
    }
    if (engine == Engine::both) add("compare.tolerance", format_double(tolerance));
    return lines;
}

namespace {

using Setter = std::function<void(std::string_view, std::size_t)>;

double to_double(std::string_view v, std::size_t line) {
    try {
        return parse_double(v);
    } catch (const std::exception&) {
        throw ConfigError(line, "expected a number, got '" + std::string(v) + "'");
    }
}

std::uint64_t to_uint(std::string_view v, std::size_t line) {
    try {
        return parse_uint(v);
    } catch (const std::exception&) {
        // Allow exact integral values such as 1e5.
        double d = 0.0;
        try {
            d = parse_double(v);
        } catch (const std::exception&) {
            throw ConfigError(line, "expected a non-negative integer, got '" + std::string(v) + "'");
        }
        if (!(d >= 0.0) || d != static_cast<double>(static_cast<std::uint64_t>(d)))
            throw ConfigError(line, "expected a non-negative integer, got '" + std::string(v) + "'");
        return static_cast<std::uint64_t>(d);
    }
}

bool to_bool(std::string_view v, std::size_t line) {
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw ConfigError(line, "expected true or false, got '" + std::string(v) + "'");
}

template <typename F>
auto to_list(std::string_view v, std::size_t line, F convert) {
    std::vector<decltype(convert(v, line))> out;
    for (const auto& item : split(v, ',')) {
        auto t = trim(item);
        if (t.empty()) throw ConfigError(line, "empty list element");
        out.push_back(convert(t, line));
    }
    if (out.empty()) throw ConfigError(line, "empty list");
    return out;
}

void require(bool ok, std::size_t line, const std::string& what) {
    if (!ok) throw ConfigError(line, what);
}

}  // namespace

Scenario parse_scenario_text(std::string_view text) {
    Scenario s;
    std::map<std::string, std::size_t> seen;
    bool sizes_set = false;

    std::map<std::string, Setter> keys{
        {"name", [&](auto v, auto) { s.name = std::string(v); }},
        {"engine",
         [&](auto v, auto line) {
             if (v == "meanfield") s.engine = Engine::meanfield;
             else if (v == "montecarlo") s.engine = Engine::montecarlo;
             else if (v == "both") s.engine = Engine::both;
             else throw ConfigError(line, "engine must be meanfield, montecarlo or both");
         }},
        {"seed", [&](auto v, auto line) { s.seed = to_uint(v, line); }},
        {"workers", [&](auto v, auto line) { s.workers = to_uint(v, line); }},
        {"output", [&](auto v, auto) { s.output_dir = std::string(v); }},

        {"network.generator",
         [&](auto v, auto line) {
             if (v == "configuration") s.network.kind = GeneratorKind::configuration;
             else if (v == "ba") s.network.kind = GeneratorKind::ba;
             else throw ConfigError(line, "generator must be configuration or ba");
         }},
        {"network.gamma", [&](auto v, auto line) { s.network.gamma = to_double(v, line); }},
        {"network.k_min",
         [&](auto v, auto line) { s.network.k_min = static_cast<Degree>(to_uint(v, line)); }},
        {"network.n",
         [&](auto v, auto line) {
             s.network.sizes = to_list(v, line, to_uint);
             sizes_set = true;
         }},
        {"network.m0", [&](auto v, auto line) { s.network.m0 = to_uint(v, line); }},
        {"network.m", [&](auto v, auto line) { s.network.m = to_uint(v, line); }},
        {"network.per_run", [&](auto v, auto line) { s.network.per_run = to_bool(v, line); }},

        {"model.lambda", [&](auto v, auto line) { s.lambdas = to_list(v, line, to_double); }},
        {"model.alpha", [&](auto v, auto line) { s.alphas = to_list(v, line, to_double); }},
        {"model.beta", [&](auto v, auto line) { s.betas = to_list(v, line, to_double); }},
        {"model.sigma", [&](auto v, auto line) { s.sigmas = to_list(v, line, to_double); }},
        {"model.delta", [&](auto v, auto line) { s.delta = to_double(v, line); }},
        {"model.b", [&](auto v, auto line) { s.b = to_double(v, line); }},

        {"inoculation.strategy",
         [&](auto v, auto line) {
             if (v == "none") s.inoculation = InoculationKind::none;
             else if (v == "random") s.inoculation = InoculationKind::random;
             else if (v == "targeted") s.inoculation = InoculationKind::targeted;
             else throw ConfigError(line, "strategy must be none, random or targeted");
         }},
        {"inoculation.g", [&](auto v, auto line) { s.g_values = to_list(v, line, to_double); }},

        {"meanfield.dt", [&](auto v, auto line) { s.mf_dt = to_double(v, line); }},
        {"meanfield.t_end", [&](auto v, auto line) { s.mf_t_end = to_double(v, line); }},
        {"meanfield.seed_fraction",
         [&](auto v, auto line) { s.mf_seed_fraction = to_double(v, line); }},
        {"meanfield.trajectories",
         [&](auto v, auto line) { s.mf_trajectories = to_bool(v, line); }},

        {"montecarlo.runs",
         [&](auto v, auto line) {
             s.runs = to_uint(v, line);
         }},
        {"montecarlo.dt", [&](auto v, auto line) { s.mc_dt = to_double(v, line); }},
        {"montecarlo.t_max", [&](auto v, auto line) { s.mc_t_max = to_double(v, line); }},
        {"montecarlo.initial_spreaders",
         [&](auto v, auto line) { s.initial_spreaders = to_uint(v, line); }},
        {"montecarlo.initial_fraction",
         [&](auto v, auto line) { s.initial_fraction = to_double(v, line); }},
        {"montecarlo.trajectories",
         [&](auto v, auto line) { s.mc_trajectories = to_bool(v, line); }},

        {"compare.tolerance", [&](auto v, auto line) { s.tolerance = to_double(v, line); }},
    };

    std::string section;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            require(line.back() == ']', line_no, "malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            static const char* known[] = {"network", "model", "inoculation", "meanfield",
                                          "montecarlo", "compare"};
            bool ok = false;
            for (const char* k : known) ok = ok || section == k;
            require(ok, line_no, "unknown section [" + section + "]");
            continue;
        }
        auto eq = line.find('=');
        require(eq != std::string_view::npos, line_no, "expected key = value");
        std::string key(trim(line.substr(0, eq)));
        std::string_view value = trim(line.substr(eq + 1));
        require(!key.empty(), line_no, "missing key");
        std::string full = section.empty() ? key : section + "." + key;
        auto it = keys.find(full);
        require(it != keys.end(), line_no, "unknown key '" + full + "'");
        require(!seen.count(full), line_no, "duplicate key '" + full + "'");
        require(!value.empty(), line_no, "missing value for '" + full + "'");
        it->second(value, line_no);
        seen[full] = line_no;
    }

    auto at = [&](const std::string& key) {
        auto it = seen.find(key);
        return it == seen.end() ? std::size_t{0} : it->second;
    };

    if (!sizes_set) s.network.sizes = {s.uses_montecarlo() ? 10000u : 100000u};

    require(!s.lambdas.empty(), at("model.lambda"), "model.lambda must list at least one value");
    for (double l : s.lambdas)
        require(l >= 0.0, at("model.lambda"), "lambda must be non-negative");
    for (double a : s.alphas)
        require(a > 0.0 && a <= 1.0, at("model.alpha"), "alpha must lie in (0, 1]");
    for (double sg : s.sigmas) require(sg > 0.0, at("model.sigma"), "sigma must be positive");
    for (double bt : s.betas)
        require(std::isfinite(bt), at("model.beta"), "beta must be finite");
    require(s.b > 0.0, at("model.b"), "b must be positive");
    require(s.delta >= 0.0, at("model.delta"), "delta must be non-negative");
    for (double g : s.g_values)
        require(g >= 0.0 && g <= 1.0, at("inoculation.g"), "g must lie in [0, 1]");
    require(s.workers >= 1, at("workers"), "workers must be at least 1");

    if (s.network.kind == GeneratorKind::configuration) {
        require(s.network.gamma > 2.0, at("network.gamma"), "gamma must exceed 2");
        require(s.network.k_min >= 1, at("network.k_min"), "k_min must be at least 1");
    } else {
        require(s.network.m >= 1, at("network.m"), "m must be at least 1");
        require(s.network.m0 >= s.network.m, at("network.m0"), "m0 must be at least m");
    }
    for (auto n : s.network.sizes) {
        require(n >= 2, at("network.n"), "network size must be at least 2");
        if (s.network.kind == GeneratorKind::ba)
            require(n > s.network.m0, at("network.n"), "network size must exceed m0");
    }

    if (s.uses_meanfield()) {
        require(s.mf_dt > 0.0, at("meanfield.dt"), "meanfield.dt must be positive");
        require(s.mf_t_end > 0.0, at("meanfield.t_end"), "meanfield.t_end must be positive");
        if (s.mf_seed_fraction)
            require(*s.mf_seed_fraction > 0.0 && *s.mf_seed_fraction < 1.0,
                    at("meanfield.seed_fraction"), "seed_fraction must lie in (0, 1)");
    }
    if (s.uses_montecarlo()) {
        require(s.runs >= 1, at("montecarlo.runs"), "montecarlo.runs must be at least 1");
        require(s.mc_dt > 0.0, at("montecarlo.dt"), "montecarlo.dt must be positive");
        require(s.mc_t_max > 0.0, at("montecarlo.t_max"), "montecarlo.t_max must be positive");
        require(s.initial_spreaders >= 1, at("montecarlo.initial_spreaders"),
                "initial_spreaders must be at least 1");
        if (s.initial_fraction)
            require(*s.initial_fraction > 0.0 && *s.initial_fraction <= 1.0,
                    at("montecarlo.initial_fraction"), "initial_fraction must lie in (0, 1]");
    }
    require(s.tolerance > 0.0, at("compare.tolerance"), "tolerance must be positive");
    return s;
}

Scenario parse_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot open scenario file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    Scenario s = parse_scenario_text(buf.str());
    if (s.output_dir.empty()) s.output_dir = s.name;
    return s;
}

}  // namespace rumor
