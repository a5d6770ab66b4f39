#include "rumor/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "rumor/parallel.hpp"
#include "rumor/table.hpp"

namespace rumor {

std::size_t InitialSpreaders::resolve(std::size_t network_size) const {
    if (const auto* c = std::get_if<std::size_t>(&spec_)) {
        return *c;
    }
    const double f = std::get<double>(spec_);
    if (!(f > 0.0 && f <= 1.0)) {
        throw std::invalid_argument("initial spreader fraction must lie in (0, 1]");
    }
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(f * static_cast<double>(network_size))));
}

namespace {

/// Floyd's algorithm: `count` distinct values from [0, n), sorted.
std::vector<NodeId> sample_distinct(std::size_t n, std::size_t count, Rng& rng) {
    std::vector<NodeId> out;
    out.reserve(count);
    for (std::size_t j = n - count; j < n; ++j) {
        const auto t = static_cast<NodeId>(uniform_index(rng, j + 1));
        if (std::find(out.begin(), out.end(), t) == out.end()) {
            out.push_back(t);
        } else {
            out.push_back(static_cast<NodeId>(j));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

SimTrace run(const Network& net, const ModelParams& p, const InoculationPlan& plan, InitialSpreaders seeds,
             std::uint64_t seed, const RunOptions& options) {
    p.validate();
    if (!(options.dt > 0.0)) {
        throw std::invalid_argument("time step dt must be positive");
    }
    const std::size_t n = net.size();
    const std::size_t n_seeds = seeds.resolve(n);
    if (n_seeds < 1 || n_seeds > n) {
        throw std::invalid_argument("need between 1 and N initial spreaders, got " + std::to_string(n_seeds));
    }

    Rng rng(seed);
    SimTrace trace;
    trace.n = n;
    trace.seed = seed;

    const auto initial = sample_distinct(n, n_seeds, rng);
    const auto immune = apply_plan(net, plan, rng, initial);

    std::vector<NodeStatus> status(n, NodeStatus::ignorant);
    StatusCounts counts{n, 0, 0, 0};
    const auto move = [&](NodeId v, NodeStatus to, double t) {
        const NodeStatus from = status[v];
        --counts[static_cast<std::size_t>(from)];
        ++counts[static_cast<std::size_t>(to)];
        status[v] = to;
        if (options.record_events) {
            trace.events.push_back({t, v, from, to});
        }
    };
    for (const NodeId v : immune) {
        move(v, NodeStatus::inoculated, 0.0);
    }
    for (const NodeId v : initial) {
        move(v, NodeStatus::spreader, 0.0);
    }
    trace.inoculated_fraction = static_cast<double>(immune.size()) / static_cast<double>(n);

    // w_ij / S_i = k_j^beta / sum_{l in N(i)} k_l^beta; the prefactor b cancels.
    std::vector<double> degree_pow_beta(n);
    std::vector<double> contacts(n);
    for (NodeId v = 0; v < n; ++v) {
        const double k = static_cast<double>(net.degree(v));
        degree_pow_beta[v] = k > 0 ? std::pow(k, p.beta()) : 0.0;
        contacts[v] = k > 0 ? std::pow(k, p.alpha) : 0.0;
    }
    std::vector<double> success_scale(n, 0.0);
    for (NodeId v = 0; v < n; ++v) {
        double strength = 0.0;
        for (const NodeId u : net.neighbors(v)) {
            strength += degree_pow_beta[u];
        }
        if (strength > 0.0) {
            success_scale[v] = p.lambda * options.dt * static_cast<double>(net.degree(v)) / strength;
        }
    }
    const double stifle_prob = -std::expm1(-p.sigma * options.dt);

    const double inv_n = 1.0 / static_cast<double>(n);
    const auto record = [&](double t) {
        trace.t.push_back(t);
        trace.I.push_back(static_cast<double>(counts[0]) * inv_n);
        trace.S.push_back(static_cast<double>(counts[1]) * inv_n);
        trace.R.push_back(static_cast<double>(counts[2]) * inv_n);
        trace.counts.push_back(counts);
        trace.peak_S = std::max(trace.peak_S, trace.S.back());
    };

    std::vector<NodeId> spreaders(initial);
    std::vector<NodeId> informed;
    std::vector<NodeId> stifled;
    std::vector<char> marked(n, 0);
    std::vector<std::uint32_t> slots;

    double t = 0.0;
    record(t);
    for (std::uint64_t step = 1; !spreaders.empty() && t < options.t_max; ++step) {
        const double t_next = static_cast<double>(step) * options.dt;
        informed.clear();
        stifled.clear();
        for (const NodeId i : spreaders) {
            const auto nbrs = net.neighbors(i);
            const auto k = nbrs.size();
            if (k > 0) {
                const double mean_contacts = contacts[i];
                const double whole = std::floor(mean_contacts);
                auto c = static_cast<std::size_t>(whole);
                if (bernoulli(rng, mean_contacts - whole)) {
                    ++c;
                }
                c = std::min(c, k);
                slots.resize(k);
                std::iota(slots.begin(), slots.end(), 0U);
                for (std::size_t s = 0; s < c; ++s) {
                    const auto pick = s + uniform_index(rng, k - s);
                    std::swap(slots[s], slots[pick]);
                    const NodeId j = nbrs[slots[s]];
                    if (status[j] != NodeStatus::ignorant || marked[j]) {
                        continue;
                    }
                    const double prob = std::min(1.0, success_scale[i] * degree_pow_beta[j]);
                    if (bernoulli(rng, prob)) {
                        marked[j] = 1;
                        informed.push_back(j);
                    }
                }
            }
            if (bernoulli(rng, stifle_prob)) {
                stifled.push_back(i);
            }
        }
        for (const NodeId j : informed) {
            move(j, NodeStatus::spreader, t_next);
            marked[j] = 0;
        }
        for (const NodeId i : stifled) {
            move(i, NodeStatus::stifler, t_next);
        }
        std::erase_if(spreaders, [&](NodeId v) { return status[v] != NodeStatus::spreader; });
        spreaders.insert(spreaders.end(), informed.begin(), informed.end());
        t = t_next;
        record(t);
    }
    trace.final_R = trace.R.back() + trace.S.back();
    return trace;
}

namespace {

EnsembleSummary summarize(std::vector<SimTrace> traces) {
    EnsembleSummary out;
    const auto runs = traces.size();
    std::size_t longest = 0;
    for (const auto& tr : traces) {
        out.finals.push_back(tr.final_R);
        out.peaks.push_back(tr.peak_S);
        out.seeds.push_back(tr.seed);
        longest = std::max(longest, tr.t.size());
    }
    const double rd = static_cast<double>(runs);
    out.mean_R = std::accumulate(out.finals.begin(), out.finals.end(), 0.0) / rd;
    out.mean_peak_S = std::accumulate(out.peaks.begin(), out.peaks.end(), 0.0) / rd;
    if (runs > 1) {
        double ss = 0.0;
        for (const double r : out.finals) {
            ss += (r - out.mean_R) * (r - out.mean_R);
        }
        out.std_R = std::sqrt(ss / (rd - 1.0));
    }

    auto& m = out.mean_trace;
    m.n = traces.front().n;
    m.t.assign(longest, 0.0);
    m.I.assign(longest, 0.0);
    m.S.assign(longest, 0.0);
    m.R.assign(longest, 0.0);
    for (const auto& tr : traces) {
        for (std::size_t j = 0; j < longest; ++j) {
            const auto src = std::min(j, tr.t.size() - 1);
            m.I[j] += tr.I[src] / rd;
            m.S[j] += tr.S[src] / rd;
            m.R[j] += tr.R[src] / rd;
        }
        m.inoculated_fraction += tr.inoculated_fraction / rd;
        if (tr.t.size() == longest) {
            m.t = tr.t;
        }
    }
    m.final_R = out.mean_R;
    m.peak_S = m.S.empty() ? 0.0 : *std::max_element(m.S.begin(), m.S.end());
    return out;
}

void check_runs(std::size_t runs) {
    if (runs < 1) {
        throw std::invalid_argument("an ensemble needs at least one run");
    }
}

}  // namespace

EnsembleSummary ensemble(const Network& net, const ModelParams& p, const InoculationPlan& plan,
                         InitialSpreaders seeds, std::size_t runs, std::uint64_t master_seed,
                         const RunOptions& options, std::size_t workers) {
    check_runs(runs);
    std::vector<SimTrace> traces(runs);
    parallel_for(runs, workers, [&](std::size_t r) {
        traces[r] = run(net, p, plan, seeds, derive_seed(master_seed, r), options);
    });
    return summarize(std::move(traces));
}

EnsembleSummary ensemble(const NetworkFactory& factory, const ModelParams& p, const InoculationPlan& plan,
                         InitialSpreaders seeds, std::size_t runs, std::uint64_t master_seed,
                         const RunOptions& options, std::size_t workers) {
    check_runs(runs);
    std::vector<SimTrace> traces(runs);
    parallel_for(runs, workers, [&](std::size_t r) {
        Rng net_rng(derive_seed(master_seed, r, 1));
        const Network net = factory(net_rng);
        traces[r] = run(net, p, plan, seeds, derive_seed(master_seed, r), options);
    });
    return summarize(std::move(traces));
}

void write_trace_csv(std::ostream& out, const SimTrace& trace) {
    out << "t,I,S,R\n";
    for (std::size_t j = 0; j < trace.t.size(); ++j) {
        out << format_double(trace.t[j]) << ',' << format_double(trace.I[j]) << ',' << format_double(trace.S[j]) << ','
            << format_double(trace.R[j]) << '\n';
    }
}

void write_ensemble_csv(std::ostream& out, const EnsembleSummary& summary) {
    out << "run,final_R,peak_S,seed\n";
    for (std::size_t r = 0; r < summary.finals.size(); ++r) {
        out << r << ',' << format_double(summary.finals[r]) << ',' << format_double(summary.peaks[r]) << ','
            << summary.seeds[r] << '\n';
    }
}

}  // namespace rumor
