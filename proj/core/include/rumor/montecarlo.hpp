#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <variant>
#include <vector>

#include "rumor/inoculation.hpp"
#include "rumor/model_params.hpp"
#include "rumor/network.hpp"
#include "rumor/random.hpp"

namespace rumor {

enum class NodeStatus : std::uint8_t { ignorant = 0, spreader = 1, stifler = 2, inoculated = 3 };

/// Node counts indexed by NodeStatus.
using StatusCounts = std::array<std::size_t, 4>;

/// Initial spreaders: an absolute count or a fraction of N (rounded, at least one).
class InitialSpreaders {
public:
    static InitialSpreaders count(std::size_t n) { return InitialSpreaders(n); }
    static InitialSpreaders fraction(double f) { return InitialSpreaders(f); }

    std::size_t resolve(std::size_t network_size) const;

private:
    explicit InitialSpreaders(std::variant<std::size_t, double> v) : spec_(v) {}
    std::variant<std::size_t, double> spec_;
};

struct StatusEvent {
    double t;
    NodeId node;
    NodeStatus from;
    NodeStatus to;
};

/// Agent-level trace. Fractions are of the whole population, so
/// I + S + R + inoculated_fraction = 1 at every sample.
struct SimTrace {
    std::vector<double> t;
    std::vector<double> I;
    std::vector<double> S;
    std::vector<double> R;
    std::vector<StatusCounts> counts;
    std::size_t n = 0;
    double inoculated_fraction = 0.0;
    /// Informed fraction (spreaders + stiflers) when the run stopped.
    double final_R = 0.0;
    double peak_S = 0.0;
    std::uint64_t seed = 0;
    /// Every status change, in order; filled only when requested.
    std::vector<StatusEvent> events;
};

struct RunOptions {
    double dt = 0.1;
    double t_max = 1000.0;
    bool record_events = false;
};

inline constexpr double kDefaultMonteCarloDt = 0.1;

/// One discrete-time realization of the modified rumor dynamics.
///
/// Each step of length dt, every spreader i of degree k_i contacts
/// floor(k_i^alpha) + Bernoulli(frac(k_i^alpha)) distinct neighbours chosen
/// uniformly. A contacted ignorant j is informed with probability
/// min(1, lambda k_i w_ij / S_i dt), where S_i is the graph-local strength.
/// Afterwards i stifles with probability 1 - exp(-sigma dt). Changes apply at
/// the end of the step. Initial spreaders are drawn first and are never
/// inoculated; inoculated nodes neither adopt nor pass on the rumor but stay
/// in the graph. Stops when no spreaders remain or t >= t_max.
SimTrace run(const Network& net, const ModelParams& p, const InoculationPlan& plan, InitialSpreaders seeds,
             std::uint64_t seed, const RunOptions& options = {});

struct EnsembleSummary {
    double mean_R = 0.0;
    /// Sample standard deviation (0 for a single run).
    double std_R = 0.0;
    double mean_peak_S = 0.0;
    std::vector<double> finals;
    std::vector<double> peaks;
    std::vector<std::uint64_t> seeds;
    /// Sample-wise mean of I, S, R over runs; shorter runs are held at their
    /// final values.
    SimTrace mean_trace;
};

using NetworkFactory = std::function<Network(Rng&)>;

/// Independent runs on one fixed network. Run r uses derive_seed(master, r),
/// so results do not depend on `workers`.
EnsembleSummary ensemble(const Network& net, const ModelParams& p, const InoculationPlan& plan,
                         InitialSpreaders seeds, std::size_t runs, std::uint64_t master_seed,
                         const RunOptions& options = {}, std::size_t workers = 1);

/// Independent runs, each on a fresh network from `factory`, seeded with
/// derive_seed(master, r, 1).
EnsembleSummary ensemble(const NetworkFactory& factory, const ModelParams& p, const InoculationPlan& plan,
                         InitialSpreaders seeds, std::size_t runs, std::uint64_t master_seed,
                         const RunOptions& options = {}, std::size_t workers = 1);

/// CSV `t,I,S,R`.
void write_trace_csv(std::ostream& out, const SimTrace& trace);
/// CSV `run,final_R,peak_S,seed`.
void write_ensemble_csv(std::ostream& out, const EnsembleSummary& summary);

}  // namespace rumor
