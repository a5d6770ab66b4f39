#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "rumor/degree_distribution.hpp"
#include "rumor/random.hpp"

namespace rumor {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Undirected simple graph. Neighbor lists are sorted; there are no
/// self-loops or parallel edges.
class Network {
public:
    Network() = default;
    explicit Network(std::size_t n) : adjacency_(n) {}

    /// Validates the edge set: endpoints in range, no self-loops, no duplicates
    /// in either orientation. Throws std::invalid_argument otherwise.
    static Network from_edges(std::size_t n, std::span<const Edge> edges);

    std::size_t size() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    std::span<const NodeId> neighbors(NodeId v) const { return adjacency_.at(v); }
    Degree degree(NodeId v) const { return static_cast<Degree>(adjacency_.at(v).size()); }
    bool has_edge(NodeId u, NodeId v) const;

    /// All edges as (u, v) with u < v, lexicographically sorted.
    std::vector<Edge> edges() const;

    double mean_degree() const noexcept;

    /// Empirical degree distribution over nodes of positive degree.
    DegreeDistribution degree_distribution() const;

private:
    std::vector<std::vector<NodeId>> adjacency_;
    std::size_t edge_count_ = 0;
};

/// Barabasi-Albert growth: a complete seed graph on `m0` nodes, then each new
/// node attaches `m` distinct edges to existing nodes chosen with probability
/// proportional to their current degree. Requires n > m0 >= m >= 1.
Network build_ba_network(std::size_t n, std::size_t m0, std::size_t m, Rng& rng);

struct ConfigurationNetwork {
    Network network;
    /// Edges dropped because no legal partner was found in the allotted rounds.
    std::size_t erased_edges = 0;
    /// Times the last node's degree was redrawn to make the stub sum even.
    std::size_t parity_redraws = 0;
};

/// Configuration model with degrees drawn i.i.d. from `dist`.
///
/// Stubs are matched uniformly at random. Pairs that would form a self-loop or
/// a parallel edge are put back, together with the stubs of as many randomly
/// chosen accepted edges, and rematched; after a bounded number of rounds any
/// remaining illegal pairs are erased and counted. Throws GenerationError when
/// the stub sum cannot be made even.
ConfigurationNetwork build_configuration_network(const DegreeDistribution& dist, std::size_t n, Rng& rng);

inline constexpr int kConfigurationRematchRounds = 100;
inline constexpr int kParityRedrawLimit = 1000;

/// Edge-list text format: `# nodes=<N>` then one `u v` line per edge, u < v.
void write_edge_list(std::ostream& out, const Network& net);
Network read_edge_list(std::istream& in);

}  // namespace rumor
