#include "rumor/network.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "rumor/errors.hpp"
#include "rumor/table.hpp"

namespace rumor {

namespace {

std::uint64_t edge_key(NodeId u, NodeId v) {
    if (u > v) {
        std::swap(u, v);
    }
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

Network Network::from_edges(std::size_t n, std::span<const Edge> edges) {
    Network net(n);
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        if (u == v) {
            throw std::invalid_argument("self-loop at node " + std::to_string(u));
        }
        net.adjacency_[u].push_back(v);
        net.adjacency_[v].push_back(u);
    }
    for (auto& nbrs : net.adjacency_) {
        std::sort(nbrs.begin(), nbrs.end());
        if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end()) {
            throw std::invalid_argument("parallel edge in edge list");
        }
    }
    net.edge_count_ = edges.size();
    return net;
}

bool Network::has_edge(NodeId u, NodeId v) const {
    const auto& nbrs = adjacency_.at(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> Network::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < adjacency_.size(); ++u) {
        for (const NodeId v : adjacency_[u]) {
            if (u < v) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

double Network::mean_degree() const noexcept {
    return adjacency_.empty() ? 0.0 : 2.0 * static_cast<double>(edge_count_) / static_cast<double>(adjacency_.size());
}

DegreeDistribution Network::degree_distribution() const {
    std::map<Degree, double> counts;
    for (const auto& nbrs : adjacency_) {
        if (!nbrs.empty()) {
            counts[static_cast<Degree>(nbrs.size())] += 1.0;
        }
    }
    if (counts.empty()) {
        throw std::invalid_argument("network has no edges");
    }
    return DegreeDistribution::from_weights({counts.begin(), counts.end()});
}

Network build_ba_network(std::size_t n, std::size_t m0, std::size_t m, Rng& rng) {
    if (m < 1 || m0 < m || n <= m0) {
        throw std::invalid_argument("BA network requires n > m0 >= m >= 1");
    }
    std::vector<Edge> edges;
    edges.reserve(m0 * (m0 - 1) / 2 + m * (n - m0));
    // Each node appears once per incident edge, so a uniform draw from this
    // list is a degree-proportional draw.
    std::vector<NodeId> endpoints;
    endpoints.reserve(2 * edges.capacity());
    for (NodeId u = 0; u < m0; ++u) {
        for (NodeId v = u + 1; v < m0; ++v) {
            edges.emplace_back(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    }
    std::vector<NodeId> targets;
    targets.reserve(m);
    for (auto v = static_cast<NodeId>(m0); v < n; ++v) {
        targets.clear();
        while (targets.size() < m) {
            const NodeId candidate = endpoints.empty()
                                         ? static_cast<NodeId>(uniform_index(rng, v))
                                         : endpoints[uniform_index(rng, endpoints.size())];
            if (std::find(targets.begin(), targets.end(), candidate) == targets.end()) {
                targets.push_back(candidate);
            }
        }
        for (const NodeId t : targets) {
            edges.emplace_back(t, v);
            endpoints.push_back(t);
            endpoints.push_back(v);
        }
    }
    return Network::from_edges(n, edges);
}

ConfigurationNetwork build_configuration_network(const DegreeDistribution& dist, std::size_t n, Rng& rng) {
    if (n < 2) {
        throw std::invalid_argument("configuration network requires n >= 2");
    }
    ConfigurationNetwork result;
    std::vector<Degree> degrees(n);
    std::uint64_t stub_sum = 0;
    for (auto& k : degrees) {
        k = dist.sample(rng);
        stub_sum += static_cast<std::uint64_t>(k);
    }
    while (stub_sum % 2 != 0) {
        if (result.parity_redraws == static_cast<std::size_t>(kParityRedrawLimit)) {
            throw GenerationError("cannot make the stub sum even: every redraw of the last degree kept it odd");
        }
        stub_sum -= static_cast<std::uint64_t>(degrees.back());
        degrees.back() = dist.sample(rng);
        stub_sum += static_cast<std::uint64_t>(degrees.back());
        ++result.parity_redraws;
    }

    std::vector<NodeId> pending;
    pending.reserve(stub_sum);
    for (NodeId v = 0; v < n; ++v) {
        pending.insert(pending.end(), static_cast<std::size_t>(degrees[v]), v);
    }

    std::vector<Edge> accepted;
    accepted.reserve(stub_sum / 2);
    std::unordered_set<std::uint64_t> present;
    present.reserve(stub_sum);
    std::vector<NodeId> rejected;

    for (int round = 0; !pending.empty(); ++round) {
        shuffle(pending.begin(), pending.end(), rng);
        rejected.clear();
        for (std::size_t i = 0; i + 1 < pending.size(); i += 2) {
            const NodeId a = pending[i];
            const NodeId b = pending[i + 1];
            if (a != b && present.insert(edge_key(a, b)).second) {
                accepted.emplace_back(a, b);
            } else {
                rejected.push_back(a);
                rejected.push_back(b);
            }
        }
        if (rejected.empty() || round == kConfigurationRematchRounds) {
            result.erased_edges = rejected.size() / 2;
            break;
        }
        // Break one accepted edge per illegal pair so the rematch is not
        // confined to the (possibly unmatchable) leftover stubs.
        const std::size_t to_free = std::min(rejected.size() / 2, accepted.size());
        for (std::size_t i = 0; i < to_free; ++i) {
            const auto j = uniform_index(rng, accepted.size());
            const auto [u, v] = accepted[j];
            present.erase(edge_key(u, v));
            rejected.push_back(u);
            rejected.push_back(v);
            accepted[j] = accepted.back();
            accepted.pop_back();
        }
        pending.swap(rejected);
    }

    result.network = Network::from_edges(n, accepted);
    return result;
}

void write_edge_list(std::ostream& out, const Network& net) {
    out << "# nodes=" << net.size() << '\n';
    for (const auto& [u, v] : net.edges()) {
        out << u << ' ' << v << '\n';
    }
}

Network read_edge_list(std::istream& in) {
    std::string line;
    std::size_t n = 0;
    bool have_header = false;
    std::vector<Edge> edges;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty()) {
            continue;
        }
        if (t.front() == '#') {
            constexpr std::string_view prefix = "# nodes=";
            if (!have_header && t.substr(0, prefix.size()) == prefix) {
                n = parse_uint(t.substr(prefix.size()));
                have_header = true;
            }
            continue;
        }
        if (!have_header) {
            throw std::invalid_argument("edge list must start with '# nodes=<N>'");
        }
        std::istringstream row{std::string(t)};
        std::uint64_t u = 0;
        std::uint64_t v = 0;
        if (!(row >> u >> v)) {
            throw std::invalid_argument("malformed edge on line " + std::to_string(line_no));
        }
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
    if (!have_header) {
        throw std::invalid_argument("edge list must start with '# nodes=<N>'");
    }
    return Network::from_edges(n, edges);
}

}  // namespace rumor
