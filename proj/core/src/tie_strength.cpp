#include "rumor/tie_strength.hpp"

#include <cmath>
#include <string>

namespace rumor {

double tie_strength(Degree k_i, Degree k_j, const TieStrengthParams& p) {
    if (k_i < 1 || k_j < 1) {
        throw std::invalid_argument("tie strength needs positive degrees");
    }
    // The product is formed first so that the result is exactly symmetric.
    const double product = static_cast<double>(k_i) * static_cast<double>(k_j);
    return p.b * std::pow(product, p.beta);
}

double node_strength(const DegreeDistribution& dist, Degree k, const TieStrengthParams& p) {
    if (!dist.index_of(k)) {
        throw std::invalid_argument("degree " + std::to_string(k) + " is not in the distribution support");
    }
    const double kd = static_cast<double>(k);
    return p.b * std::pow(kd, 1.0 + p.beta) * dist.moment(1.0 + p.beta) / dist.moment(1.0);
}

double graph_node_strength(const Network& net, NodeId i, const TieStrengthParams& p) {
    const Degree ki = net.degree(i);
    double s = 0.0;
    for (const NodeId j : net.neighbors(i)) {
        s += tie_strength(ki, net.degree(j), p);
    }
    return s;
}

}  // namespace rumor
