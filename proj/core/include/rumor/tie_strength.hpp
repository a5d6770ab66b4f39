#pragma once

#include <stdexcept>

#include "rumor/degree_distribution.hpp"
#include "rumor/network.hpp"

namespace rumor {

/// Edge weight w_ij = b (k_i k_j)^beta, derived from endpoint degrees.
struct TieStrengthParams {
    double beta = 0.0;
    double b = 1.0;

    void validate() const {
        if (!(b > 0.0)) {
            throw std::invalid_argument("tie-strength prefactor b must be positive");
        }
    }
};

double tie_strength(Degree k_i, Degree k_j, const TieStrengthParams& p);

/// Mean strength of a degree-k node on an uncorrelated network:
/// S_k = b k^{1+beta} <k^{1+beta}> / <k>.
double node_strength(const DegreeDistribution& dist, Degree k, const TieStrengthParams& p);

/// Graph-local strength S_i = sum over neighbours j of w_ij.
double graph_node_strength(const Network& net, NodeId i, const TieStrengthParams& p);

}  // namespace rumor
