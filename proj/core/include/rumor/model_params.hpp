#pragma once

#include "rumor/tie_strength.hpp"

namespace rumor {

/// Rates and exponents of the rumor dynamics.
///
/// `alpha` sets the spreadness k^alpha (contacts per unit time of a degree-k
/// spreader), `tie.beta` the degree dependence of tie strength. `delta` is the
/// contact-stifling rate and is only used by the classical model.
struct ModelParams {
    double lambda = 0.0;
    double alpha = 1.0;
    double sigma = 1.0;
    double delta = 0.0;
    TieStrengthParams tie{};

    double beta() const noexcept { return tie.beta; }

    /// Throws std::invalid_argument unless 0 < alpha <= 1, sigma > 0,
    /// lambda >= 0, delta >= 0 and b > 0.
    void validate() const;
};

}  // namespace rumor
