#include "rumor/model_params.hpp"

#include <cmath>
#include <stdexcept>

namespace rumor {

void ModelParams::validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("spreadness exponent alpha must lie in (0, 1]");
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("stifling rate sigma must be positive");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("transmission rate lambda must be nonnegative");
    }
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("contact-stifling rate delta must be nonnegative");
    }
    if (!std::isfinite(tie.beta)) {
        throw std::invalid_argument("tie exponent beta must be finite");
    }
    tie.validate();
}

}  // namespace rumor
