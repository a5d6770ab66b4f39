#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rumor/degree_distribution.hpp"
#include "rumor/inoculation.hpp"

namespace rumor {

/// Critical transmission rate. An empty value means no outbreak is possible at
/// any rate (every potential spreader is inoculated).
using CriticalRate = std::optional<double>;

/// Large-N behaviour of the continuum threshold on a hard-cutoff network,
/// decided by the sign of alpha + beta + 2 - gamma.
enum class ThresholdRegime {
    finite_independent,  // alpha + beta + 2 < gamma
    logarithmic,         // alpha + beta + 2 == gamma
    vanishing,           // alpha + beta + 2 > gamma
};

std::string_view to_string(ThresholdRegime regime);

ThresholdRegime classify_regime(double gamma, double alpha, double beta);

/// Continuum threshold of the modified model on a hard-cutoff scale-free
/// network.
///
/// `value` is the leading large-cutoff form of the moment-integral ratio,
/// which is what the size-scaling laws refer to: a constant for
/// finite_independent, ~ 1/ln(k_max/k_min) for logarithmic and a power of
/// k_max/k_min for vanishing. `exact` is the ratio of integrals itself at the
/// given N, with the removable singularities at zero exponent taken as
/// logarithmic limits.
struct ThresholdReport {
    double value = 0.0;
    double exact = 0.0;
    ThresholdRegime regime = ThresholdRegime::finite_independent;
    std::string_view formula;
};

/// Discrete-sum threshold <k^{beta+1}> / <k^{alpha+beta+1}>.
double threshold_modified(const DegreeDistribution& dist, double alpha, double beta);

/// Classical (alpha = 1, beta = 0) continuum threshold with cutoff
/// k_max = k_min N^{1/(gamma-1)}: ((3-gamma)/((gamma-2) k_min)) N^{(gamma-3)/(gamma-1)}
/// for gamma < 3 and 2 / (k_min ln N) at gamma = 3.
double threshold_classic_bounded(double gamma, Degree k_min, std::uint64_t n);

ThresholdReport threshold_modified_bounded(double gamma, Degree k_min, std::uint64_t n, double alpha, double beta);

/// lambda_c / (1 - g); empty at g = 1.
CriticalRate threshold_random_inoc(double lambda_c, double g);

/// <k^{beta+1}> / (<k^{alpha+beta+1}> - <g_k k^{alpha+beta+1}>); empty when the
/// denominator is not positive.
CriticalRate threshold_targeted_inoc(const DegreeDistribution& dist, double alpha, double beta,
                                     const InoculationPlan& plan);

/// Covariance of g_k and k^{alpha+beta+1} under P(k). Positive for step
/// profiles that immunize the high-degree tail.
double inoculation_covariance(const DegreeDistribution& dist, double alpha, double beta, const InoculationPlan& plan);

inline constexpr double kEmpiricalThresholdWidth = 1e-3;

/// Bisection for the onset of final_size(lambda) > epsilon on [lo, hi]. Needs
/// final_size(lo) <= epsilon < final_size(hi) (BracketError otherwise); returns
/// the midpoint of a bracket narrower than 1e-3.
double empirical_threshold(const std::function<double(double)>& final_size, double epsilon, double lo, double hi);

/// One row of the threshold sweep export.
struct ThresholdRow {
    std::string param;
    double value = 0.0;
    CriticalRate lambda_c;
    ThresholdRegime regime = ThresholdRegime::finite_independent;
};

/// CSV `param,value,lambda_c,regime`; an unreachable threshold is written as
/// `none`.
void write_threshold_csv(std::ostream& out, const std::vector<ThresholdRow>& rows,
                         const std::vector<std::string>& comments = {});

}  // namespace rumor
