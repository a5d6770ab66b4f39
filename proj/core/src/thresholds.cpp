#include "rumor/thresholds.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "rumor/errors.hpp"
#include "rumor/table.hpp"

namespace rumor {

namespace {

constexpr double kExponentEpsilon = 1e-12;

/// Integral of x^{e-1} over [1, r], given L = ln r.
double unit_power_integral(double e, double log_r) {
    if (std::abs(e) < kExponentEpsilon) {
        return log_r;
    }
    return std::expm1(e * log_r) / e;
}

/// Leading term of unit_power_integral as r grows.
double unit_power_integral_leading(double e, double log_r) {
    if (std::abs(e) < kExponentEpsilon) {
        return log_r;
    }
    return e < 0.0 ? -1.0 / e : std::exp(e * log_r) / e;
}

void check_gamma(double gamma) {
    if (!(gamma > 2.0 && gamma <= 3.0)) {
        throw std::invalid_argument("power-law exponent must lie in (2, 3]");
    }
}

}  // namespace

std::string_view to_string(ThresholdRegime regime) {
    switch (regime) {
        case ThresholdRegime::finite_independent:
            return "finite-independent";
        case ThresholdRegime::logarithmic:
            return "logarithmic";
        case ThresholdRegime::vanishing:
            return "vanishing";
    }
    return "finite-independent";
}

ThresholdRegime classify_regime(double gamma, double alpha, double beta) {
    const double c = alpha + beta + 2.0 - gamma;
    if (std::abs(c) < kExponentEpsilon) {
        return ThresholdRegime::logarithmic;
    }
    return c < 0.0 ? ThresholdRegime::finite_independent : ThresholdRegime::vanishing;
}

double threshold_modified(const DegreeDistribution& dist, double alpha, double beta) {
    return dist.moment(beta + 1.0) / dist.moment(alpha + beta + 1.0);
}

double threshold_classic_bounded(double gamma, Degree k_min, std::uint64_t n) {
    check_gamma(gamma);
    if (k_min < 1 || n < 2) {
        throw std::invalid_argument("bounded threshold needs k_min >= 1 and N >= 2");
    }
    const double km = static_cast<double>(k_min);
    const double nd = static_cast<double>(n);
    if (std::abs(gamma - 3.0) < kExponentEpsilon) {
        return 2.0 / (km * std::log(nd));
    }
    return (3.0 - gamma) / ((gamma - 2.0) * km) * std::pow(nd, (gamma - 3.0) / (gamma - 1.0));
}

ThresholdReport threshold_modified_bounded(double gamma, Degree k_min, std::uint64_t n, double alpha, double beta) {
    check_gamma(gamma);
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("spreadness exponent alpha must lie in (0, 1]");
    }
    if (k_min < 1 || n < 2) {
        throw std::invalid_argument("bounded threshold needs k_min >= 1 and N >= 2");
    }
    // Substituting x = k / k_min turns both moment integrals into integrals of
    // x^{e-1} over [1, k_max/k_min], leaving a k_min^{-alpha} prefactor.
    const double log_r = std::log(static_cast<double>(n)) / (gamma - 1.0);
    const double numerator_exp = beta - gamma + 2.0;
    const double denominator_exp = alpha + beta - gamma + 2.0;
    const double prefactor = std::pow(static_cast<double>(k_min), -alpha);

    ThresholdReport report;
    report.regime = classify_regime(gamma, alpha, beta);
    report.exact = prefactor * unit_power_integral(numerator_exp, log_r) / unit_power_integral(denominator_exp, log_r);
    switch (report.regime) {
        case ThresholdRegime::finite_independent:
            report.value = prefactor * denominator_exp / numerator_exp;
            report.formula = "bounded-finite";
            break;
        case ThresholdRegime::logarithmic:
            report.value = prefactor / (alpha * log_r);
            report.formula = "bounded-logarithmic";
            break;
        case ThresholdRegime::vanishing:
            report.value = prefactor * unit_power_integral_leading(numerator_exp, log_r) /
                           unit_power_integral_leading(denominator_exp, log_r);
            report.formula = "bounded-vanishing";
            break;
    }
    return report;
}

CriticalRate threshold_random_inoc(double lambda_c, double g) {
    if (!(g >= 0.0 && g <= 1.0)) {
        throw std::invalid_argument("inoculation fraction g must lie in [0, 1]");
    }
    if (g == 1.0) {
        return std::nullopt;
    }
    return lambda_c / (1.0 - g);
}

CriticalRate threshold_targeted_inoc(const DegreeDistribution& dist, double alpha, double beta,
                                     const InoculationPlan& plan) {
    const auto g = plan.profile_for(dist);
    const auto ks = dist.support();
    const auto ps = dist.probabilities();
    double denominator = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        denominator += (1.0 - g[i]) * std::pow(static_cast<double>(ks[i]), alpha + beta + 1.0) * ps[i];
    }
    if (!(denominator > 0.0)) {
        return std::nullopt;
    }
    return dist.moment(beta + 1.0) / denominator;
}

double inoculation_covariance(const DegreeDistribution& dist, double alpha, double beta, const InoculationPlan& plan) {
    const auto g = plan.profile_for(dist);
    const auto ks = dist.support();
    const auto ps = dist.probabilities();
    const double q = alpha + beta + 1.0;
    const double mean_kq = dist.moment(q);
    double mean_g = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        mean_g += g[i] * ps[i];
    }
    double cov = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        cov += (g[i] - mean_g) * (std::pow(static_cast<double>(ks[i]), q) - mean_kq) * ps[i];
    }
    return cov;
}

double empirical_threshold(const std::function<double(double)>& final_size, double epsilon, double lo, double hi) {
    if (!(lo < hi)) {
        throw std::invalid_argument("empirical threshold needs lo < hi");
    }
    const double r_lo = final_size(lo);
    const double r_hi = final_size(hi);
    if (!(r_lo <= epsilon && epsilon < r_hi)) {
        throw BracketError("onset level " + format_double(epsilon) + " is not bracketed: R(lo) = " +
                           format_double(r_lo) + ", R(hi) = " + format_double(r_hi));
    }
    while (hi - lo >= kEmpiricalThresholdWidth) {
        const double mid = 0.5 * (lo + hi);
        if (final_size(mid) > epsilon) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

void write_threshold_csv(std::ostream& out, const std::vector<ThresholdRow>& rows,
                         const std::vector<std::string>& comments) {
    Table t;
    t.comments = comments;
    t.columns = {"param", "value", "lambda_c", "regime"};
    for (const auto& r : rows) {
        t.rows.push_back({r.param, format_double(r.value), r.lambda_c ? format_double(*r.lambda_c) : "none",
                          std::string(to_string(r.regime))});
    }
    write_csv(out, t);
}

}  // namespace rumor
