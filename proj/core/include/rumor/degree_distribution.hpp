#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rumor/random.hpp"

namespace rumor {

using Degree = std::int32_t;

/// Normalized P(k) on a finite, strictly increasing support of positive
/// degrees. Probabilities sum to one within 1e-12.
class DegreeDistribution {
public:
    /// Builds from (degree, weight) pairs. Weights are renormalized; degrees
    /// must be positive and unique, weights nonnegative with a positive sum.
    static DegreeDistribution from_weights(std::vector<std::pair<Degree, double>> weights);

    /// Point mass at `k`.
    static DegreeDistribution point_mass(Degree k);

    std::span<const Degree> support() const noexcept { return support_; }
    std::span<const double> probabilities() const noexcept { return prob_; }
    std::size_t size() const noexcept { return support_.size(); }

    Degree k_min() const noexcept { return support_.front(); }
    Degree k_max() const noexcept { return support_.back(); }

    /// P(k); zero off the support.
    double prob(Degree k) const noexcept;
    /// Position of `k` in `support()`, if present.
    std::optional<std::size_t> index_of(Degree k) const noexcept;

    /// Power-law exponent for distributions made by sample_powerlaw_distribution.
    std::optional<double> gamma() const noexcept { return gamma_; }
    /// Exponent convention P(k) ~ k^{-2-gamma'} used by the SIS cutoff
    /// literature; gamma = gamma' + 2.
    std::optional<double> gamma_prime() const noexcept {
        return gamma_ ? std::optional<double>(*gamma_ - 2.0) : std::nullopt;
    }
    /// Network size the hard cutoff was computed for, if any.
    std::optional<std::uint64_t> network_size() const noexcept { return network_size_; }
    /// Unfloored cutoff k_min * N^{1/(gamma-1)}, if any.
    std::optional<double> continuum_k_max() const noexcept { return continuum_k_max_; }

    /// Sum over the support of k^q P(k).
    double moment(double q) const;

    /// Samples one degree by inverse-CDF lookup.
    Degree sample(Rng& rng) const;

private:
    DegreeDistribution() = default;
    void finish();

    std::vector<Degree> support_;
    std::vector<double> prob_;
    std::vector<double> cdf_;
    std::optional<double> gamma_;
    std::optional<std::uint64_t> network_size_;
    std::optional<double> continuum_k_max_;

    friend DegreeDistribution sample_powerlaw_distribution(double gamma, Degree k_min, std::uint64_t n);
};

/// Hard-cutoff scale-free distribution: P(k) ~ k^{-gamma} on
/// {k_min, ..., floor(k_min * N^{1/(gamma-1)})}, renormalized after truncation.
/// Throws std::invalid_argument for gamma outside (2, 3], k_min < 1 or N < 2.
DegreeDistribution sample_powerlaw_distribution(double gamma, Degree k_min, std::uint64_t n);

/// Sum_k k^q P(k).
double degree_moment(const DegreeDistribution& dist, double q);

/// Total-variation distance between two distributions (union of supports).
double total_variation(const DegreeDistribution& a, const DegreeDistribution& b);

/// CSV `k,p`, one row per support degree, round-trip precision.
void write_distribution_csv(std::ostream& out, const DegreeDistribution& dist);
DegreeDistribution read_distribution_csv(std::istream& in);

}  // namespace rumor
