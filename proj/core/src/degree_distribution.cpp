#include "rumor/degree_distribution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "rumor/table.hpp"

namespace rumor {

DegreeDistribution DegreeDistribution::from_weights(std::vector<std::pair<Degree, double>> weights) {
    if (weights.empty()) {
        throw std::invalid_argument("degree distribution needs a nonempty support");
    }
    std::sort(weights.begin(), weights.end());
    DegreeDistribution d;
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const auto [k, w] = weights[i];
        if (k < 1) {
            throw std::invalid_argument("degrees must be positive, got " + std::to_string(k));
        }
        if (i > 0 && weights[i - 1].first == k) {
            throw std::invalid_argument("duplicate degree " + std::to_string(k));
        }
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw std::invalid_argument("weights must be finite and nonnegative");
        }
        total += w;
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("weights must have a positive sum");
    }
    d.support_.reserve(weights.size());
    d.prob_.reserve(weights.size());
    for (const auto& [k, w] : weights) {
        d.support_.push_back(k);
        d.prob_.push_back(w / total);
    }
    d.finish();
    return d;
}

DegreeDistribution DegreeDistribution::point_mass(Degree k) {
    return from_weights({{k, 1.0}});
}

void DegreeDistribution::finish() {
    cdf_.resize(prob_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < prob_.size(); ++i) {
        acc += prob_[i];
        cdf_[i] = acc;
    }
    cdf_.back() = 1.0;
}

double DegreeDistribution::prob(Degree k) const noexcept {
    const auto idx = index_of(k);
    return idx ? prob_[*idx] : 0.0;
}

std::optional<std::size_t> DegreeDistribution::index_of(Degree k) const noexcept {
    const auto it = std::lower_bound(support_.begin(), support_.end(), k);
    if (it == support_.end() || *it != k) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - support_.begin());
}

double DegreeDistribution::moment(double q) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) {
        acc += std::pow(static_cast<double>(support_[i]), q) * prob_[i];
    }
    return acc;
}

Degree DegreeDistribution::sample(Rng& rng) const {
    const double u = uniform01(rng);
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) {
        --it;
    }
    return support_[static_cast<std::size_t>(it - cdf_.begin())];
}

DegreeDistribution sample_powerlaw_distribution(double gamma, Degree k_min, std::uint64_t n) {
    if (!(gamma > 2.0 && gamma <= 3.0)) {
        throw std::invalid_argument("power-law exponent must lie in (2, 3]");
    }
    if (k_min < 1) {
        throw std::invalid_argument("k_min must be at least 1");
    }
    if (n < 2) {
        throw std::invalid_argument("network size must be at least 2");
    }
    const double cutoff = static_cast<double>(k_min) * std::pow(static_cast<double>(n), 1.0 / (gamma - 1.0));
    const auto k_max = static_cast<Degree>(std::floor(cutoff));
    if (k_max < k_min) {
        throw std::invalid_argument("cutoff k_max falls below k_min");
    }
    std::vector<std::pair<Degree, double>> weights;
    weights.reserve(static_cast<std::size_t>(k_max - k_min + 1));
    for (Degree k = k_min; k <= k_max; ++k) {
        weights.emplace_back(k, std::pow(static_cast<double>(k), -gamma));
    }
    auto d = DegreeDistribution::from_weights(std::move(weights));
    d.gamma_ = gamma;
    d.network_size_ = n;
    d.continuum_k_max_ = cutoff;
    return d;
}

double degree_moment(const DegreeDistribution& dist, double q) {
    return dist.moment(q);
}

double total_variation(const DegreeDistribution& a, const DegreeDistribution& b) {
    const auto sa = a.support();
    const auto sb = b.support();
    const auto pa = a.probabilities();
    const auto pb = b.probabilities();
    std::size_t i = 0;
    std::size_t j = 0;
    double acc = 0.0;
    while (i < sa.size() || j < sb.size()) {
        if (j == sb.size() || (i < sa.size() && sa[i] < sb[j])) {
            acc += pa[i++];
        } else if (i == sa.size() || sb[j] < sa[i]) {
            acc += pb[j++];
        } else {
            acc += std::abs(pa[i++] - pb[j++]);
        }
    }
    return 0.5 * acc;
}

void write_distribution_csv(std::ostream& out, const DegreeDistribution& dist) {
    out << "k,p\n";
    const auto ks = dist.support();
    const auto ps = dist.probabilities();
    for (std::size_t i = 0; i < ks.size(); ++i) {
        out << ks[i] << ',' << format_double(ps[i]) << '\n';
    }
}

DegreeDistribution read_distribution_csv(std::istream& in) {
    std::string line;
    std::vector<std::pair<Degree, double>> weights;
    bool header_seen = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!header_seen) {
            if (line != "k,p") {
                throw std::invalid_argument("expected header 'k,p'");
            }
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("malformed row on line " + std::to_string(line_no));
        }
        weights.emplace_back(parse_int(line.substr(0, comma)), parse_double(line.substr(comma + 1)));
    }
    return DegreeDistribution::from_weights(std::move(weights));
}

}  // namespace rumor
