#include "rumor/inoculation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <iterator>
#include <sstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "rumor/table.hpp"

namespace rumor {

std::string_view to_string(InoculationKind kind) {
    switch (kind) {
        case InoculationKind::none:
            return "none";
        case InoculationKind::random:
            return "random";
        case InoculationKind::targeted:
            return "targeted";
    }
    return "none";
}

InoculationPlan InoculationPlan::random(double g) {
    if (!(g >= 0.0 && g <= 1.0)) {
        throw std::invalid_argument("inoculation fraction g must lie in [0, 1]");
    }
    InoculationPlan p;
    p.kind_ = InoculationKind::random;
    p.g_ = g;
    return p;
}

InoculationPlan InoculationPlan::targeted(std::span<const Degree> support, Degree k_t, double f, double g_bar) {
    if (!(f >= 0.0 && f <= 1.0)) {
        throw std::invalid_argument("targeted fraction f must lie in [0, 1]");
    }
    if (!(g_bar >= 0.0 && g_bar <= 1.0)) {
        throw std::invalid_argument("mean inoculation fraction must lie in [0, 1]");
    }
    InoculationPlan p;
    p.kind_ = InoculationKind::targeted;
    p.k_t_ = k_t;
    p.f_ = f;
    p.g_bar_ = g_bar;
    p.support_.assign(support.begin(), support.end());
    return p;
}

double InoculationPlan::fraction_at(Degree k) const noexcept {
    switch (kind_) {
        case InoculationKind::none:
            return 0.0;
        case InoculationKind::random:
            return g_;
        case InoculationKind::targeted:
            return k > k_t_ ? 1.0 : (k == k_t_ ? f_ : 0.0);
    }
    return 0.0;
}

std::vector<double> InoculationPlan::profile_for(const DegreeDistribution& dist) const {
    if (kind_ == InoculationKind::targeted &&
        !std::equal(support_.begin(), support_.end(), dist.support().begin(), dist.support().end())) {
        throw std::invalid_argument("targeted plan was built on a different degree support");
    }
    std::vector<double> out;
    out.reserve(dist.size());
    for (const Degree k : dist.support()) {
        out.push_back(fraction_at(k));
    }
    return out;
}

InoculationPlan make_random_plan(double g) {
    return InoculationPlan::random(g);
}

InoculationPlan make_targeted_plan(const DegreeDistribution& dist, double g_bar) {
    if (!(g_bar >= 0.0 && g_bar <= 1.0)) {
        throw std::invalid_argument("mean inoculation fraction must lie in [0, 1]");
    }
    const auto ks = dist.support();
    const auto ps = dist.probabilities();
    if (g_bar == 0.0) {
        return InoculationPlan::targeted(ks, ks.back(), 0.0, 0.0);
    }
    if (g_bar == 1.0) {
        return InoculationPlan::targeted(ks, ks.front(), 1.0, 1.0);
    }
    // Walk down from the top degree, accumulating the tail above the candidate.
    double above = 0.0;
    for (std::size_t i = ks.size(); i-- > 0;) {
        const double with_k = above + ps[i];
        if (with_k >= g_bar || i == 0) {
            const double f = std::clamp((g_bar - above) / ps[i], 0.0, 1.0);
            return InoculationPlan::targeted(ks, ks[i], f, g_bar);
        }
        above = with_k;
    }
    return InoculationPlan::targeted(ks, ks.front(), 1.0, g_bar);
}

std::vector<NodeId> apply_plan(const Network& net, const InoculationPlan& plan, Rng& rng,
                               std::span<const NodeId> excluded) {
    const auto is_excluded = [&](NodeId v) { return std::binary_search(excluded.begin(), excluded.end(), v); };
    std::vector<NodeId> chosen;
    switch (plan.kind()) {
        case InoculationKind::none:
            break;
        case InoculationKind::random:
            for (NodeId v = 0; v < net.size(); ++v) {
                // Draw for every node so the stream does not depend on exclusions.
                const bool hit = bernoulli(rng, plan.g());
                if (hit && !is_excluded(v)) {
                    chosen.push_back(v);
                }
            }
            break;
        case InoculationKind::targeted: {
            std::vector<NodeId> at_cutoff;
            for (NodeId v = 0; v < net.size(); ++v) {
                if (is_excluded(v)) {
                    continue;
                }
                const Degree k = net.degree(v);
                if (k > plan.k_t()) {
                    chosen.push_back(v);
                } else if (k == plan.k_t()) {
                    at_cutoff.push_back(v);
                }
            }
            const auto take = static_cast<std::size_t>(std::llround(plan.f() * static_cast<double>(at_cutoff.size())));
            shuffle(at_cutoff.begin(), at_cutoff.end(), rng);
            chosen.insert(chosen.end(), at_cutoff.begin(), at_cutoff.begin() + static_cast<std::ptrdiff_t>(take));
            std::sort(chosen.begin(), chosen.end());
            break;
        }
    }
    return chosen;
}

void write_plan(std::ostream& out, const InoculationPlan& plan) {
    if (plan.kind() != InoculationKind::targeted) {
        out << "g=" << format_double(plan.g()) << '\n';
        return;
    }
    out << "# k_t=" << plan.k_t() << " f=" << format_double(plan.f()) << " g_bar=" << format_double(plan.mean_fraction())
        << '\n';
    out << "k,g_k\n";
    for (const Degree k : plan.support()) {
        out << k << ',' << format_double(plan.fraction_at(k)) << '\n';
    }
}

InoculationPlan read_plan(std::istream& in) {
    std::string first;
    while (std::getline(in, first)) {
        const auto t = trim(first);
        if (t.empty()) {
            continue;
        }
        if (t.substr(0, 2) == "g=") {
            const double g = parse_double(t.substr(2));
            return g == 0.0 ? InoculationPlan::none() : InoculationPlan::random(g);
        }
        break;
    }
    // Targeted: rebuild k_t and f from the step profile.
    std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::istringstream body(first + "\n" + rest);
    const Table t = read_csv(body);
    if (t.columns != std::vector<std::string>{"k", "g_k"}) {
        throw std::invalid_argument("targeted plan must have header 'k,g_k'");
    }
    std::vector<Degree> support;
    std::vector<double> g;
    for (const auto& row : t.rows) {
        support.push_back(static_cast<Degree>(parse_int(row[0])));
        g.push_back(parse_double(row[1]));
    }
    if (support.empty()) {
        throw std::invalid_argument("targeted plan has no rows");
    }
    // k_t is the lowest degree with positive g_k; a profile of zeros puts it at the top.
    std::size_t cut = support.size() - 1;
    double f = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (g[i] > 0.0) {
            cut = i;
            f = g[i];
            break;
        }
    }
    for (std::size_t i = cut + 1; i < support.size(); ++i) {
        if (g[i] != 1.0) {
            throw std::invalid_argument("targeted profile is not a step function");
        }
    }
    double g_bar = 0.0;
    for (const auto& c : t.comments) {
        const auto pos = c.find("g_bar=");
        if (pos != std::string::npos) {
            g_bar = parse_double(std::string_view(c).substr(pos + 6));
        }
    }
    return InoculationPlan::targeted(support, support[cut], f, g_bar);
}

}  // namespace rumor
