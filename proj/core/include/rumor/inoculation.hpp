#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "rumor/degree_distribution.hpp"
#include "rumor/network.hpp"
#include "rumor/random.hpp"

namespace rumor {

enum class InoculationKind { none, random, targeted };

std::string_view to_string(InoculationKind kind);

/// Who is immunized before the rumor starts.
///
/// Random plans immunize each node with probability g. Targeted plans follow a
/// step profile over degree: g_k = 1 above the cutoff k_t, f at k_t and 0
/// below, with mean sum_k g_k P(k) = g_bar.
class InoculationPlan {
public:
    InoculationPlan() = default;

    static InoculationPlan none() { return {}; }
    static InoculationPlan random(double g);
    /// Step profile on `support`; throws if f is outside [0, 1].
    static InoculationPlan targeted(std::span<const Degree> support, Degree k_t, double f, double g_bar);

    InoculationKind kind() const noexcept { return kind_; }
    /// Random fraction g (0 for other kinds).
    double g() const noexcept { return g_; }
    Degree k_t() const noexcept { return k_t_; }
    double f() const noexcept { return f_; }
    /// Mean inoculated fraction: g for random plans, g_bar for targeted.
    double mean_fraction() const noexcept { return kind_ == InoculationKind::targeted ? g_bar_ : g_; }

    /// g_k for any degree.
    double fraction_at(Degree k) const noexcept;

    /// g_k aligned with `dist.support()`. For targeted plans the support must
    /// equal the one the plan was built on (std::invalid_argument otherwise).
    std::vector<double> profile_for(const DegreeDistribution& dist) const;

    /// Degrees the targeted profile was built on (empty for other kinds).
    std::span<const Degree> support() const noexcept { return support_; }

private:
    InoculationKind kind_ = InoculationKind::none;
    double g_ = 0.0;
    Degree k_t_ = 0;
    double f_ = 0.0;
    double g_bar_ = 0.0;
    std::vector<Degree> support_;
};

InoculationPlan make_random_plan(double g);

/// Targeted plan whose profile has mean g_bar under `dist`: k_t is the largest
/// degree whose upper tail (k >= k_t) still carries at least g_bar, and f fills
/// the remainder at k_t.
InoculationPlan make_targeted_plan(const DegreeDistribution& dist, double g_bar);

/// Node-level realization, returned as sorted node ids. Random: each node
/// independently with probability g. Targeted: every node of degree > k_t and a
/// uniformly chosen round(f * n_kt) of the n_kt nodes of degree k_t. Nodes in
/// `excluded` (sorted) are never chosen.
std::vector<NodeId> apply_plan(const Network& net, const InoculationPlan& plan, Rng& rng,
                               std::span<const NodeId> excluded = {});

/// Targeted plans as CSV `k,g_k`; random and none as a single `g=<value>` line.
void write_plan(std::ostream& out, const InoculationPlan& plan);
InoculationPlan read_plan(std::istream& in);

}  // namespace rumor
