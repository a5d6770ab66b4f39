#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "rumor/inoculation.hpp"
#include "rumor/network.hpp"

using namespace rumor;

namespace {

double profile_mean(const InoculationPlan& plan, const DegreeDistribution& d) {
    const auto g = plan.profile_for(d);
    double m = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) m += g[i] * d.probabilities()[i];
    return m;
}

}  // namespace

TEST_CASE("random plans") {
    auto zero = make_random_plan(0.0);
    CHECK(zero.g() == 0.0);
    CHECK(zero.fraction_at(7) == 0.0);
    auto p = make_random_plan(0.3);
    CHECK(p.kind() == InoculationKind::random);
    CHECK(p.g() == 0.3);
    CHECK(p.fraction_at(2) == 0.3);
    CHECK_THROWS_AS(make_random_plan(1.2), std::invalid_argument);
    CHECK_THROWS_AS(make_random_plan(-0.1), std::invalid_argument);
}

TEST_CASE("targeted cutoff on a two-degree distribution") {
    auto d = DegreeDistribution::from_weights({{2, 0.5}, {4, 0.5}});
    auto p = make_targeted_plan(d, 0.25);
    CHECK(p.k_t() == 4);
    CHECK(p.f() == doctest::Approx(0.5));
    CHECK(p.fraction_at(2) == 0.0);
    CHECK(p.fraction_at(4) == doctest::Approx(0.5));
}

TEST_CASE("targeted extremes") {
    auto d = sample_powerlaw_distribution(2.4, 2, 10000);
    auto none = make_targeted_plan(d, 0.0);
    for (double g : none.profile_for(d)) CHECK(g == 0.0);
    auto all = make_targeted_plan(d, 1.0);
    CHECK(all.k_t() == d.k_min());
    CHECK(all.f() == 1.0);
    for (double g : all.profile_for(d)) CHECK(g == 1.0);
    CHECK_THROWS_AS(make_targeted_plan(d, 1.5), std::invalid_argument);
}

TEST_CASE("targeted profile shape and mean") {
    auto d = sample_powerlaw_distribution(2.4, 2, 100000);
    for (double g_bar : {0.01, 0.05, 0.1, 0.25, 0.5, 0.9}) {
        auto p = make_targeted_plan(d, g_bar);
        CHECK(std::fabs(profile_mean(p, d) - g_bar) < 1e-9);
        for (Degree k : d.support()) {
            if (k > p.k_t()) CHECK(p.fraction_at(k) == 1.0);
            if (k < p.k_t()) CHECK(p.fraction_at(k) == 0.0);
        }
        CHECK(p.f() >= 0.0);
        CHECK(p.f() <= 1.0);
    }
}

TEST_CASE("profile requires the original support") {
    auto d = sample_powerlaw_distribution(2.4, 2, 1000);
    auto p = make_targeted_plan(d, 0.1);
    CHECK_THROWS_AS(p.profile_for(sample_powerlaw_distribution(2.4, 3, 1000)), std::invalid_argument);
}

TEST_CASE("apply_plan") {
    Rng rng(2);
    auto net = build_ba_network(10000, 5, 3, rng);
    CHECK(apply_plan(net, InoculationPlan::none(), rng).empty());

    auto everyone = InoculationPlan::targeted(net.degree_distribution().support(), 1, 1.0, 1.0);
    CHECK(apply_plan(net, everyone, rng).size() == net.size());

    const auto hit = apply_plan(net, make_random_plan(0.5), rng);
    CHECK(std::fabs(static_cast<double>(hit.size()) - 5000.0) < 150.0);
    CHECK(std::is_sorted(hit.begin(), hit.end()));

    const std::vector<NodeId> excluded{0, 1, 2};
    const auto all_but = apply_plan(net, make_random_plan(1.0), rng, excluded);
    CHECK(all_but.size() == net.size() - 3);
    CHECK(!std::binary_search(all_but.begin(), all_but.end(), NodeId{1}));
}

TEST_CASE("targeted apply takes hubs first") {
    Rng rng(4);
    auto net = build_ba_network(5000, 4, 2, rng);
    auto dist = net.degree_distribution();
    auto plan = make_targeted_plan(dist, 0.1);
    const auto chosen = apply_plan(net, plan, rng);
    std::size_t above = 0, at = 0;
    for (NodeId v = 0; v < net.size(); ++v) {
        if (net.degree(v) > plan.k_t()) ++above;
        if (net.degree(v) == plan.k_t()) ++at;
    }
    CHECK(chosen.size() == above + static_cast<std::size_t>(std::llround(plan.f() * static_cast<double>(at))));
    CHECK(static_cast<double>(chosen.size()) / static_cast<double>(net.size()) == doctest::Approx(0.1).epsilon(0.01).scale(0));
    for (NodeId v : chosen) CHECK(net.degree(v) >= plan.k_t());
}

TEST_CASE("plan serialization") {
    auto d = sample_powerlaw_distribution(2.4, 2, 1000);
    for (const auto& p : {make_random_plan(0.3), make_targeted_plan(d, 0.2), InoculationPlan::none()}) {
        std::stringstream s;
        write_plan(s, p);
        auto back = read_plan(s);
        CHECK(back.kind() == (p.kind() == InoculationKind::none ? back.kind() : p.kind()));
        CHECK(back.mean_fraction() == doctest::Approx(p.mean_fraction()));
        CHECK(back.k_t() == p.k_t());
        CHECK(back.f() == doctest::Approx(p.f()));
    }
}
