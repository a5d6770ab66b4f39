#include <cmath>
#include <sstream>

#include "doctest.h"
#include "rumor/errors.hpp"
#include "rumor/meanfield.hpp"
#include "rumor/table.hpp"

using namespace rumor;

namespace {

ModelParams params(double lambda, double alpha, double beta, double sigma = 1.0) {
    ModelParams p;
    p.lambda = lambda;
    p.alpha = alpha;
    p.sigma = sigma;
    p.tie.beta = beta;
    return p;
}

// Root of x = 1 - exp(-a x) on (0, 1] by plain bisection.
double bisect_root(double a) {
    double lo = 1e-9, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid - 1.0 + std::exp(-a * mid) < 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

DegreeDistribution two_four() { return DegreeDistribution::from_weights({{2, 2.0}, {4, 1.0}}); }

}  // namespace

TEST_CASE("no spreaders, no change") {
    auto d = two_four();
    auto s = DegreeClassState::seeded(d, 0.0);
    auto der = derivatives_modified(s, d, params(0.7, 0.5, -0.3));
    for (std::size_t i = 0; i < d.size(); ++i) {
        CHECK(der.d_i[i] == 0.0);
        CHECK(der.d_s[i] == 0.0);
        CHECK(der.d_r[i] == 0.0);
    }
    auto cl = derivatives_classical(s, d, params(0.7, 1.0, 0.0));
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(cl.d_i[i] == 0.0);
}

TEST_CASE("lambda 0 only stifles") {
    auto d = two_four();
    DegreeClassState s;
    s.rho_s = {0.2, 0.05};
    s.rho_i = {0.7, 0.9};
    s.rho_r = {0.1, 0.05};
    auto der = derivatives_modified(s, d, params(0.0, 1.0, 0.0, 1.5));
    CHECK(der.d_i[0] == 0.0);
    CHECK(der.d_i[1] == 0.0);
    CHECK(der.d_r[0] == doctest::Approx(1.5 * 0.2));
    CHECK(der.d_r[1] == doctest::Approx(1.5 * 0.05));
}

TEST_CASE("full inoculation freezes ignorants") {
    auto d = two_four();
    auto s = DegreeClassState::seeded(d, 0.1);
    auto der = derivatives_modified(s, d, params(2.0, 1.0, 0.0), make_random_plan(1.0));
    for (double v : der.d_i) CHECK(v == 0.0);
}

TEST_CASE("classical equals modified at alpha 1, beta 0, delta 0") {
    auto d = sample_powerlaw_distribution(2.4, 2, 1000);
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        DegreeClassState s;
        for (std::size_t i = 0; i < d.size(); ++i) {
            const double a = uniform01(rng), b = uniform01(rng) * (1.0 - a);
            s.rho_i.push_back(a);
            s.rho_s.push_back(b);
            s.rho_r.push_back(1.0 - a - b);
        }
        auto p = params(0.3 + uniform01(rng), 1.0, 0.0);
        auto m = derivatives_modified(s, d, p);
        auto c = derivatives_classical(s, d, p);
        for (std::size_t i = 0; i < d.size(); ++i) {
            CHECK(std::fabs(m.d_i[i] - c.d_i[i]) < 1e-12);
            CHECK(std::fabs(m.d_s[i] - c.d_s[i]) < 1e-12);
            CHECK(std::fabs(m.d_r[i] - c.d_r[i]) < 1e-12);
        }
    }
}

TEST_CASE("state invariant") {
    auto d = two_four();
    auto s = DegreeClassState::seeded(d, 0.01);
    CHECK_NOTHROW(s.validate(d.size()));
    s.rho_r = {1.0, 1.0};
    CHECK_THROWS_AS(s.validate(d.size()), std::invalid_argument);
    CHECK_THROWS_AS(DegreeClassState::seeded(d, 0.01).validate(3), std::invalid_argument);
}

TEST_CASE("integration without spreaders is constant") {
    auto d = sample_powerlaw_distribution(2.4, 2, 1000);
    auto traj = integrate(DegreeClassState::seeded(d, 0.0), d, params(1.0, 0.7, -0.2), {}, 5.0, 0.5);
    CHECK(traj.samples() == 11);
    for (std::size_t j = 0; j < traj.samples(); ++j) {
        CHECK(traj.R[j] == 0.0);
        CHECK(traj.S[j] == 0.0);
        CHECK(traj.I[j] == doctest::Approx(1.0).epsilon(1e-12).scale(0));
    }
}

TEST_CASE("spreaders decay exponentially at lambda 0") {
    auto d = DegreeDistribution::point_mass(4);
    const double s0 = 0.3, sigma = 0.7;
    auto traj = integrate(DegreeClassState::seeded(d, s0), d, params(0.0, 1.0, 0.0, sigma), {}, 10.0, 0.1);
    for (std::size_t j = 0; j < traj.samples(); ++j)
        CHECK(std::fabs(traj.S[j] - s0 * std::exp(-sigma * traj.t[j])) < 1e-6);
}

TEST_CASE("integration reaches the fixed point") {
    auto d = sample_powerlaw_distribution(2.4, 2, 100000);
    auto p = params(0.8, 1.0, 0.0);
    IntegrationOptions opt;
    opt.store_states = false;
    auto traj = integrate(DegreeClassState::seeded(d, 1e-5), d, p, {}, 200.0, 0.05, opt);
    CHECK(std::fabs(traj.final_R() - final_rumor_size(d, p)) < 1e-3);
    // S-shape: growth rate peaks in the interior.
    const double r_end = traj.final_R();
    std::size_t peak = 1;
    for (std::size_t j = 1; j < traj.samples(); ++j)
        if (traj.R[j] - traj.R[j - 1] > traj.R[peak] - traj.R[peak - 1]) peak = j;
    CHECK(peak > 1);
    CHECK(traj.R[peak] > 0.05 * r_end);
    CHECK(traj.R[peak] < 0.95 * r_end);
    CHECK(traj.S.back() < 1e-6);
}

TEST_CASE("aggregate invariants along a trajectory") {
    auto d = sample_powerlaw_distribution(2.4, 2, 10000);
    auto plan = make_targeted_plan(d, 0.05);
    auto traj = integrate(DegreeClassState::seeded(d, 1e-3), d, params(1.5, 0.6, -0.4, 0.8), plan, 50.0, 0.1);
    const auto g = plan.profile_for(d);
    double immune = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) immune += g[i] * d.probabilities()[i];
    for (std::size_t j = 0; j < traj.samples(); ++j) {
        CHECK(std::fabs(traj.R[j] + traj.S[j] + traj.I[j] + immune - 1.0) < 1e-9);
        if (j) CHECK(traj.R[j] >= traj.R[j - 1]);
        traj.states[j].validate(d.size());
    }
}

TEST_CASE("psi fixed point") {
    auto d = sample_powerlaw_distribution(2.4, 2, 10000);
    CHECK(psi_fixed_point(d, params(0.0, 0.5, -0.5)) == 0.0);

    auto one = DegreeDistribution::point_mass(1);
    const double oracle = bisect_root(2.0);
    CHECK(oracle == doctest::Approx(0.79681).epsilon(1e-5).scale(0));
    CHECK(std::fabs(psi_fixed_point(one, params(2.0, 1.0, 0.0)) - oracle) < 1e-8);

    for (double alpha : {0.3, 0.7, 1.0})
        for (double beta : {-1.0, 0.0, 0.5}) {
            // threshold_modified in closed form, kept local to the test.
            const double lc = d.moment(beta + 1.0) / d.moment(alpha + beta + 1.0);
            CHECK(psi_fixed_point(d, params(0.999 * lc, alpha, beta)) == 0.0);
            CHECK(psi_fixed_point(d, params(1.2 * lc, alpha, beta)) > 0.0);
        }
}

TEST_CASE("psi satisfies its equation") {
    auto d = sample_powerlaw_distribution(2.4, 2, 100000);
    Rng rng(17);
    for (int i = 0; i < 20; ++i) {
        auto p = params(0.2 + 2.0 * uniform01(rng), 0.1 + 0.9 * uniform01(rng), -1.5 + 2.5 * uniform01(rng),
                        0.5 + uniform01(rng));
        const double psi = psi_fixed_point(d, p);
        const double norm = d.moment(1.0 + p.beta());
        double rhs = d.moment(p.alpha);
        for (std::size_t j = 0; j < d.size(); ++j) {
            const double k = d.support()[j];
            rhs -= std::pow(k, p.alpha) * d.probabilities()[j] *
                   std::exp(-(p.lambda / p.sigma) * std::pow(k, 1.0 + p.beta()) / norm * psi);
        }
        CHECK(std::fabs(rhs - psi) < 1e-8);
    }
}

TEST_CASE("final size") {
    auto d = sample_powerlaw_distribution(2.4, 2, 10000);
    CHECK(final_rumor_size(d, params(0.0, 1.0, 0.0)) == 0.0);
    CHECK(final_rumor_size(d, params(3.0, 1.0, 0.0), make_random_plan(1.0)) == 0.0);
    auto one = DegreeDistribution::point_mass(1);
    const double psi = bisect_root(2.0);
    CHECK(final_rumor_size(one, params(2.0, 1.0, 0.0)) == doctest::Approx(1.0 - std::exp(-2.0 * psi)).epsilon(1e-8).scale(0));
    CHECK(final_rumor_size(one, params(2.0, 1.0, 0.0)) == doctest::Approx(psi).epsilon(1e-8).scale(0));
    // Random inoculation shrinks the outbreak.
    CHECK(final_rumor_size(d, params(1.0, 1.0, 0.0), make_random_plan(0.3)) <
          final_rumor_size(d, params(1.0, 1.0, 0.0)));
}

TEST_CASE("closed-form ignorants") {
    auto d = sample_powerlaw_distribution(2.4, 2, 1000);
    CHECK(closed_form_ignorant(5, 0.0, d, params(1.0, 0.5, -0.5)) == 1.0);
    auto pm = DegreeDistribution::point_mass(6);
    CHECK(closed_form_ignorant(6, 0.37, pm, params(1.0, 0.4, 0.0)) == doctest::Approx(std::exp(-0.37)));
}

TEST_CASE("closed form tracks the integration") {
    auto d = sample_powerlaw_distribution(2.4, 2, 10000);
    auto p = params(0.9, 0.6, -0.3, 1.2);
    auto traj = integrate(DegreeClassState::seeded(d, 1e-4), d, p, {}, 30.0, 0.1);
    for (std::size_t j : {std::size_t{50}, std::size_t{150}, traj.samples() - 1}) {
        const auto& st = traj.states[j];
        for (std::size_t c = 0; c < d.size(); c += 7) {
            const double ci = closed_form_ignorant(d.support()[c], traj.psi[j], d, p);
            CHECK(std::fabs(st.rho_i[c] - (1.0 - 1e-4) * ci) < 1e-4);
        }
    }
}

TEST_CASE("trajectory csv") {
    auto d = DegreeDistribution::point_mass(3);
    auto traj = integrate(DegreeClassState::seeded(d, 0.1), d, params(1.0, 1.0, 0.0), {}, 1.0, 0.5);
    std::stringstream s;
    write_trajectory_csv(s, traj);
    auto t = read_csv(s);
    CHECK(t.columns == std::vector<std::string>{"t", "R", "S", "I", "Phi", "Psi"});
    CHECK(t.rows.size() == 3);
    std::stringstream c;
    write_class_states_csv(c, traj, d);
    auto ct = read_csv(c);
    CHECK(ct.columns == std::vector<std::string>{"t", "k", "rho_i", "rho_s", "rho_r"});
    CHECK(ct.rows.size() == 3);
}

TEST_CASE("integration argument checks") {
    auto d = DegreeDistribution::point_mass(3);
    CHECK_THROWS_AS(integrate(DegreeClassState::seeded(d, 0.1), d, params(1.0, 1.0, 0.0), {}, 1.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate(DegreeClassState::seeded(d, 0.1), d, params(1.0, 1.0, 0.0), {}, -1.0, 0.1),
                    std::invalid_argument);
}
