#include "rumor/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "rumor/errors.hpp"
#include "rumor/table.hpp"

namespace rumor {

DegreeClassState DegreeClassState::seeded(const DegreeDistribution& dist, double s0) {
    if (!(s0 >= 0.0 && s0 <= 1.0)) {
        throw std::invalid_argument("initial spreader fraction must lie in [0, 1]");
    }
    DegreeClassState s;
    s.rho_i.assign(dist.size(), 1.0 - s0);
    s.rho_s.assign(dist.size(), s0);
    s.rho_r.assign(dist.size(), 0.0);
    return s;
}

void DegreeClassState::validate(std::size_t expected_classes) const {
    if (rho_i.size() != expected_classes || rho_s.size() != expected_classes || rho_r.size() != expected_classes) {
        throw std::invalid_argument("state class count does not match the degree support");
    }
    for (std::size_t k = 0; k < expected_classes; ++k) {
        for (const double v : {rho_i[k], rho_s[k], rho_r[k]}) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw std::invalid_argument("state component outside [0, 1] in class " + std::to_string(k));
            }
        }
        if (std::abs(rho_i[k] + rho_s[k] + rho_r[k] - 1.0) > kNormalizationTolerance) {
            throw std::invalid_argument("class " + std::to_string(k) + " fractions do not sum to 1");
        }
    }
}

namespace {

/// Per-class constants of one parameter point. `coef[k]` is the infection
/// rate per unit Phi (modified) or per unit Theta (classical).
struct BlockSystem {
    MeanFieldModel model;
    std::size_t n;
    double sigma;
    double delta;
    std::vector<double> prob;
    std::vector<double> keep;          // 1 - g_k
    std::vector<double> spread_weight; // k^alpha P(k)
    std::vector<double> edge_weight;   // k P(k), classical neighbour weight before 1/<k>
    std::vector<double> coef;
    std::vector<double> degree;
    double mean_k;
    double max_coef;

    BlockSystem(const DegreeDistribution& dist, const ModelParams& p, const InoculationPlan& plan,
                MeanFieldModel m)
        : model(m), n(dist.size()), sigma(p.sigma), delta(p.delta) {
        p.validate();
        const auto ks = dist.support();
        const auto ps = dist.probabilities();
        prob.assign(ps.begin(), ps.end());
        keep = plan.profile_for(dist);
        for (auto& g : keep) {
            g = 1.0 - g;
        }
        mean_k = dist.moment(1.0);
        const double norm = dist.moment(1.0 + p.beta());
        spread_weight.resize(n);
        edge_weight.resize(n);
        coef.resize(n);
        degree.resize(n);
        max_coef = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double k = static_cast<double>(ks[i]);
            degree[i] = k;
            spread_weight[i] = std::pow(k, p.alpha) * ps[i];
            edge_weight[i] = k * ps[i];
            if (model == MeanFieldModel::modified) {
                coef[i] = p.lambda * keep[i] * std::pow(k, 1.0 + p.beta()) / norm;
            } else {
                coef[i] = p.lambda * k / mean_k;
            }
            max_coef = std::max(max_coef, coef[i]);
        }
    }

    double phi(const double* rs) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += spread_weight[i] * rs[i];
        }
        return acc;
    }

    /// Neighbour-weighted spreader density times <k> (classical Theta * <k>).
    double theta(const double* rs) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += edge_weight[i] * rs[i];
        }
        return acc;
    }

    /// y = [rho_i | rho_s | rho_r | psi]; writes dy.
    void derivative(const double* y, double* dy) const {
        const double* ri = y;
        const double* rs = y + n;
        const double* rr = y + 2 * n;
        double* di = dy;
        double* ds = dy + n;
        double* dr = dy + 2 * n;
        const double ph = phi(rs);
        if (model == MeanFieldModel::modified) {
            for (std::size_t i = 0; i < n; ++i) {
                const double gain = coef[i] * ri[i] * ph;
                di[i] = -gain;
                ds[i] = -sigma * rs[i] + gain;
                dr[i] = sigma * rs[i];
            }
        } else {
            const double th = theta(rs);
            double informed = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                informed += edge_weight[i] * (rs[i] + rr[i]);
            }
            informed /= mean_k;
            for (std::size_t i = 0; i < n; ++i) {
                const double gain = coef[i] * ri[i] * th;
                const double contact_stifle = degree[i] * delta * rs[i] * informed;
                di[i] = -gain;
                ds[i] = gain - contact_stifle - sigma * rs[i];
                dr[i] = contact_stifle + sigma * rs[i];
            }
        }
        dy[3 * n] = sigma * ph;
    }

    double fastest_rate(const double* y) const {
        const double* rs = y + n;
        const double drive = model == MeanFieldModel::modified ? phi(rs) : theta(rs);
        double rate = max_coef * drive + sigma;
        if (model == MeanFieldModel::classical) {
            rate += degree.back() * delta;
        }
        return rate;
    }
};

ClassDerivatives evaluate(const BlockSystem& sys, const DegreeClassState& state) {
    state.validate(sys.n);
    std::vector<double> y(3 * sys.n + 1);
    std::copy(state.rho_i.begin(), state.rho_i.end(), y.begin());
    std::copy(state.rho_s.begin(), state.rho_s.end(), y.begin() + static_cast<std::ptrdiff_t>(sys.n));
    std::copy(state.rho_r.begin(), state.rho_r.end(), y.begin() + static_cast<std::ptrdiff_t>(2 * sys.n));
    std::vector<double> dy(y.size());
    sys.derivative(y.data(), dy.data());
    ClassDerivatives out;
    const auto n = static_cast<std::ptrdiff_t>(sys.n);
    out.d_i.assign(dy.begin(), dy.begin() + n);
    out.d_s.assign(dy.begin() + n, dy.begin() + 2 * n);
    out.d_r.assign(dy.begin() + 2 * n, dy.begin() + 3 * n);
    return out;
}

}  // namespace

ClassDerivatives derivatives_modified(const DegreeClassState& state, const DegreeDistribution& dist,
                                      const ModelParams& p, const InoculationPlan& plan) {
    return evaluate(BlockSystem(dist, p, plan, MeanFieldModel::modified), state);
}

ClassDerivatives derivatives_classical(const DegreeClassState& state, const DegreeDistribution& dist,
                                       const ModelParams& p) {
    return evaluate(BlockSystem(dist, p, InoculationPlan::none(), MeanFieldModel::classical), state);
}

Trajectory integrate(const DegreeClassState& initial, const DegreeDistribution& dist, const ModelParams& p,
                     const InoculationPlan& plan, double t_end, double dt, const IntegrationOptions& options) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("integration step dt must be positive");
    }
    if (!(t_end >= 0.0)) {
        throw std::invalid_argument("t_end must be nonnegative");
    }
    if (!(options.max_rate_step > 0.0)) {
        throw std::invalid_argument("max_rate_step must be positive");
    }
    const BlockSystem sys(dist, p, plan, options.model);
    initial.validate(sys.n);
    const std::size_t n = sys.n;
    const std::size_t dim = 3 * n + 1;

    std::vector<double> y(dim);
    std::copy(initial.rho_i.begin(), initial.rho_i.end(), y.begin());
    std::copy(initial.rho_s.begin(), initial.rho_s.end(), y.begin() + static_cast<std::ptrdiff_t>(n));
    std::copy(initial.rho_r.begin(), initial.rho_r.end(), y.begin() + static_cast<std::ptrdiff_t>(2 * n));
    y[3 * n] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        y[3 * n] += sys.spread_weight[i] * y[2 * n + i];
    }

    Trajectory traj;
    const auto record = [&](double t) {
        double r = 0.0;
        double s = 0.0;
        double ig = 0.0;
        double psi_r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = sys.prob[i] * sys.keep[i];
            ig += w * y[i];
            s += w * y[n + i];
            r += w * y[2 * n + i];
            psi_r += sys.spread_weight[i] * y[2 * n + i];
        }
        traj.t.push_back(t);
        traj.R.push_back(r);
        traj.S.push_back(s);
        traj.I.push_back(ig);
        traj.phi.push_back(sys.phi(y.data() + n));
        traj.psi.push_back(y[3 * n]);
        traj.psi_stiflers.push_back(psi_r);
        if (options.store_states) {
            DegreeClassState st;
            st.t = t;
            st.rho_i.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
            st.rho_s.assign(y.begin() + static_cast<std::ptrdiff_t>(n), y.begin() + static_cast<std::ptrdiff_t>(2 * n));
            st.rho_r.assign(y.begin() + static_cast<std::ptrdiff_t>(2 * n),
                            y.begin() + static_cast<std::ptrdiff_t>(3 * n));
            traj.states.push_back(std::move(st));
        }
        return s;
    };

    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    const auto rk4_step = [&](double h) {
        sys.derivative(y.data(), k1.data());
        for (std::size_t j = 0; j < dim; ++j) tmp[j] = y[j] + 0.5 * h * k1[j];
        sys.derivative(tmp.data(), k2.data());
        for (std::size_t j = 0; j < dim; ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
        sys.derivative(tmp.data(), k3.data());
        for (std::size_t j = 0; j < dim; ++j) tmp[j] = y[j] + h * k3[j];
        sys.derivative(tmp.data(), k4.data());
        for (std::size_t j = 0; j < dim; ++j) {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        for (std::size_t j = 0; j < 3 * n; ++j) {
            if (!(y[j] >= -1e-6 && y[j] <= 1.0 + 1e-6)) {
                throw IntegrationError("mean-field integration left the unit interval (try a smaller dt)");
            }
            // keep exhausted classes out of subnormal range
            if (std::fabs(y[j]) < 1e-200) {
                y[j] = 0.0;
            }
        }
    };

    const double t0 = initial.t;
    double t = t0;
    double spreaders = record(t);
    for (std::size_t sample = 1;; ++sample) {
        if (options.stop_when_spreaders_below > 0.0 && spreaders < options.stop_when_spreaders_below) {
            break;
        }
        if (t >= t0 + t_end) {
            break;
        }
        const double target = std::min(t0 + static_cast<double>(sample) * dt, t0 + t_end);
        while (t < target) {
            const double remaining = target - t;
            const double h_max = options.max_rate_step / sys.fastest_rate(y.data());
            if (h_max >= remaining) {
                rk4_step(remaining);
                t = target;
            } else {
                const double h = remaining / std::ceil(remaining / h_max);
                rk4_step(h);
                t += h;
            }
        }
        spreaders = record(t);
    }

    traj.final_state.t = t;
    traj.final_state.rho_i.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
    traj.final_state.rho_s.assign(y.begin() + static_cast<std::ptrdiff_t>(n),
                                  y.begin() + static_cast<std::ptrdiff_t>(2 * n));
    traj.final_state.rho_r.assign(y.begin() + static_cast<std::ptrdiff_t>(2 * n),
                                  y.begin() + static_cast<std::ptrdiff_t>(3 * n));
    return traj;
}

namespace {

struct PsiEquation {
    std::vector<double> weight;  // k^alpha P(k)
    std::vector<double> rate;    // c_k
    double total_weight = 0.0;
    double slope_at_zero = 0.0;

    PsiEquation(const DegreeDistribution& dist, const ModelParams& p, const InoculationPlan& plan) {
        p.validate();
        const auto ks = dist.support();
        const auto ps = dist.probabilities();
        const auto g = plan.profile_for(dist);
        const double norm = dist.moment(1.0 + p.beta());
        const double lam = p.lambda / p.sigma;
        weight.resize(ks.size());
        rate.resize(ks.size());
        for (std::size_t i = 0; i < ks.size(); ++i) {
            const double k = static_cast<double>(ks[i]);
            weight[i] = std::pow(k, p.alpha) * ps[i];
            rate[i] = lam * (1.0 - g[i]) * std::pow(k, 1.0 + p.beta()) / norm;
            total_weight += weight[i];
            slope_at_zero += weight[i] * rate[i];
        }
    }

    /// Right-hand side, written as sum w_k (1 - e^{-c_k psi}) to avoid cancellation.
    double rhs(double psi) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < weight.size(); ++i) {
            acc -= weight[i] * std::expm1(-rate[i] * psi);
        }
        return acc;
    }
};

constexpr double kPsiTolerance = 1e-10;
constexpr int kPsiMaxIterations = 100000;
constexpr double kPsiDamping = 0.5;

double bisect_psi(const PsiEquation& eq, double hi, int& iterations) {
    // The residual F(psi) - psi is concave with positive slope at zero, so it
    // is positive on (0, psi*) and nonpositive above.
    double lo = hi;
    do {
        lo *= 0.5;
        if (++iterations > kPsiMaxIterations || lo == 0.0) {
            throw ConvergenceError("psi fixed point: could not bracket the nonzero root");
        }
    } while (eq.rhs(lo) - lo <= 0.0);
    while (hi - lo > kPsiTolerance * 1e-3 * std::max(1.0, hi)) {
        if (++iterations > kPsiMaxIterations) {
            throw ConvergenceError("psi fixed point: bisection did not converge");
        }
        const double mid = 0.5 * (lo + hi);
        if (eq.rhs(mid) - mid > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double psi_fixed_point(const DegreeDistribution& dist, const ModelParams& p, const InoculationPlan& plan) {
    const PsiEquation eq(dist, p, plan);
    if (eq.slope_at_zero <= 1.0) {
        return 0.0;
    }
    // Damped iteration from above decreases monotonically onto the largest root.
    double psi = eq.total_weight;
    double previous_residual = INFINITY;
    int iterations = 0;
    while (iterations < kPsiMaxIterations) {
        ++iterations;
        const double residual = eq.rhs(psi) - psi;
        if (std::abs(residual) < kPsiTolerance) {
            return psi;
        }
        if (iterations > 50 && std::abs(residual) > 0.99 * std::abs(previous_residual)) {
            return bisect_psi(eq, psi, iterations);
        }
        previous_residual = residual;
        psi += kPsiDamping * residual;
    }
    throw ConvergenceError("psi fixed point did not converge in " + std::to_string(kPsiMaxIterations) + " iterations");
}

double final_rumor_size(const DegreeDistribution& dist, const ModelParams& p, const InoculationPlan& plan) {
    const PsiEquation eq(dist, p, plan);
    const double psi = psi_fixed_point(dist, p, plan);
    const auto ps = dist.probabilities();
    const auto g = plan.profile_for(dist);
    double r = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        r -= ps[i] * (1.0 - g[i]) * std::expm1(-eq.rate[i] * psi);
    }
    return std::clamp(r, 0.0, 1.0);
}

double closed_form_ignorant(Degree k, double psi_t, const DegreeDistribution& dist, const ModelParams& p,
                            double g_k) {
    if (!(psi_t >= 0.0)) {
        throw std::invalid_argument("psi must be nonnegative");
    }
    const double kd = static_cast<double>(k);
    const double rate = (p.lambda / p.sigma) * (1.0 - g_k) * std::pow(kd, 1.0 + p.beta()) / dist.moment(1.0 + p.beta());
    return std::exp(-rate * psi_t);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,R,S,I,Phi,Psi\n";
    for (std::size_t j = 0; j < traj.samples(); ++j) {
        out << format_double(traj.t[j]) << ',' << format_double(traj.R[j]) << ',' << format_double(traj.S[j]) << ','
            << format_double(traj.I[j]) << ',' << format_double(traj.phi[j]) << ',' << format_double(traj.psi[j])
            << '\n';
    }
}

void write_class_states_csv(std::ostream& out, const Trajectory& traj, const DegreeDistribution& dist) {
    if (traj.states.size() != traj.samples()) {
        throw std::invalid_argument("trajectory was integrated without stored class states");
    }
    out << "t,k,rho_i,rho_s,rho_r\n";
    const auto ks = dist.support();
    for (const auto& st : traj.states) {
        for (std::size_t i = 0; i < ks.size(); ++i) {
            out << format_double(st.t) << ',' << ks[i] << ',' << format_double(st.rho_i[i]) << ','
                << format_double(st.rho_s[i]) << ',' << format_double(st.rho_r[i]) << '\n';
        }
    }
}

}  // namespace rumor
