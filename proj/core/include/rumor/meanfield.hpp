#pragma once

#include <iosfwd>
#include <vector>

#include "rumor/degree_distribution.hpp"
#include "rumor/inoculation.hpp"
#include "rumor/model_params.hpp"

namespace rumor {

/// Per-degree-class fractions of ignorants, spreaders and stiflers, aligned
/// with the support of the distribution they were built for.
struct DegreeClassState {
    std::vector<double> rho_i;
    std::vector<double> rho_s;
    std::vector<double> rho_r;
    double t = 0.0;

    /// rho_i = 1 - s0, rho_s = s0, rho_r = 0 in every class.
    static DegreeClassState seeded(const DegreeDistribution& dist, double s0);

    std::size_t classes() const noexcept { return rho_i.size(); }

    /// Throws std::invalid_argument unless the class count matches, every
    /// component lies in [0, 1] and each class sums to 1 within 1e-9.
    void validate(std::size_t expected_classes) const;
};

inline constexpr double kNormalizationTolerance = 1e-9;

struct ClassDerivatives {
    std::vector<double> d_i;
    std::vector<double> d_s;
    std::vector<double> d_r;
};

/// Reduced degree-block equations of the modified model:
///   d rho_i(k) = -c_k rho_i(k) Phi
///   d rho_s(k) = -sigma rho_s(k) + c_k rho_i(k) Phi
///   d rho_r(k) =  sigma rho_s(k)
/// with c_k = lambda (1 - g_k) k^{1+beta} / <k^{1+beta}> and
/// Phi = sum_l l^alpha P(l) rho_s(l).
ClassDerivatives derivatives_modified(const DegreeClassState& state, const DegreeDistribution& dist,
                                      const ModelParams& p, const InoculationPlan& plan = {});

/// Classical degree-block equations with contact stifling (rate delta) and
/// spontaneous stifling (rate sigma) on an uncorrelated network.
ClassDerivatives derivatives_classical(const DegreeClassState& state, const DegreeDistribution& dist,
                                       const ModelParams& p);

enum class MeanFieldModel { modified, classical };

struct IntegrationOptions {
    MeanFieldModel model = MeanFieldModel::modified;
    /// Keep the per-class state at every sample (memory grows with classes).
    bool store_states = true;
    /// Stop once the aggregate spreader fraction falls below this value
    /// (0 disables; the trajectory then always reaches t_end).
    double stop_when_spreaders_below = 0.0;
    /// Upper bound on (fastest class rate) * (internal step).
    double max_rate_step = 0.1;
};

/// Sampled solution of the degree-block equations.
///
/// Aggregates are population fractions: R = sum_k P(k)(1-g_k) rho_r(k), and
/// likewise for S and I, so R + S + I equals one minus the inoculated share.
/// `psi` is sigma * integral of Phi, integrated alongside the classes;
/// `psi_stiflers` is sum_k k^alpha P(k) rho_r(k). The two agree when rho_r
/// starts at zero.
struct Trajectory {
    std::vector<double> t;
    std::vector<double> R;
    std::vector<double> S;
    std::vector<double> I;
    std::vector<double> phi;
    std::vector<double> psi;
    std::vector<double> psi_stiflers;
    std::vector<DegreeClassState> states;
    /// State at the last sample, kept even when `store_states` is off.
    DegreeClassState final_state;

    std::size_t samples() const noexcept { return t.size(); }
    double final_R() const { return R.back(); }
};

inline constexpr double kDefaultMeanFieldDt = 0.01;
inline constexpr double kDefaultMeanFieldTEnd = 100.0;

/// Classic RK4 sampled every `dt`. Internal steps are shortened whenever the
/// fastest class rate times the step would exceed `max_rate_step`. Throws
/// IntegrationError if any component leaves [-1e-6, 1 + 1e-6].
Trajectory integrate(const DegreeClassState& initial, const DegreeDistribution& dist, const ModelParams& p,
                     const InoculationPlan& plan, double t_end, double dt, const IntegrationOptions& options = {});

/// Largest root of Psi = <k^alpha> - sum_k k^alpha P(k) exp(-c_k Psi), with
/// c_k = (lambda / sigma)(1 - g_k) k^{1+beta} / <k^{1+beta}>. Returns 0 when
/// the slope at the origin, sum_k k^alpha P(k) c_k, does not exceed one.
/// Throws ConvergenceError after 1e5 iterations without reaching 1e-10.
double psi_fixed_point(const DegreeDistribution& dist, const ModelParams& p, const InoculationPlan& plan = {});

/// R = 1 - sum_k P(k)(1-g_k) exp(-c_k Psi*) - sum_k P(k) g_k.
double final_rumor_size(const DegreeDistribution& dist, const ModelParams& p, const InoculationPlan& plan = {});

/// rho_i(k, t) = exp(-c_k psi_t) for a class that started fully ignorant.
double closed_form_ignorant(Degree k, double psi_t, const DegreeDistribution& dist, const ModelParams& p,
                            double g_k = 0.0);

/// CSV `t,R,S,I,Phi,Psi`.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
/// CSV `t,k,rho_i,rho_s,rho_r`; requires stored states.
void write_class_states_csv(std::ostream& out, const Trajectory& traj, const DegreeDistribution& dist);

}  // namespace rumor
