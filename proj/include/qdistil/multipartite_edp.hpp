#pragma once

#include <vector>

#include "qdistil/channels.hpp"
#include "qdistil/report.hpp"

namespace qdistil::multipartite_edp {

struct GHZScenario {
    channels::ADParams d;
    channels::NRWMParams w;
    int rounds = 10;
};

// Unnormalized coefficients of the damped+filtered 3-qubit GHZ state:
//   (amp001 |001> + amp110 |110>)(h.c.)/2
//   + (vac000 |000><000| + vac010 |010><010| + vac100 |100><100|)/2.
struct GhzFilteredParams {
    double amp001 = 0.0;
    double amp110 = 0.0;
    double vac000 = 0.0;
    double vac010 = 0.0;
    double vac100 = 0.0;
};

struct GhzFilteredState {
    GhzFilteredParams params;
    double success_probability = 0.0;
};

GhzFilteredState ghz_noisy_and_filtered(const channels::ADParams& d,
                                        const channels::NRWMParams& w);

// Multi-round two-copy protocol yield for the GHZ state, including the
// initial filter probability.
EfficiencyReport ghz_efficiency(const GHZScenario& s);

struct WScenario {
    int parties = 3;
    channels::ADParams d;
    channels::NRWMParams w;
    double epsilon = 1e-6;  // target infidelity
};

struct WFiltered {
    double fidelity = 0.0;
    double success_probability = 0.0;
};

// Damped + filtered N-qubit W state: fidelity with the pure W state and the
// probability that all N filters succeed.
WFiltered w_filtered(int parties, const channels::ADParams& d,
                     const channels::NRWMParams& w);

struct WRoundResult {
    double fidelity = 0.0;
    double success_probability = 0.0;
};

// One distillation step of the W-state protocol as a map on fidelity.
WRoundResult w_round(int parties, double fidelity_in);

// Minimum filter strength for which the iteration converges; 0 when no
// filtering is needed (d < 1/(N+1)).
double w_threshold_strength(int parties, double d);

struct WTrajectory {
    std::vector<double> lambdas;      // lambda_0 .. lambda_m
    std::vector<double> fidelities;   // F_w, F_1 .. F_m
    std::vector<double> step_probs;   // p_1 .. p_m
    double filter_probability = 0.0;  // p_w
    double efficiency = 0.0;          // p_w * prod(p_i / 2)
    int steps = 0;                    // minimal m with F_m >= 1 - epsilon
};

WTrajectory w_trajectory(const WScenario& s);

// E(w) / E(0) at matching target infidelity, each trajectory at its own
// minimal step count. Throws RatioUndefinedError when the w=0 reference
// does not converge (d >= 1/(N+1)).
double efficiency_ratio(int parties, const channels::ADParams& d,
                        const channels::NRWMParams& w, double epsilon);

struct RegionLevel {
    int steps = 0;
    double level = 0.0;  // C^(2^-steps) with C = N eps / (1 - eps)
};

// Level constants of the step-count region boundaries: a point needs exactly
// m steps when level(m-1) < N(1-w)d/(1-d) <= level(m); the same constants
// against Nd/(1-d) classify the w=0 reference.
std::vector<RegionLevel> region_boundaries(int parties, double epsilon,
                                           int max_steps);

// Closed-form sign test for ratio <= 1 at N = 3, given both step counts and
// x = 1-w, y = 3d/(1-d). Evaluated in log space to avoid overflow.
bool boundary_inequality(int m, int m_prime, double x, double y);

// Limit of the efficiency ratio as the target infidelity goes to zero,
// by adaptive quadrature.
double asymptotic_ratio(int parties, const channels::ADParams& d,
                        const channels::NRWMParams& w);

struct OptimalW {
    double w = 0.0;
    double efficiency = 0.0;
    int steps = 0;
};

// Grid search plus golden-section refinement of the filter strength that
// maximizes the W-state distribution efficiency at fixed d.
OptimalW optimal_w(int parties, const channels::ADParams& d, double epsilon);

}  // namespace qdistil::multipartite_edp
