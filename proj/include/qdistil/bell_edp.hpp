#pragma once

#include <cstdint>
#include <optional>

#include "qdistil/channels.hpp"
#include "qdistil/report.hpp"

namespace qdistil::bell_edp {

struct BellScenario {
    channels::ADParams d1, d2;
    channels::NRWMParams w1, w2;
};

// Unnormalized parameters of a state of the form
//   (amp01 |01> + amp10 |10>)(h.c.) + vac |00><00|,
// the family closed under the two-copy protocol round.
struct TwoCopyRoundParams {
    double amp01 = 0.0;
    double amp10 = 0.0;
    double vac = 0.0;
};

struct BellFilteredState {
    TwoCopyRoundParams params;
    double success_probability = 0.0;  // of the initial filters
    double concurrence = 0.0;
};

struct TwoCopyRoundOutcome {
    double p_success = 0.0;  // target outcome '11': a perfect Bell pair
    double p_recycle = 0.0;  // target outcome '00': fed into the next round
    TwoCopyRoundParams next;
};

// Bell state sent through AD(d1) x AD(d2), then filtered with NRWM(w1) x
// NRWM(w2); returns the surviving-state parameters, the filter success
// probability and the state's concurrence.
BellFilteredState bell_filtered_state(const BellScenario& s);

// One round of the two-copy protocol (bilateral CNOT + target measurement).
TwoCopyRoundOutcome two_copy_round(const TwoCopyRoundParams& p);

// Total Bell-pair yield of `rounds` rounds of the two-copy protocol,
// including the initial filter probability.
EfficiencyReport two_copy_efficiency(const BellScenario& s, int rounds);

// Variant seeded with the partially entangled pure state
// (1/sqrt(2-d))|01> + sqrt((1-d)/(2-d))|10>, where only the first qubit
// passes through the damping channel. The post-channel, post-filter state is
// extracted from an explicit density-matrix computation.
EfficiencyReport nonmax_initial_pipeline(const channels::ADParams& d,
                                         const channels::NRWMParams& w,
                                         int rounds);

struct BisectionOutcomeStats {
    std::uint64_t outcome_count = 0;  // Hamming-weight strings with this (a, b)
    double probability = 0.0;
    std::optional<std::uint64_t> rank;  // entangled-state rank when a + b = n
};

// Statistics of the Hamming-weight measurement on n copies: a and b count
// excitations on Alice's and Bob's side, t is the Bell weight of each copy.
BisectionOutcomeStats bisection_outcome_stats(int copies, double t, int a, int b);

// Average entropy-of-outcome term H(x), computed with exact binomials.
double hamming_entropy(int x);

// Yield of the halving protocol on n copies (n a power of two), symmetric
// damping and filtering, including the initial filter probability.
EfficiencyReport bisection_efficiency(const channels::ADParams& d,
                                      const channels::NRWMParams& w, int copies);

}  // namespace qdistil::bell_edp
