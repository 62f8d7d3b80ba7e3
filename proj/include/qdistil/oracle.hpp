#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdistil/bell_edp.hpp"
#include "qdistil/multipartite_edp.hpp"

namespace qdistil::oracle {

// One cross-checked quantity: a closed-form value against the same quantity
// extracted from an explicit density-matrix simulation of the protocol.
struct OracleReport {
    std::string quantity;
    double closed_form = 0.0;
    double simulated = 0.0;
    double abs_error = 0.0;
    bool pass = false;
};

inline constexpr double default_tolerance = 1e-12;
inline constexpr std::uint64_t default_seed = 12345;
inline constexpr int max_w_parties = 5;  // 2N qubits must fit the register

std::vector<OracleReport> validate_bell_filter(double d1, double d2, double w1,
                                               double w2,
                                               double tol = default_tolerance);

std::vector<OracleReport> validate_two_copy_round(
    const bell_edp::TwoCopyRoundParams& params,
    double tol = default_tolerance);

std::vector<OracleReport> validate_ghz_round(double d, double w,
                                             double tol = default_tolerance);

std::vector<OracleReport> validate_w_round(int parties, double d, double w,
                                           double tol = default_tolerance);

struct ValidationSummary {
    std::vector<OracleReport> rows;
    bool passed = false;
    double max_abs_error = 0.0;
    std::uint64_t seed = 0;
    int samples = 0;
};

// Runs every suite on `samples` seeded random parameter sets plus the fixed
// reference points. Failures are reported, never thrown.
ValidationSummary run_all(std::uint64_t seed = default_seed, int samples = 50,
                          double tol = default_tolerance);

}  // namespace qdistil::oracle
