#pragma once

#include <vector>

#include "qdistil/qstate.hpp"

namespace qdistil::channels {

// Amplitude damping rate, valid on [0, 1).
class ADParams {
public:
    explicit ADParams(double d);
    double value() const { return d_; }

private:
    double d_;
};

// Weak measurement strength, valid on [0, 1).
class NRWMParams {
public:
    explicit NRWMParams(double w);
    double value() const { return w_; }

private:
    double w_;
};

// Amplitude damping Kraus pair {diag(1, sqrt(1-d)), sqrt(d)|0><1|}.
std::vector<qstate::QubitOperator> ad_kraus(const ADParams& p);

// Null-result weak measurement operator diag(sqrt(1-w), 1).
qstate::QubitOperator nrwm_operator(const NRWMParams& p);

// The complementary trace-preserving pair: null element diag(1, sqrt(1-w))
// and click element sqrt(w)|1><1|.
qstate::QubitOperator nrwm_null_element(const NRWMParams& p);
qstate::QubitOperator nrwm_click_element(const NRWMParams& p);

// Independent amplitude damping on every qubit (one rate per qubit).
qstate::DensityMatrix transmit(const qstate::PureState& state,
                               const std::vector<ADParams>& per_qubit);
qstate::DensityMatrix transmit(const qstate::DensityMatrix& state,
                               const std::vector<ADParams>& per_qubit);

// Simultaneous null-result weak measurement on every qubit, post-selected.
qstate::FilterOutcome filter_all(const qstate::DensityMatrix& state,
                                 const std::vector<NRWMParams>& per_qubit);

}  // namespace qdistil::channels
