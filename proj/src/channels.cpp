#include "qdistil/channels.hpp"

#include <cmath>
#include <string>

namespace qdistil::channels {

using qstate::DensityMatrix;
using qstate::FilterOutcome;
using qstate::PureState;
using qstate::QubitOperator;

ADParams::ADParams(double d) : d_(d) {
    if (!(d >= 0.0) || d >= 1.0)
        throw ArgumentError("damping rate must lie in [0, 1), got " +
                            std::to_string(d));
}

NRWMParams::NRWMParams(double w) : w_(w) {
    if (!(w >= 0.0) || w >= 1.0)
        throw ArgumentError("weak measurement strength must lie in [0, 1), got " +
                            std::to_string(w));
}

std::vector<QubitOperator> ad_kraus(const ADParams& p) {
    const double d = p.value();
    QubitOperator k0 = QubitOperator::Zero();
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - d);
    QubitOperator k1 = QubitOperator::Zero();
    k1(0, 1) = std::sqrt(d);
    return {k0, k1};
}

QubitOperator nrwm_operator(const NRWMParams& p) {
    QubitOperator m = QubitOperator::Zero();
    m(0, 0) = std::sqrt(1.0 - p.value());
    m(1, 1) = 1.0;
    return m;
}

QubitOperator nrwm_null_element(const NRWMParams& p) {
    QubitOperator m = QubitOperator::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = std::sqrt(1.0 - p.value());
    return m;
}

QubitOperator nrwm_click_element(const NRWMParams& p) {
    QubitOperator m = QubitOperator::Zero();
    m(1, 1) = std::sqrt(p.value());
    return m;
}

namespace {

template <typename State>
DensityMatrix transmit_impl(const State& state,
                            const std::vector<ADParams>& per_qubit) {
    DensityMatrix rho = [&] {
        if constexpr (std::is_same_v<State, PureState>)
            return DensityMatrix::from_pure(state);
        else
            return state;
    }();
    if (static_cast<int>(per_qubit.size()) != rho.qubit_count())
        throw ArgumentError("transmit: expected one damping rate per qubit (" +
                            std::to_string(rho.qubit_count()) + "), got " +
                            std::to_string(per_qubit.size()));
    for (int q = 0; q < rho.qubit_count(); ++q)
        rho = qstate::apply_channel(rho, ad_kraus(per_qubit[q]), q);
    return rho;
}

}  // namespace

DensityMatrix transmit(const PureState& state,
                       const std::vector<ADParams>& per_qubit) {
    return transmit_impl(state, per_qubit);
}

DensityMatrix transmit(const DensityMatrix& state,
                       const std::vector<ADParams>& per_qubit) {
    return transmit_impl(state, per_qubit);
}

FilterOutcome filter_all(const DensityMatrix& state,
                         const std::vector<NRWMParams>& per_qubit) {
    if (static_cast<int>(per_qubit.size()) != state.qubit_count())
        throw ArgumentError("filter_all: expected one strength per qubit (" +
                            std::to_string(state.qubit_count()) + "), got " +
                            std::to_string(per_qubit.size()));
    // The filters are tensor products, so applying them one qubit at a time
    // and multiplying conditional probabilities is exact.
    DensityMatrix rho = state;
    double prob = 1.0;
    for (int q = 0; q < state.qubit_count(); ++q) {
        FilterOutcome step = qstate::apply_filter(rho, nrwm_operator(per_qubit[q]), q);
        prob *= step.probability;
        if (!step.state) return FilterOutcome{std::nullopt, prob};
        rho = *std::move(step.state);
    }
    return FilterOutcome{std::move(rho), prob};
}

}  // namespace qdistil::channels
