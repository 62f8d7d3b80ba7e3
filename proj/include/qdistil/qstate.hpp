#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdistil/errors.hpp"

namespace qdistil::qstate {

using Complex = std::complex<double>;
using QubitOperator = Eigen::Matrix2cd;

// Dense simulation is capped here; everything beyond goes through closed forms.
inline constexpr int max_qubits = 12;

// Qubit 0 is the leftmost (most significant) position in bitstrings:
// |01> is basis index 1, |10> is basis index 2.

class PureState {
public:
    explicit PureState(Eigen::VectorXcd amplitudes);
    static PureState basis(int qubit_count, std::uint64_t bits);

    int qubit_count() const { return nq_; }
    Eigen::Index dim() const { return amps_.size(); }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }

private:
    Eigen::VectorXcd amps_;
    int nq_;
};

class DensityMatrix {
public:
    static DensityMatrix from_pure(const PureState& psi);
    // Accepts any Hermitian matrix with trace in (0, 1 + tol]; callers that
    // build sub-normalized (post-filter) states pass require_unit_trace=false.
    static DensityMatrix from_entries(Eigen::MatrixXcd entries,
                                      bool require_unit_trace = true);

    int qubit_count() const { return nq_; }
    Eigen::Index dim() const { return m_.rows(); }
    const Eigen::MatrixXcd& entries() const { return m_; }

    double trace_real() const;
    bool trace_normalized() const;  // trace == 1 within 1e-12
    bool is_hermitian(double tol = 1e-12) const;
    double min_eigenvalue() const;
    DensityMatrix normalized() const;

private:
    DensityMatrix(Eigen::MatrixXcd m, int nq) : m_(std::move(m)), nq_(nq) {}
    Eigen::MatrixXcd m_;
    int nq_;
};

// Result of a single post-selected filter. probability == 0 yields no state.
struct FilterOutcome {
    std::optional<DensityMatrix> state;
    double probability = 0.0;
};

struct MeasurementBranch {
    std::string outcome;  // bitstring over the measured qubits, in given order
    double probability = 0.0;
    DensityMatrix post_state;  // over the remaining qubits, renormalized
};

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor(const PureState& a, const PureState& b);

// rho -> sum_k K_k rho K_k^dagger on one qubit; the set must be trace preserving.
DensityMatrix apply_channel(const DensityMatrix& state,
                            const std::vector<QubitOperator>& kraus, int qubit);

// Single measurement element M (operator norm <= 1) applied to one qubit,
// post-selected: returns the renormalized state and its probability.
FilterOutcome apply_filter(const DensityMatrix& state, const QubitOperator& op,
                           int qubit);

DensityMatrix apply_cnot(const DensityMatrix& state, int control, int target);

// Projective measurement of the listed qubits in the computational basis.
// Zero-probability branches are omitted; post-states live on the remaining
// qubits (a 1x1 unit matrix when every qubit was measured).
std::vector<MeasurementBranch> measure_computational(
    const DensityMatrix& state, const std::vector<int>& qubits);

double fidelity_with_pure(const DensityMatrix& state, const PureState& target);

// Wootters concurrence of a 2-qubit state.
double concurrence(const DensityMatrix& state);

DensityMatrix partial_trace(const DensityMatrix& state,
                            const std::vector<int>& keep);

}  // namespace qdistil::qstate
