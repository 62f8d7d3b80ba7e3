#include "qdistil/qstate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace qdistil::qstate {

namespace {

int qubit_count_for_dim(Eigen::Index dim, const char* what) {
    if (dim < 1 || (dim & (dim - 1)) != 0)
        throw ArgumentError(std::string(what) + ": dimension must be a power of two");
    int nq = std::countr_zero(static_cast<std::uint64_t>(dim));
    if (nq > max_qubits)
        throw ResourceError(std::string(what) + ": register larger than " +
                            std::to_string(max_qubits) + " qubits");
    return nq;
}

void check_qubit(int qubit, int nq) {
    if (qubit < 0 || qubit >= nq)
        throw ArgumentError("qubit index " + std::to_string(qubit) +
                            " out of range for " + std::to_string(nq) + " qubits");
}

// Bit mask of qubit q in an nq-qubit index (qubit 0 = most significant bit).
std::uint64_t mask_of(int qubit, int nq) {
    return std::uint64_t{1} << (nq - 1 - qubit);
}

// m <- (A on qubit q) * m
void left_apply(Eigen::MatrixXcd& m, const QubitOperator& a, int qubit, int nq) {
    const auto dim = m.rows();
    const std::uint64_t mask = mask_of(qubit, nq);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(dim); ++i) {
            if (i & mask) continue;
            const std::uint64_t i1 = i | mask;
            const Complex x0 = m(i, j);
            const Complex x1 = m(i1, j);
            m(i, j) = a(0, 0) * x0 + a(0, 1) * x1;
            m(i1, j) = a(1, 0) * x0 + a(1, 1) * x1;
        }
    }
}

// m <- m * (A on qubit q)^dagger
void right_apply_dagger(Eigen::MatrixXcd& m, const QubitOperator& a, int qubit,
                        int nq) {
    const auto dim = m.cols();
    const std::uint64_t mask = mask_of(qubit, nq);
    const QubitOperator ad = a.adjoint();
    for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(dim); ++j) {
        if (j & mask) continue;
        const std::uint64_t j1 = j | mask;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const Complex x0 = m(i, j);
            const Complex x1 = m(i, j1);
            m(i, j) = x0 * ad(0, 0) + x1 * ad(1, 0);
            m(i, j1) = x0 * ad(0, 1) + x1 * ad(1, 1);
        }
    }
}

}  // namespace

PureState::PureState(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
    nq_ = qubit_count_for_dim(amps_.size(), "PureState");
    const double norm2 = amps_.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-12)
        throw ArgumentError("PureState: squared amplitudes sum to " +
                            std::to_string(norm2) + ", expected 1");
}

PureState PureState::basis(int qubit_count, std::uint64_t bits) {
    if (qubit_count < 1 || qubit_count > max_qubits)
        throw ArgumentError("PureState::basis: bad qubit count");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << qubit_count);
    v(static_cast<Eigen::Index>(bits)) = 1.0;
    return PureState(std::move(v));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    Eigen::MatrixXcd m = psi.amplitudes() * psi.amplitudes().adjoint();
    return DensityMatrix(std::move(m), psi.qubit_count());
}

DensityMatrix DensityMatrix::from_entries(Eigen::MatrixXcd entries,
                                          bool require_unit_trace) {
    if (entries.rows() != entries.cols())
        throw ArgumentError("DensityMatrix: matrix must be square");
    int nq = qubit_count_for_dim(entries.rows(), "DensityMatrix");
    const double herm_dev = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > 1e-10)
        throw ArgumentError("DensityMatrix: not Hermitian (max deviation " +
                            std::to_string(herm_dev) + ")");
    const double tr = entries.trace().real();
    if (!(tr > 0.0) || tr > 1.0 + 1e-9)
        throw ArgumentError("DensityMatrix: trace " + std::to_string(tr) +
                            " outside (0, 1]");
    if (require_unit_trace && std::abs(tr - 1.0) > 1e-9)
        throw ArgumentError("DensityMatrix: trace " + std::to_string(tr) +
                            " is not 1");
    return DensityMatrix(std::move(entries), nq);
}

double DensityMatrix::trace_real() const { return m_.trace().real(); }

bool DensityMatrix::trace_normalized() const {
    return std::abs(trace_real() - 1.0) <= 1e-12;
}

bool DensityMatrix::is_hermitian(double tol) const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        ((m_ + m_.adjoint()) * 0.5).eval(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

DensityMatrix DensityMatrix::normalized() const {
    return DensityMatrix(m_ / trace_real(), nq_);
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.qubit_count() + b.qubit_count() > max_qubits)
        throw ResourceError("tensor: combined register exceeds " +
                            std::to_string(max_qubits) + " qubits");
    Eigen::MatrixXcd m = Eigen::kroneckerProduct(a.entries(), b.entries());
    return DensityMatrix::from_entries(std::move(m), false);
}

PureState tensor(const PureState& a, const PureState& b) {
    if (a.qubit_count() + b.qubit_count() > max_qubits)
        throw ResourceError("tensor: combined register exceeds " +
                            std::to_string(max_qubits) + " qubits");
    Eigen::VectorXcd v = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes());
    return PureState(std::move(v));
}

DensityMatrix apply_channel(const DensityMatrix& state,
                            const std::vector<QubitOperator>& kraus, int qubit) {
    check_qubit(qubit, state.qubit_count());
    if (kraus.empty()) throw ArgumentError("apply_channel: empty Kraus set");
    QubitOperator completeness = QubitOperator::Zero();
    for (const auto& k : kraus) completeness += k.adjoint() * k;
    if ((completeness - QubitOperator::Identity()).cwiseAbs().maxCoeff() > 1e-12)
        throw ContractViolationError(
            "apply_channel: Kraus set is not trace preserving");

    const int nq = state.qubit_count();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(state.dim(), state.dim());
    for (const auto& k : kraus) {
        Eigen::MatrixXcd branch = state.entries();
        left_apply(branch, k, qubit, nq);
        right_apply_dagger(branch, k, qubit, nq);
        out += branch;
    }
    out = ((out + out.adjoint()) * 0.5).eval();  // suppress float drift
    return DensityMatrix::from_entries(std::move(out), false);
}

FilterOutcome apply_filter(const DensityMatrix& state, const QubitOperator& op,
                           int qubit) {
    check_qubit(qubit, state.qubit_count());
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(op);
    if (svd.singularValues()(0) > 1.0 + 1e-12)
        throw ContractViolationError(
            "apply_filter: operator norm exceeds 1, not a measurement element");

    const int nq = state.qubit_count();
    Eigen::MatrixXcd post = state.entries();
    left_apply(post, op, qubit, nq);
    right_apply_dagger(post, op, qubit, nq);
    const double p = post.trace().real() / state.trace_real();
    if (p <= 1e-15) return FilterOutcome{std::nullopt, std::max(p, 0.0)};
    post = ((post + post.adjoint()) * 0.5).eval();
    post /= post.trace().real();
    return FilterOutcome{DensityMatrix::from_entries(std::move(post), false), p};
}

DensityMatrix apply_cnot(const DensityMatrix& state, int control, int target) {
    const int nq = state.qubit_count();
    check_qubit(control, nq);
    check_qubit(target, nq);
    if (control == target)
        throw ArgumentError("apply_cnot: control and target must differ");
    const std::uint64_t cmask = mask_of(control, nq);
    const std::uint64_t tmask = mask_of(target, nq);
    const auto dim = static_cast<std::uint64_t>(state.dim());
    auto permute = [&](std::uint64_t i) { return (i & cmask) ? (i ^ tmask) : i; };
    Eigen::MatrixXcd out(state.dim(), state.dim());
    for (std::uint64_t j = 0; j < dim; ++j)
        for (std::uint64_t i = 0; i < dim; ++i)
            out(permute(i), permute(j)) = state.entries()(i, j);
    return DensityMatrix::from_entries(std::move(out), false);
}

std::vector<MeasurementBranch> measure_computational(
    const DensityMatrix& state, const std::vector<int>& qubits) {
    const int nq = state.qubit_count();
    if (qubits.empty()) throw ArgumentError("measure_computational: no qubits");
    std::vector<bool> seen(nq, false);
    for (int q : qubits) {
        check_qubit(q, nq);
        if (seen[q])
            throw ArgumentError("measure_computational: duplicate qubit index");
        seen[q] = true;
    }
    std::vector<int> remaining;
    for (int q = 0; q < nq; ++q)
        if (!seen[q]) remaining.push_back(q);

    const int k = static_cast<int>(qubits.size());
    const int r = static_cast<int>(remaining.size());
    const std::uint64_t outcomes = std::uint64_t{1} << k;
    const std::uint64_t rdim = std::uint64_t{1} << r;

    std::vector<MeasurementBranch> branches;
    for (std::uint64_t o = 0; o < outcomes; ++o) {
        // Assemble the full register index for this outcome and a value of
        // the remaining qubits. Outcome bit t belongs to qubits[t].
        std::uint64_t base = 0;
        for (int t = 0; t < k; ++t)
            if ((o >> (k - 1 - t)) & 1) base |= mask_of(qubits[t], nq);
        auto full_index = [&](std::uint64_t rest) {
            std::uint64_t idx = base;
            for (int t = 0; t < r; ++t)
                if ((rest >> (r - 1 - t)) & 1) idx |= mask_of(remaining[t], nq);
            return idx;
        };

        Eigen::MatrixXcd block(rdim, rdim);
        for (std::uint64_t jj = 0; jj < rdim; ++jj) {
            const std::uint64_t fj = full_index(jj);
            for (std::uint64_t ii = 0; ii < rdim; ++ii)
                block(ii, jj) = state.entries()(full_index(ii), fj);
        }
        const double p = block.trace().real();
        if (p <= 1e-15) continue;
        block /= p;
        block = ((block + block.adjoint()) * 0.5).eval();

        std::string label(k, '0');
        for (int t = 0; t < k; ++t)
            if ((o >> (k - 1 - t)) & 1) label[t] = '1';
        branches.push_back(MeasurementBranch{
            std::move(label), p,
            DensityMatrix::from_entries(std::move(block), false)});
    }
    return branches;
}

double fidelity_with_pure(const DensityMatrix& state, const PureState& target) {
    if (state.dim() != target.dim())
        throw ArgumentError("fidelity_with_pure: dimension mismatch");
    const Complex f =
        (target.amplitudes().adjoint() * state.entries() * target.amplitudes())(0);
    return std::clamp(f.real(), 0.0, 1.0);
}

double concurrence(const DensityMatrix& state) {
    if (state.dim() != 4)
        throw ArgumentError("concurrence: defined for exactly 2 qubits");
    Eigen::Matrix2cd sy;
    sy << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
    const Eigen::Matrix4cd yy = Eigen::kroneckerProduct(sy, sy);
    const Eigen::Matrix4cd rho = state.entries() / state.trace_real();

    // The four lambdas are the singular values of sqrt(rho)*yy*conj(sqrt(rho)).
    // Computing them by SVD keeps absolute precision ~1e-15; taking square
    // roots of eigenvalue estimates of rho*flipped(rho) instead would blow
    // solver noise on near-zero eigenvalues up to ~1e-8. Rank-deficiency noise
    // in rho itself is clamped before the square root for the same reason.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
    Eigen::Vector4d ev = es.eigenvalues();
    const double floor = ev.maxCoeff() * 1e-12;
    for (int i = 0; i < 4; ++i) ev(i) = ev(i) > floor ? std::sqrt(ev(i)) : 0.0;
    const Eigen::Matrix4cd root =
        es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    const Eigen::JacobiSVD<Eigen::Matrix4cd> svd(root * yy * root.conjugate());
    const Eigen::Vector4d& s = svd.singularValues();  // sorted descending
    return std::max(0.0, s(0) - s(1) - s(2) - s(3));
}

DensityMatrix partial_trace(const DensityMatrix& state,
                            const std::vector<int>& keep) {
    const int nq = state.qubit_count();
    if (keep.empty()) throw ArgumentError("partial_trace: keep list is empty");
    std::vector<bool> kept(nq, false);
    for (int q : keep) {
        check_qubit(q, nq);
        if (kept[q]) throw ArgumentError("partial_trace: duplicate qubit index");
        kept[q] = true;
    }
    std::vector<int> traced;
    for (int q = 0; q < nq; ++q)
        if (!kept[q]) traced.push_back(q);

    const int k = static_cast<int>(keep.size());
    const int t = static_cast<int>(traced.size());
    const std::uint64_t kdim = std::uint64_t{1} << k;
    const std::uint64_t tdim = std::uint64_t{1} << t;

    auto full_index = [&](std::uint64_t kept_bits, std::uint64_t traced_bits) {
        std::uint64_t idx = 0;
        for (int s = 0; s < k; ++s)
            if ((kept_bits >> (k - 1 - s)) & 1) idx |= mask_of(keep[s], nq);
        for (int s = 0; s < t; ++s)
            if ((traced_bits >> (t - 1 - s)) & 1) idx |= mask_of(traced[s], nq);
        return idx;
    };

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kdim, kdim);
    for (std::uint64_t jj = 0; jj < kdim; ++jj)
        for (std::uint64_t ii = 0; ii < kdim; ++ii) {
            Complex sum = 0.0;
            for (std::uint64_t rr = 0; rr < tdim; ++rr)
                sum += state.entries()(full_index(ii, rr), full_index(jj, rr));
            out(ii, jj) = sum;
        }
    out = ((out + out.adjoint()) * 0.5).eval();
    return DensityMatrix::from_entries(std::move(out), false);
}

}  // namespace qdistil::qstate
