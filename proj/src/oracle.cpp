#include "qdistil/oracle.hpp"

#include <cmath>
#include <random>

namespace qdistil::oracle {

using qstate::DensityMatrix;
using qstate::MeasurementBranch;
using qstate::PureState;

namespace {

void push(std::vector<OracleReport>& rows, std::string quantity, double closed,
          double simulated, double tol) {
    const double err = std::abs(closed - simulated);
    rows.push_back(OracleReport{std::move(quantity), closed, simulated, err,
                                err < tol});
}

// Worst-entry comparison of two matrices, reported as a single row.
void push_matrix(std::vector<OracleReport>& rows, const std::string& quantity,
                 const Eigen::MatrixXcd& closed, const Eigen::MatrixXcd& sim,
                 double tol) {
    Eigen::Index wi = 0, wj = 0;
    double worst = -1.0;
    for (Eigen::Index j = 0; j < closed.cols(); ++j)
        for (Eigen::Index i = 0; i < closed.rows(); ++i) {
            const double dev = std::abs(closed(i, j) - sim(i, j));
            if (dev > worst) {
                worst = dev;
                wi = i;
                wj = j;
            }
        }
    rows.push_back(OracleReport{
        quantity + " worst entry (" + std::to_string(wi) + "," +
            std::to_string(wj) + ")",
        closed(wi, wj).real(), sim(wi, wj).real(), worst, worst < tol});
}

PureState bell_pair() {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(1) = v(2) = 1.0 / std::sqrt(2.0);  // (|01> + |10>)/sqrt(2)
    return PureState(std::move(v));
}

PureState ghz_state() {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
    v(1) = v(6) = 1.0 / std::sqrt(2.0);  // (|001> + |110>)/sqrt(2)
    return PureState(std::move(v));
}

PureState w_state(int parties) {
    const Eigen::Index dim = Eigen::Index{1} << parties;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    const double amp = 1.0 / std::sqrt(static_cast<double>(parties));
    for (int q = 0; q < parties; ++q)
        v(Eigen::Index{1} << q) = amp;
    return PureState(std::move(v));
}

// Normalized matrix of (amp01|01> + amp10|10>)(h.c.) + vac|00><00|.
Eigen::Matrix4cd two_copy_family_matrix(const bell_edp::TwoCopyRoundParams& p) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = p.vac;
    m(1, 1) = p.amp01 * p.amp01;
    m(2, 2) = p.amp10 * p.amp10;
    m(1, 2) = m(2, 1) = p.amp01 * p.amp10;
    return m / m.trace().real();
}

double branch_probability(const std::vector<MeasurementBranch>& branches,
                          const std::string& outcome) {
    for (const auto& b : branches)
        if (b.outcome == outcome) return b.probability;
    return 0.0;
}

const MeasurementBranch* find_branch(
    const std::vector<MeasurementBranch>& branches, const std::string& outcome) {
    for (const auto& b : branches)
        if (b.outcome == outcome) return &b;
    return nullptr;
}

}  // namespace

std::vector<OracleReport> validate_bell_filter(double d1, double d2, double w1,
                                               double w2, double tol) {
    std::vector<OracleReport> rows;
    const channels::ADParams pd1(d1), pd2(d2);
    const channels::NRWMParams pw1(w1), pw2(w2);

    // Simulated: transmit + filter on explicit matrices.
    const DensityMatrix rho_d = channels::transmit(bell_pair(), {pd1, pd2});

    // Closed form for the damped state.
    const double db1 = 1.0 - d1, db2 = 1.0 - d2;
    Eigen::Matrix4cd rho_d_cf = Eigen::Matrix4cd::Zero();
    rho_d_cf(0, 0) = 0.5 * (d1 + d2);
    rho_d_cf(1, 1) = 0.5 * db2;
    rho_d_cf(2, 2) = 0.5 * db1;
    rho_d_cf(1, 2) = rho_d_cf(2, 1) = 0.5 * std::sqrt(db1 * db2);
    push_matrix(rows, "damped Bell state", rho_d_cf, rho_d.entries(), tol);
    push(rows, "damped concurrence", std::sqrt(db1 * db2),
         qstate::concurrence(rho_d), tol);

    const auto filtered = channels::filter_all(rho_d, {pw1, pw2});
    const auto cf = bell_edp::bell_filtered_state(
        bell_edp::BellScenario{pd1, pd2, pw1, pw2});
    push(rows, "filter success probability", cf.success_probability,
         filtered.probability, tol);
    if (filtered.state) {
        push_matrix(rows, "filtered Bell state",
                    two_copy_family_matrix(cf.params),
                    filtered.state->entries(), tol);
        push(rows, "filtered concurrence", cf.concurrence,
             qstate::concurrence(*filtered.state), tol);
    }
    return rows;
}

std::vector<OracleReport> validate_two_copy_round(
    const bell_edp::TwoCopyRoundParams& params, double tol) {
    std::vector<OracleReport> rows;
    const auto cf = bell_edp::two_copy_round(params);

    const DensityMatrix one =
        DensityMatrix::from_entries(two_copy_family_matrix(params));
    // Register: control pair on qubits {0,1}, target pair on qubits {2,3};
    // each party applies a CNOT from its control qubit to its target qubit.
    DensityMatrix reg = qstate::tensor(one, one);
    reg = qstate::apply_cnot(reg, 0, 2);
    reg = qstate::apply_cnot(reg, 1, 3);
    const auto branches = qstate::measure_computational(reg, {2, 3});

    push(rows, "outcome '11' probability", cf.p_success,
         branch_probability(branches, "11"), tol);
    push(rows, "outcome '00' probability", cf.p_recycle,
         branch_probability(branches, "00"), tol);

    const double a2 = params.amp01 * params.amp01;
    const double b2 = params.amp10 * params.amp10;
    const double t = a2 + b2 + params.vac;
    push(rows, "discarded probability", 2.0 * params.vac * (a2 + b2) / (t * t),
         branch_probability(branches, "01") + branch_probability(branches, "10"),
         tol);

    if (const auto* b11 = find_branch(branches, "11")) {
        push(rows, "success branch = perfect Bell pair", 1.0,
             qstate::fidelity_with_pure(b11->post_state, bell_pair()), tol);
    }
    if (const auto* b00 = find_branch(branches, "00")) {
        push_matrix(rows, "recycle branch state",
                    two_copy_family_matrix(cf.next), b00->post_state.entries(),
                    tol);
    }
    return rows;
}

std::vector<OracleReport> validate_ghz_round(double d, double w, double tol) {
    std::vector<OracleReport> rows;
    const channels::ADParams pd(d);
    const channels::NRWMParams pw(w);

    const DensityMatrix noisy = channels::transmit(ghz_state(), {pd, pd, pd});
    const auto filtered = channels::filter_all(noisy, {pw, pw, pw});
    const auto cf = multipartite_edp::ghz_noisy_and_filtered(pd, pw);
    push(rows, "filter success probability", cf.success_probability,
         filtered.probability, tol);
    if (!filtered.state) return rows;

    Eigen::MatrixXcd cfm = Eigen::MatrixXcd::Zero(8, 8);
    const auto& p = cf.params;
    cfm(1, 1) = p.amp001 * p.amp001;
    cfm(6, 6) = p.amp110 * p.amp110;
    cfm(1, 6) = cfm(6, 1) = p.amp001 * p.amp110;
    cfm(0, 0) = p.vac000;
    cfm(2, 2) = p.vac010;  // |010>
    cfm(4, 4) = p.vac100;  // |100>
    cfm /= cfm.trace().real();
    push_matrix(rows, "filtered GHZ state", cfm, filtered.state->entries(), tol);

    // Two copies; each of the three parties holds qubits (i, 3+i).
    DensityMatrix reg = qstate::tensor(*filtered.state, *filtered.state);
    reg = qstate::apply_cnot(reg, 0, 3);
    reg = qstate::apply_cnot(reg, 1, 4);
    reg = qstate::apply_cnot(reg, 2, 5);
    const auto branches = qstate::measure_computational(reg, {3, 4, 5});

    const double a2 = p.amp001 * p.amp001, b2 = p.amp110 * p.amp110;
    const double t = a2 + b2 + p.vac000 + p.vac010 + p.vac100;
    const double p1 = 2.0 * a2 * b2 / (t * t);
    double p0 = (a2 * a2 + b2 * b2 + p.vac000 * p.vac000 +
                 p.vac010 * p.vac010 + p.vac100 * p.vac100) /
                (t * t);
    push(rows, "outcome '111' probability", p1,
         branch_probability(branches, "111"), tol);
    push(rows, "outcome '000' probability", p0,
         branch_probability(branches, "000"), tol);

    if (const auto* b111 = find_branch(branches, "111")) {
        push(rows, "success branch = pure GHZ", 1.0,
             qstate::fidelity_with_pure(b111->post_state, ghz_state()), tol);
    }
    if (const auto* b000 = find_branch(branches, "000")) {
        Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(8, 8);
        next(1, 1) = a2 * a2;
        next(6, 6) = b2 * b2;
        next(1, 6) = next(6, 1) = a2 * b2;
        next(0, 0) = p.vac000 * p.vac000;
        next(2, 2) = p.vac010 * p.vac010;
        next(4, 4) = p.vac100 * p.vac100;
        next /= next.trace().real();
        push_matrix(rows, "recycle branch state", next,
                    b000->post_state.entries(), tol);
    }

    // First-round yield: filter probability times half the success branch.
    const double y1_cf = (1.0 - d) * (1.0 - d) * (1.0 - d) * (1.0 - w) *
                         (1.0 - w) * (1.0 - w) /
                         (4.0 * cf.success_probability);
    push(rows, "first-round yield", y1_cf,
         filtered.probability * branch_probability(branches, "111") / 2.0, tol);
    return rows;
}

std::vector<OracleReport> validate_w_round(int parties, double d, double w,
                                           double tol) {
    if (parties < 2 || parties > max_w_parties)
        throw ArgumentError("oracle supports 2 to 5 parties (register cap)");
    std::vector<OracleReport> rows;
    const channels::ADParams pd(d);
    const channels::NRWMParams pw(w);

    const PureState target = w_state(parties);
    const std::vector<channels::ADParams> damps(parties, pd);
    const DensityMatrix noisy = channels::transmit(target, damps);

    // The damped state should stay inside span{|W>, |0...0>}.
    push(rows, "damped fidelity", 1.0 - d,
         qstate::fidelity_with_pure(noisy, target), tol);
    push(rows, "damped ground weight", d, noisy.entries()(0, 0).real(), tol);
    {
        Eigen::MatrixXcd residual = noisy.entries();
        residual -= (1.0 - d) * target.amplitudes() *
                    target.amplitudes().adjoint();
        residual(0, 0) -= d;
        push(rows, "damped state two-term residual", 0.0,
             residual.cwiseAbs().maxCoeff(), tol);
    }

    const std::vector<channels::NRWMParams> filters(parties, pw);
    const auto filtered = channels::filter_all(noisy, filters);
    const auto cf = multipartite_edp::w_filtered(parties, pd, pw);
    push(rows, "filter success probability", cf.success_probability,
         filtered.probability, tol);
    if (!filtered.state) return rows;
    push(rows, "filtered fidelity", cf.fidelity,
         qstate::fidelity_with_pure(*filtered.state, target), tol);

    // One distillation step on two copies: party i holds qubits (i, N+i).
    DensityMatrix reg = qstate::tensor(*filtered.state, *filtered.state);
    for (int q = 0; q < parties; ++q)
        reg = qstate::apply_cnot(reg, q, parties + q);
    std::vector<int> measured(parties);
    for (int q = 0; q < parties; ++q) measured[q] = parties + q;
    const auto branches = qstate::measure_computational(reg, measured);

    const auto round = multipartite_edp::w_round(parties, cf.fidelity);
    const std::string zeros(parties, '0');
    push(rows, "outcome '" + zeros + "' probability", round.success_probability,
         branch_probability(branches, zeros), tol);
    if (const auto* kept = find_branch(branches, zeros)) {
        push(rows, "post-step fidelity", round.fidelity,
             qstate::fidelity_with_pure(kept->post_state, target), tol);
        Eigen::MatrixXcd residual = kept->post_state.entries();
        residual -= round.fidelity * target.amplitudes() *
                    target.amplitudes().adjoint();
        residual(0, 0) -= 1.0 - round.fidelity;
        push(rows, "post-step two-term residual", 0.0,
             residual.cwiseAbs().maxCoeff(), tol);
    }
    return rows;
}

ValidationSummary run_all(std::uint64_t seed, int samples, double tol) {
    if (samples < 1) throw ArgumentError("sample count must be at least 1");
    ValidationSummary summary;
    summary.seed = seed;
    summary.samples = samples;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mild(0.0, 0.9);
    std::uniform_real_distribution<double> unit(0.05, 1.0);

    auto absorb = [&](std::vector<OracleReport> rows) {
        for (auto& r : rows) {
            summary.max_abs_error = std::max(summary.max_abs_error, r.abs_error);
            summary.rows.push_back(std::move(r));
        }
    };

    // Fixed reference points first.
    absorb(validate_bell_filter(0.5, 0.5, 0.0, 0.0, tol));
    absorb(validate_bell_filter(0.3, 0.7, 0.2, 0.6, tol));
    absorb(validate_bell_filter(0.5, 0.5, 0.5, 0.5, tol));
    absorb(validate_two_copy_round(
        bell_edp::TwoCopyRoundParams{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0),
                                     0.0},
        tol));
    absorb(validate_ghz_round(0.5, 0.5, tol));
    absorb(validate_w_round(3, 0.4, 0.5, tol));

    for (int s = 0; s < samples; ++s) {
        absorb(validate_bell_filter(mild(rng), mild(rng), mild(rng), mild(rng),
                                    tol));
        absorb(validate_two_copy_round(
            bell_edp::TwoCopyRoundParams{unit(rng), unit(rng), mild(rng)}, tol));
        absorb(validate_ghz_round(mild(rng), mild(rng), tol));
        const int parties = 2 + static_cast<int>(rng() % 4);  // 2..5
        absorb(validate_w_round(parties, mild(rng), mild(rng), tol));
    }

    summary.passed = true;
    for (const auto& r : summary.rows)
        if (!r.pass) summary.passed = false;
    return summary;
}

}  // namespace qdistil::oracle
