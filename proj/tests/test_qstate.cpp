#include <doctest.h>

#include <cmath>
#include <complex>

#include "qdistil/channels.hpp"
#include "qdistil/qstate.hpp"

using namespace qdistil;
using qstate::DensityMatrix;
using qstate::PureState;

namespace {

PureState bell_pair() {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(1) = v(2) = 1.0 / std::sqrt(2.0);
    return PureState(v);
}

}  // namespace

TEST_CASE("pure states validate their amplitude vectors") {
    CHECK_THROWS_AS(PureState(Eigen::VectorXcd::Zero(4)), ArgumentError);
    Eigen::VectorXcd bad = Eigen::VectorXcd::Zero(3);
    bad(0) = 1.0;
    CHECK_THROWS_AS((PureState(bad)), ArgumentError);
    CHECK(PureState::basis(2, 3).amplitudes()(3) == qstate::Complex(1.0));
    CHECK(PureState::basis(3, 0).qubit_count() == 3);
}

TEST_CASE("qubit 0 is the most significant bit of the basis index") {
    // |01>: qubit 0 reads 0, qubit 1 reads 1
    auto rho = DensityMatrix::from_pure(PureState::basis(2, 1));
    auto left = qstate::measure_computational(rho, {0});
    REQUIRE(left.size() == 1);
    CHECK(left[0].outcome == "0");
    auto right = qstate::measure_computational(rho, {1});
    REQUIRE(right.size() == 1);
    CHECK(right[0].outcome == "1");
}

TEST_CASE("tensor products concatenate registers") {
    auto ab = qstate::tensor(PureState::basis(1, 1), PureState::basis(2, 0));
    CHECK(ab.qubit_count() == 3);
    CHECK(ab.amplitudes()(4) == qstate::Complex(1.0));  // |100>
    auto rho = qstate::tensor(DensityMatrix::from_pure(PureState::basis(1, 1)),
                              DensityMatrix::from_pure(PureState::basis(1, 0)));
    CHECK(rho.entries()(2, 2).real() == doctest::Approx(1.0));  // |10>
}

TEST_CASE("the register cap rejects oversized tensors") {
    auto seven = DensityMatrix::from_pure(PureState::basis(7, 0));
    auto six = DensityMatrix::from_pure(PureState::basis(6, 0));
    CHECK_THROWS_AS(qstate::tensor(seven, six), ResourceError);
}

TEST_CASE("amplitude damping acts only on the chosen qubit") {
    const auto kraus = channels::ad_kraus(channels::ADParams(0.36));
    auto rho = DensityMatrix::from_pure(PureState::basis(2, 1));  // |01>
    auto out = qstate::apply_channel(rho, kraus, 1);
    CHECK(out.entries()(1, 1).real() == doctest::Approx(0.64));
    CHECK(out.entries()(0, 0).real() == doctest::Approx(0.36));
    out = qstate::apply_channel(rho, kraus, 0);  // qubit 0 is |0>: untouched
    CHECK(out.entries()(1, 1).real() == doctest::Approx(1.0));
}

TEST_CASE("amplitude damping shrinks coherences by sqrt(1-d)") {
    auto rho = DensityMatrix::from_pure(bell_pair());
    auto out = qstate::apply_channel(rho, channels::ad_kraus(channels::ADParams(0.19)), 0);
    CHECK(out.entries()(1, 2).real() == doctest::Approx(0.5 * std::sqrt(0.81)));
    CHECK(out.trace_real() == doctest::Approx(1.0));
}

TEST_CASE("non trace preserving Kraus sets are rejected") {
    std::vector<qstate::QubitOperator> bad = {
        0.5 * qstate::QubitOperator::Identity()};
    auto rho = DensityMatrix::from_pure(PureState::basis(1, 0));
    CHECK_THROWS_AS(qstate::apply_channel(rho, bad, 0), ContractViolationError);
    CHECK_THROWS_AS(qstate::apply_channel(rho, channels::ad_kraus(channels::ADParams(0.1)), 1),
                    ArgumentError);
}

TEST_CASE("filters renormalize and report the branch probability") {
    Eigen::VectorXcd v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    auto rho = DensityMatrix::from_pure(PureState(v));
    auto f = qstate::apply_filter(rho, channels::nrwm_operator(channels::NRWMParams(0.5)), 0);
    REQUIRE(f.state.has_value());
    CHECK(f.probability == doctest::Approx(0.75));
    CHECK(f.state->trace_real() == doctest::Approx(1.0));
}

TEST_CASE("a filter with no support on the state returns no branch") {
    auto zero = DensityMatrix::from_pure(PureState::basis(1, 0));
    auto g = qstate::apply_filter(
        zero, channels::nrwm_click_element(channels::NRWMParams(0.3)), 0);
    CHECK_FALSE(g.state.has_value());
    CHECK(g.probability == doctest::Approx(0.0));
}

TEST_CASE("filter operators above unit norm are rejected") {
    qstate::QubitOperator big = 2.0 * qstate::QubitOperator::Identity();
    auto rho = DensityMatrix::from_pure(PureState::basis(1, 0));
    CHECK_THROWS_AS(qstate::apply_filter(rho, big, 0), ContractViolationError);
}

TEST_CASE("cnot permutes basis states") {
    auto rho = DensityMatrix::from_pure(PureState::basis(2, 2));  // |10>
    auto flipped = qstate::apply_cnot(rho, 0, 1);
    CHECK(flipped.entries()(3, 3).real() == doctest::Approx(1.0));  // |11>
    auto idle = qstate::apply_cnot(rho, 1, 0);  // control qubit 1 is |0>
    CHECK(idle.entries()(2, 2).real() == doctest::Approx(1.0));
    CHECK_THROWS_AS(qstate::apply_cnot(rho, 0, 0), ArgumentError);
}

TEST_CASE("measuring one half of a Bell pair gives two fair branches") {
    auto rho = DensityMatrix::from_pure(bell_pair());
    auto branches = qstate::measure_computational(rho, {1});
    REQUIRE(branches.size() == 2);
    for (const auto& b : branches) {
        CHECK(b.probability == doctest::Approx(0.5));
        const Eigen::Index idx = b.outcome == "0" ? 1 : 0;
        CHECK(b.post_state.entries()(idx, idx).real() == doctest::Approx(1.0));
    }
}

TEST_CASE("measuring every qubit leaves a trivial register") {
    auto rho = DensityMatrix::from_pure(bell_pair());
    auto branches = qstate::measure_computational(rho, {0, 1});
    REQUIRE(branches.size() == 2);  // only "01" and "10" have support
    double total = 0.0;
    for (const auto& b : branches) {
        CHECK(b.post_state.dim() == 1);
        total += b.probability;
    }
    CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("fidelity with a pure target") {
    auto rho = DensityMatrix::from_pure(bell_pair());
    CHECK(qstate::fidelity_with_pure(rho, bell_pair()) == doctest::Approx(1.0));
    auto damped = channels::transmit(
        bell_pair(), {channels::ADParams(0.2), channels::ADParams(0.2)});
    CHECK(qstate::fidelity_with_pure(damped, bell_pair()) == doctest::Approx(0.8));
}

TEST_CASE("concurrence of reference states") {
    CHECK(qstate::concurrence(DensityMatrix::from_pure(bell_pair())) ==
          doctest::Approx(1.0));
    CHECK(qstate::concurrence(DensityMatrix::from_pure(PureState::basis(2, 1))) ==
          doctest::Approx(0.0));
    auto damped = channels::transmit(
        bell_pair(), {channels::ADParams(0.5), channels::ADParams(0.5)});
    CHECK(qstate::concurrence(damped) == doctest::Approx(0.5).epsilon(1e-12));
    auto three = DensityMatrix::from_pure(PureState::basis(3, 0));
    CHECK_THROWS_AS(qstate::concurrence(three), ArgumentError);
}

TEST_CASE("partial trace of a Bell pair is maximally mixed") {
    auto rho = DensityMatrix::from_pure(bell_pair());
    auto red = qstate::partial_trace(rho, {0});
    CHECK(red.qubit_count() == 1);
    CHECK(red.entries()(0, 0).real() == doctest::Approx(0.5));
    CHECK(red.entries()(1, 1).real() == doctest::Approx(0.5));
    CHECK(std::abs(red.entries()(0, 1)) == doctest::Approx(0.0));
}
