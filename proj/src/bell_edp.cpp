#include "qdistil/bell_edp.hpp"

#include <array>
#include <cmath>
#include <string>

namespace qdistil::bell_edp {

namespace {

void check_params(const TwoCopyRoundParams& p) {
    if (p.amp01 < 0 || p.amp10 < 0 || p.vac < 0)
        throw ArgumentError("two-copy parameters must be nonnegative");
    if (p.amp01 == 0 && p.amp10 == 0 && p.vac == 0)
        throw ArgumentError("two-copy parameters are all zero");
}

// Exact binomial coefficients up to 64 choose 32 (fits in uint64).
std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    static const auto table = [] {
        std::array<std::array<std::uint64_t, 65>, 65> c{};
        for (int i = 0; i <= 64; ++i) {
            c[i][0] = 1;
            for (int j = 1; j <= i; ++j)
                c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
        }
        return c;
    }();
    return table[n][k];
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

BellFilteredState bell_filtered_state(const BellScenario& s) {
    const double d1 = s.d1.value(), d2 = s.d2.value();
    const double w1b = 1.0 - s.w1.value(), w2b = 1.0 - s.w2.value();
    TwoCopyRoundParams p;
    p.amp01 = std::sqrt((1.0 - d2) * w1b);
    p.amp10 = std::sqrt((1.0 - d1) * w2b);
    p.vac = (d1 + d2) * w1b * w2b;
    const double pw = 0.5 * (p.vac + p.amp01 * p.amp01 + p.amp10 * p.amp10);
    const double conc = p.amp01 * p.amp10 / pw;
    return BellFilteredState{p, pw, conc};
}

TwoCopyRoundOutcome two_copy_round(const TwoCopyRoundParams& p) {
    check_params(p);
    const double a2 = p.amp01 * p.amp01;
    const double b2 = p.amp10 * p.amp10;
    const double t = a2 + b2 + p.vac;
    TwoCopyRoundOutcome out;
    out.p_success = 2.0 * a2 * b2 / (t * t);
    out.p_recycle = (a2 * a2 + b2 * b2 + p.vac * p.vac) / (t * t);
    out.next = TwoCopyRoundParams{a2, b2, p.vac * p.vac};
    return out;
}

namespace {

// Shared multi-round loop. Renormalizes every round (the round map is scale
// invariant), keeping powers like a^(2^m) away from underflow at m = 10.
EfficiencyReport iterate_two_copy(TwoCopyRoundParams p, double filter_prob,
                                  int rounds) {
    if (rounds < 1) throw ArgumentError("round count must be at least 1");
    EfficiencyReport rep;
    rep.rounds = rounds;
    double survivors = filter_prob;  // copies still in play, per source copy
    double a2 = p.amp01 * p.amp01, b2 = p.amp10 * p.amp10, v = p.vac;
    for (int r = 0; r < rounds; ++r) {
        const double t = a2 + b2 + v;
        a2 /= t;
        b2 /= t;
        v /= t;
        const double p1 = 2.0 * a2 * b2;
        const double p0 = a2 * a2 + b2 * b2 + v * v;
        rep.per_round_yields.push_back(survivors * p1 / 2.0);
        rep.cumulative += rep.per_round_yields.back();
        survivors *= p0 / 2.0;
        a2 *= a2;
        b2 *= b2;
        v *= v;
    }
    return rep;
}

}  // namespace

EfficiencyReport two_copy_efficiency(const BellScenario& s, int rounds) {
    const BellFilteredState f = bell_filtered_state(s);
    return iterate_two_copy(f.params, f.success_probability, rounds);
}

EfficiencyReport nonmax_initial_pipeline(const channels::ADParams& d,
                                         const channels::NRWMParams& w,
                                         int rounds) {
    using namespace qstate;
    const double dv = d.value();
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
    amps(1) = 1.0 / std::sqrt(2.0 - dv);                  // |01>
    amps(2) = std::sqrt((1.0 - dv) / (2.0 - dv));         // |10>
    const PureState psi(amps);
    const DensityMatrix sent =
        channels::transmit(psi, {d, channels::ADParams(0.0)});
    const FilterOutcome filtered = channels::filter_all(sent, {w, w});
    if (!filtered.state)
        throw NumericalError("nonmax pipeline: filter annihilated the state");

    // Read the two-copy parameters off the (renormalized) matrix and undo
    // the normalization so they carry the original scale.
    const Eigen::MatrixXcd& m = filtered.state->entries();
    TwoCopyRoundParams p;
    p.amp01 = std::sqrt(std::max(0.0, m(1, 1).real()));
    p.amp10 = std::sqrt(std::max(0.0, m(2, 2).real()));
    p.vac = std::max(0.0, m(0, 0).real());
    if (std::abs(m(3, 3).real()) > 1e-12 ||
        std::abs(m(1, 2).real() - p.amp01 * p.amp10) > 1e-12)
        throw NumericalError(
            "nonmax pipeline: state left the two-copy parameter family");
    return iterate_two_copy(p, filtered.probability, rounds);
}

BisectionOutcomeStats bisection_outcome_stats(int copies, double t, int a,
                                              int b) {
    if (!is_power_of_two(copies) || copies < 2 || copies > 32)
        throw ArgumentError("copy count must be a power of two in [2, 32]");
    if (t < 0.0 || t > 1.0)
        throw ArgumentError("Bell weight t must lie in [0, 1]");
    if (a < 0 || b < 0 || a > copies || b > copies)
        throw ArgumentError("outcome counts out of range");
    if (a + b > copies)
        throw ArgumentError("a + b cannot exceed the number of copies");
    BisectionOutcomeStats s;
    s.outcome_count = binomial(copies, a + b) * binomial(a + b, a);
    s.probability = std::ldexp(1.0, -(a + b)) * std::pow(t, a + b) *
                    std::pow(1.0 - t, copies - a - b) *
                    static_cast<double>(s.outcome_count);
    if (a + b == copies) s.rank = binomial(copies, a);
    return s;
}

double hamming_entropy(int x) {
    if (x < 1 || x > 64) throw ArgumentError("hamming_entropy: x must be in [1, 64]");
    double sum = 0.0;
    for (int l = 0; l <= x; ++l) {
        const double c = static_cast<double>(binomial(x, l));
        sum += c * std::log2(c);
    }
    return sum / (static_cast<double>(x) * std::ldexp(1.0, x));
}

EfficiencyReport bisection_efficiency(const channels::ADParams& d,
                                      const channels::NRWMParams& w,
                                      int copies) {
    if (!is_power_of_two(copies) || copies < 2 || copies > 64)
        throw ArgumentError("copy count must be a power of two in [2, 64]");
    const double dv = d.value(), wb = 1.0 - w.value();
    const double db = 1.0 - dv;
    const double t = db / (dv * wb + db);
    const double pw = wb * (db + dv * wb);

    EfficiencyReport rep;
    int stages = 0;
    for (int n = copies; n > 1; n /= 2) ++stages;
    rep.rounds = stages;
    for (int k = 1; k <= stages; ++k) {
        const int x = 1 << k;
        const double y = pw * std::pow(t, x) *
                         (hamming_entropy(x) - hamming_entropy(x / 2));
        rep.per_round_yields.push_back(y);
        rep.cumulative += y;
    }
    return rep;
}

}  // namespace qdistil::bell_edp
