#include "qdistil/multipartite_edp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace qdistil::multipartite_edp {

namespace {

void check_parties(int parties) {
    if (parties < 2) throw ArgumentError("party count must be at least 2");
}

double target_fidelity(double epsilon) {
    if (!(epsilon > 0.0) || epsilon >= 1.0)
        throw ArgumentError("target infidelity must lie in (0, 1)");
    return 1.0 - epsilon;
}

}  // namespace

GhzFilteredState ghz_noisy_and_filtered(const channels::ADParams& d,
                                        const channels::NRWMParams& w) {
    const double dv = d.value(), db = 1.0 - dv;
    const double wb = 1.0 - w.value();
    GhzFilteredParams p;
    p.amp001 = std::sqrt(db) * wb;      // two ground qubits keep sqrt(wb) each
    p.amp110 = db * std::sqrt(wb);      // one ground qubit
    p.vac000 = dv * (1.0 + dv) * wb * wb * wb;
    p.vac010 = dv * db * wb * wb;
    p.vac100 = dv * db * wb * wb;
    const GhzFilteredState s{
        p, 0.5 * (p.amp001 * p.amp001 + p.amp110 * p.amp110 + p.vac000 +
                  p.vac010 + p.vac100)};
    return s;
}

EfficiencyReport ghz_efficiency(const GHZScenario& s) {
    if (s.rounds < 1) throw ArgumentError("round count must be at least 1");
    const GhzFilteredState f = ghz_noisy_and_filtered(s.d, s.w);
    double a2 = f.params.amp001 * f.params.amp001;
    double b2 = f.params.amp110 * f.params.amp110;
    double v0 = f.params.vac000, v1 = f.params.vac010, v2 = f.params.vac100;

    EfficiencyReport rep;
    rep.rounds = s.rounds;
    double survivors = f.success_probability;
    for (int r = 0; r < s.rounds; ++r) {
        const double t = a2 + b2 + v0 + v1 + v2;
        a2 /= t;
        b2 /= t;
        v0 /= t;
        v1 /= t;
        v2 /= t;
        const double p1 = 2.0 * a2 * b2;
        const double p0 = a2 * a2 + b2 * b2 + v0 * v0 + v1 * v1 + v2 * v2;
        rep.per_round_yields.push_back(survivors * p1 / 2.0);
        rep.cumulative += rep.per_round_yields.back();
        survivors *= p0 / 2.0;
        a2 *= a2;
        b2 *= b2;
        v0 *= v0;
        v1 *= v1;
        v2 *= v2;
    }
    return rep;
}

WFiltered w_filtered(int parties, const channels::ADParams& d,
                     const channels::NRWMParams& w) {
    check_parties(parties);
    const double dv = d.value(), db = 1.0 - dv, wb = 1.0 - w.value();
    WFiltered out;
    out.fidelity = db / (dv * wb + db);
    out.success_probability = std::pow(wb, parties - 1) * (db + dv * wb);
    return out;
}

WRoundResult w_round(int parties, double fidelity_in) {
    check_parties(parties);
    if (!(fidelity_in > 0.0) || fidelity_in > 1.0)
        throw ArgumentError("input fidelity must lie in (0, 1]");
    const double f2 = fidelity_in * fidelity_in;
    const double g = 1.0 - fidelity_in;
    const double n = static_cast<double>(parties);
    WRoundResult out;
    out.fidelity = f2 / (f2 + n * g * g);
    out.success_probability = f2 / n + g * g;
    return out;
}

double w_threshold_strength(int parties, double d) {
    check_parties(parties);
    if (d < 0.0 || d >= 1.0) throw ArgumentError("damping rate outside [0, 1)");
    if (d == 0.0) return 0.0;
    const double n = static_cast<double>(parties);
    return std::max(0.0, ((n + 1.0) * d - 1.0) / (n * d));
}

WTrajectory w_trajectory(const WScenario& s) {
    check_parties(s.parties);
    const double targetF = target_fidelity(s.epsilon);
    const double n = static_cast<double>(s.parties);
    const double dv = s.d.value(), db = 1.0 - dv, wb = 1.0 - s.w.value();
    const double lambda0 = wb * dv / db;

    if (n * lambda0 >= 1.0)
        throw NotDistillableError(
            "fidelity iteration does not converge at these parameters; "
            "filter strength must exceed the threshold",
            w_threshold_strength(s.parties, dv));

    WTrajectory tr;
    tr.filter_probability = std::pow(wb, s.parties - 1) * (db + dv * wb);

    // Minimal step count: closed form, then guarded by the exact fidelity
    // comparison so minimality holds bit-for-bit like direct iteration.
    auto fidelity_at = [&](int i) {
        double u = n * lambda0;
        for (int k = 0; k < i; ++k) u *= u;
        return 1.0 / (1.0 + u / n);
    };
    int m = 0;
    if (fidelity_at(0) < targetF) {
        const double c = n * s.epsilon / (1.0 - s.epsilon);
        const double r = std::log(c) / std::log(n * lambda0);
        m = std::max(1, static_cast<int>(std::ceil(std::log2(r))));
        while (m > 1 && fidelity_at(m - 1) >= targetF) --m;
        while (fidelity_at(m) < targetF) ++m;
    }
    tr.steps = m;

    double u = n * lambda0;  // u_i = N * lambda_i
    tr.lambdas.push_back(u / n);
    tr.fidelities.push_back(1.0 / (1.0 + u / n));
    tr.efficiency = tr.filter_probability;
    for (int i = 1; i <= m; ++i) {
        const double f_prev = tr.fidelities.back();
        const double p = f_prev * f_prev / n + (1.0 - f_prev) * (1.0 - f_prev);
        u *= u;
        tr.lambdas.push_back(u / n);
        tr.fidelities.push_back(1.0 / (1.0 + u / n));
        tr.step_probs.push_back(p);
        tr.efficiency *= p / 2.0;
    }
    return tr;
}

double efficiency_ratio(int parties, const channels::ADParams& d,
                        const channels::NRWMParams& w, double epsilon) {
    WTrajectory reference;
    try {
        reference = w_trajectory(
            WScenario{parties, d, channels::NRWMParams(0.0), epsilon});
    } catch (const NotDistillableError&) {
        throw RatioUndefinedError(
            "the unfiltered reference protocol does not converge for d >= "
            "1/(N+1); only the filtered efficiency is defined here");
    }
    const WTrajectory filtered = w_trajectory(WScenario{parties, d, w, epsilon});
    return filtered.efficiency / reference.efficiency;
}

std::vector<RegionLevel> region_boundaries(int parties, double epsilon,
                                           int max_steps) {
    check_parties(parties);
    target_fidelity(epsilon);
    if (max_steps < 0) throw ArgumentError("max_steps must be nonnegative");
    const double c =
        static_cast<double>(parties) * epsilon / (1.0 - epsilon);
    std::vector<RegionLevel> levels;
    for (int m = 0; m <= max_steps; ++m)
        levels.push_back(RegionLevel{m, std::pow(c, std::exp2(-m))});
    return levels;
}

namespace {

// ln(3 + e^t), stable for large |t|.
double log_3_plus_exp(double t) {
    if (t > 40.0) return t + std::log1p(3.0 * std::exp(-t));
    return std::log(3.0 + std::exp(t));
}

}  // namespace

bool boundary_inequality(int m, int m_prime, double x, double y) {
    if (m < 0 || m_prime < 0) throw ArgumentError("step counts must be >= 0");
    if (!(x > 0.0) || x > 1.0)
        throw ArgumentError("x = 1-w must lie in (0, 1]");
    if (!(y > 0.0)) throw ArgumentError("y = 3d/(1-d) must be positive");
    const double lx = std::log(x), ly = std::log(y);
    const double lxy = lx + ly;

    double lhs = (m_prime - m) * std::log(2.0) + 2.0 * lx +
                 log_3_plus_exp(std::exp2(m) * lxy);
    for (int i = 0; i < m_prime; ++i) lhs += log_3_plus_exp(std::exp2(i) * ly);

    double rhs = log_3_plus_exp(std::exp2(m_prime) * ly);
    for (int i = 0; i < m; ++i) rhs += log_3_plus_exp(std::exp2(i) * lxy);

    return lhs <= rhs;
}

double asymptotic_ratio(int parties, const channels::ADParams& d,
                        const channels::NRWMParams& w) {
    check_parties(parties);
    const double n = static_cast<double>(parties);
    const double dv = d.value(), db = 1.0 - dv, wb = 1.0 - w.value();
    const double upper = n * dv / db;       // N * lambda'_0 (w = 0)
    const double lower = wb * upper;        // N * lambda_0
    if (upper >= 1.0)
        throw ArgumentError(
            "asymptotic ratio defined only for d < 1/(N+1)");
    if (lower > 1.0 - 1e-6)
        throw NumericalError(
            "integration endpoint too close to the u = 1 singularity");
    // Empty interval: w = 0 gives exactly 1, d = 0 gives the bare filter cost.
    if (lower == upper) return std::pow(wb, parties - 1);

    auto integrand = [n](double u) {
        return std::log(2.0 * n + 2.0 * u) / (u * std::log(u));
    };
    double error = 0.0;
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            integrand, lower, upper, 15, 1e-11, &error);
    if (!(std::abs(error) <= 1e-7 * std::max(1.0, std::abs(integral))))
        throw NumericalError("quadrature failed to converge, error estimate " +
                             std::to_string(error));
    return std::pow(wb, parties - 1) * std::exp(-integral / std::log(2.0));
}

namespace {

// Efficiency as a function of w at fixed (N, d, eps); NaN when not distillable.
double efficiency_or_nan(int parties, const channels::ADParams& d, double w,
                         double epsilon) {
    if (w < 0.0 || w >= 1.0) return std::numeric_limits<double>::quiet_NaN();
    try {
        return w_trajectory(
                   WScenario{parties, d, channels::NRWMParams(w), epsilon})
            .efficiency;
    } catch (const NotDistillableError&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

}  // namespace

OptimalW optimal_w(int parties, const channels::ADParams& d, double epsilon) {
    check_parties(parties);
    target_fidelity(epsilon);

    constexpr double coarse = 1e-3;
    double best_w = -1.0, best_e = -1.0;
    for (int k = 0; k < 1000; ++k) {
        const double w = k * coarse;
        const double e = efficiency_or_nan(parties, d, w, epsilon);
        if (std::isnan(e)) continue;
        if (e > best_e) {
            best_e = e;
            best_w = w;
        }
    }
    if (best_w < 0.0)
        throw NotDistillableError("no filter strength below 1 converges",
                                  w_threshold_strength(parties, d.value()));

    // Golden-section refinement inside the best coarse bracket. Points where
    // the trajectory does not converge evaluate to NaN and count as -inf.
    double lo = std::max(0.0, best_w - coarse);
    double hi = std::min(1.0 - 1e-9, best_w + coarse);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    double f1 = efficiency_or_nan(parties, d, x1, epsilon);
    double f2 = efficiency_or_nan(parties, d, x2, epsilon);
    auto consider = [&](double w, double e) {
        if (!std::isnan(e) && (e > best_e || (e == best_e && w < best_w))) {
            best_e = e;
            best_w = w;
        }
    };
    while (hi - lo > 1e-6) {
        const double g1 = std::isnan(f1) ? -1.0 : f1;
        const double g2 = std::isnan(f2) ? -1.0 : f2;
        if (g1 >= g2) {  // ties move toward smaller w
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = efficiency_or_nan(parties, d, x1, epsilon);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = efficiency_or_nan(parties, d, x2, epsilon);
        }
        consider(x1, f1);
        consider(x2, f2);
    }

    OptimalW out;
    out.w = best_w;
    out.efficiency = best_e;
    out.steps = w_trajectory(WScenario{parties, d, channels::NRWMParams(best_w),
                                       epsilon})
                    .steps;
    return out;
}

}  // namespace qdistil::multipartite_edp
