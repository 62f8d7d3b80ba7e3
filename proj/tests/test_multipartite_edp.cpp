#include <doctest.h>

#include <cmath>

#include "qdistil/multipartite_edp.hpp"

using namespace qdistil;
using namespace qdistil::multipartite_edp;
using channels::ADParams;
using channels::NRWMParams;

TEST_CASE("filtered GHZ state at the reference point") {
    auto f = ghz_noisy_and_filtered(ADParams(0.5), NRWMParams(0.5));
    CHECK(f.success_probability == doctest::Approx(0.234375));
    CHECK(f.params.amp001 == doctest::Approx(std::sqrt(0.5) * 0.5));
    CHECK(f.params.amp110 == doctest::Approx(0.5 * std::sqrt(0.5)));
    CHECK(f.params.vac010 == doctest::Approx(f.params.vac100));
}

TEST_CASE("GHZ ten-round reference value") {
    auto rep = ghz_efficiency(GHZScenario{ADParams(0.5), NRWMParams(0.5), 10});
    CHECK(rep.cumulative ==
          doctest::Approx(0.020121051162723252).epsilon(1e-12));
    CHECK(rep.per_round_yields.size() == 10);
}

TEST_CASE("filtering never helps GHZ distribution") {
    for (double d : {0.2, 0.5, 0.8}) {
        auto none = ghz_efficiency(GHZScenario{ADParams(d), NRWMParams(0.0), 10});
        auto some = ghz_efficiency(GHZScenario{ADParams(d), NRWMParams(0.3), 10});
        CHECK(none.cumulative > some.cumulative);
    }
}

TEST_CASE("filtered W state at the reference point") {
    auto f = w_filtered(3, ADParams(0.4), NRWMParams(0.5));
    CHECK(f.fidelity == doctest::Approx(0.75));
    CHECK(f.success_probability == doctest::Approx(0.2));
    CHECK_THROWS_AS(w_filtered(1, ADParams(0.1), NRWMParams(0.1)), ArgumentError);
}

TEST_CASE("the W round fixed point N/(N+1) is exact in binary arithmetic") {
    auto r = w_round(3, 0.75);
    CHECK(r.fidelity == 0.75);
    CHECK(r.success_probability == 0.25);
}

TEST_CASE("the W round improves above the fixed point and degrades below") {
    CHECK(w_round(3, 0.8).fidelity > 0.8);
    CHECK(w_round(3, 0.7).fidelity < 0.7);
    CHECK(w_round(4, 0.9).fidelity > 0.9);
    CHECK_THROWS_AS(w_round(3, 0.0), ArgumentError);
    CHECK_THROWS_AS(w_round(3, 1.1), ArgumentError);
}

TEST_CASE("rescue threshold strength") {
    CHECK(w_threshold_strength(3, 0.3) == doctest::Approx(2.0 / 9.0));
    CHECK(w_threshold_strength(3, 0.2) == 0.0);
    CHECK(w_threshold_strength(4, 0.5) ==
          doctest::Approx((5.0 * 0.5 - 1.0) / (4.0 * 0.5)));
}

TEST_CASE("trajectory step counts at the reference points") {
    CHECK(w_trajectory(WScenario{3, ADParams(0.2), NRWMParams(0.0), 1e-6}).steps == 6);
    CHECK(w_trajectory(WScenario{3, ADParams(0.2), NRWMParams(0.5), 1e-6}).steps == 4);
}

TEST_CASE("trajectories reach the target with a minimal step count") {
    auto tr = w_trajectory(WScenario{3, ADParams(0.15), NRWMParams(0.3), 1e-6});
    REQUIRE(tr.fidelities.size() == static_cast<size_t>(tr.steps) + 1);
    CHECK(tr.fidelities.back() >= 1.0 - 1e-6);
    CHECK(tr.fidelities[tr.steps - 1] < 1.0 - 1e-6);
    double eff = tr.filter_probability;
    for (double p : tr.step_probs) eff *= p / 2.0;
    CHECK(tr.efficiency == doctest::Approx(eff).epsilon(1e-15));
}

TEST_CASE("no distillation steps when the filtered state is already good") {
    auto tr = w_trajectory(WScenario{3, ADParams(0.0), NRWMParams(0.2), 1e-6});
    CHECK(tr.steps == 0);
    CHECK(tr.efficiency == doctest::Approx(tr.filter_probability));
}

TEST_CASE("non-distillable parameters throw and carry the rescue threshold") {
    try {
        w_trajectory(WScenario{3, ADParams(0.3), NRWMParams(0.0), 1e-6});
        FAIL("expected NotDistillableError");
    } catch (const NotDistillableError& e) {
        CHECK(e.threshold() == doctest::Approx(2.0 / 9.0));
    }
}

TEST_CASE("efficiency ratio at the reference point") {
    CHECK(efficiency_ratio(3, ADParams(0.2), NRWMParams(0.5), 1e-6) ==
          doctest::Approx(12.915005194116409).epsilon(1e-12));
    CHECK_THROWS_AS(efficiency_ratio(3, ADParams(0.3), NRWMParams(0.5), 1e-6),
                    RatioUndefinedError);
}

TEST_CASE("region levels bracket the computed step counts") {
    const double eps = 1e-6;
    auto levels = region_boundaries(3, eps, 12);
    REQUIRE(levels.size() == 13);
    for (double d : {0.05, 0.12, 0.2}) {
        for (double w : {0.0, 0.3, 0.7}) {
            const int m =
                w_trajectory(WScenario{3, ADParams(d), NRWMParams(w), eps}).steps;
            const double q = 3.0 * (1.0 - w) * d / (1.0 - d);
            CHECK(q <= levels[m].level);
            if (m > 0) CHECK(q > levels[m - 1].level);
        }
    }
}

TEST_CASE("the closed-form boundary test matches the exact ratio sign") {
    // equal step counts without filtering: both protocols identical, ratio 1
    CHECK(boundary_inequality(5, 5, 1.0, 0.6));

    // reference point with ratio 12.9 > 1
    CHECK_FALSE(boundary_inequality(4, 6, 0.5, 3.0 * 0.2 / 0.8));

    // strong filtering at weak damping wastes probability: ratio < 1
    const double d = 0.05, w = 0.9, eps = 1e-6;
    const int m = w_trajectory(WScenario{3, ADParams(d), NRWMParams(w), eps}).steps;
    const int mp = w_trajectory(WScenario{3, ADParams(d), NRWMParams(0.0), eps}).steps;
    const double ratio = efficiency_ratio(3, ADParams(d), NRWMParams(w), eps);
    CHECK(ratio < 1.0);
    CHECK(boundary_inequality(m, mp, 1.0 - w, 3.0 * d / (1.0 - d)) ==
          (ratio <= 1.0));
}

TEST_CASE("asymptotic ratio reference values and limits") {
    CHECK(asymptotic_ratio(3, ADParams(0.2), NRWMParams(0.5)) ==
          doctest::Approx(8.13183355227538).epsilon(1e-10));
    CHECK(asymptotic_ratio(3, ADParams(0.1), NRWMParams(0.3)) ==
          doctest::Approx(1.0512077987088928).epsilon(1e-10));
    CHECK(asymptotic_ratio(3, ADParams(0.17), NRWMParams(0.0)) == 1.0);
    CHECK(asymptotic_ratio(3, ADParams(0.0), NRWMParams(0.4)) ==
          doctest::Approx(0.36));
    CHECK_THROWS_AS(asymptotic_ratio(3, ADParams(0.25), NRWMParams(0.5)),
                    ArgumentError);
}

TEST_CASE("optimal filter strength dominates the unfiltered protocol") {
    auto best = optimal_w(3, ADParams(0.1), 1e-6);
    const double unfiltered =
        w_trajectory(WScenario{3, ADParams(0.1), NRWMParams(0.0), 1e-6}).efficiency;
    CHECK(best.efficiency >= unfiltered);
    CHECK(best.w >= 0.0);
}

TEST_CASE("beyond the unfiltered threshold only filtering distills") {
    auto rescued = optimal_w(3, ADParams(0.5), 1e-6);
    CHECK(rescued.efficiency > 0.0);
    CHECK(rescued.w > w_threshold_strength(3, 0.5));
    CHECK(rescued.steps > 0);
}
