#include <doctest.h>

#include <cmath>
#include <numeric>

#include "qdistil/bell_edp.hpp"

using namespace qdistil;
using namespace qdistil::bell_edp;
using channels::ADParams;
using channels::NRWMParams;

namespace {

BellScenario scenario(double d1, double d2, double w1, double w2) {
    return BellScenario{ADParams(d1), ADParams(d2), NRWMParams(w1),
                        NRWMParams(w2)};
}

}  // namespace

TEST_CASE("filtered Bell state at reference points") {
    auto f = bell_filtered_state(scenario(0.5, 0.5, 0.0, 0.0));
    CHECK(f.success_probability == doctest::Approx(1.0));
    CHECK(f.concurrence == doctest::Approx(0.5));

    f = bell_filtered_state(scenario(0.5, 0.5, 0.5, 0.5));
    CHECK(f.success_probability == doctest::Approx(0.375));
    CHECK(f.concurrence == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("filtering trades success probability for concurrence") {
    auto base = bell_filtered_state(scenario(0.5, 0.5, 0.0, 0.0));
    auto filt = bell_filtered_state(scenario(0.5, 0.5, 0.5, 0.5));
    CHECK(filt.concurrence > base.concurrence);
    CHECK(filt.success_probability < base.success_probability);
}

TEST_CASE("one round on a perfect Bell pair: both outcomes at 1/2") {
    const double r2 = 1.0 / std::sqrt(2.0);
    auto out = two_copy_round(TwoCopyRoundParams{r2, r2, 0.0});
    CHECK(out.p_success == doctest::Approx(0.5));
    CHECK(out.p_recycle == doctest::Approx(0.5));
    CHECK(out.next.vac == 0.0);
}

TEST_CASE("round parameters must be admissible") {
    CHECK_THROWS_AS(two_copy_round(TwoCopyRoundParams{-1.0, 0.5, 0.0}),
                    ArgumentError);
    CHECK_THROWS_AS(two_copy_round(TwoCopyRoundParams{0.0, 0.0, 0.0}),
                    ArgumentError);
    CHECK_THROWS_AS(two_copy_efficiency(scenario(0, 0, 0, 0), 0), ArgumentError);
}

TEST_CASE("two-copy efficiency reference values") {
    // noiseless, one round: a quarter of the pairs convert
    CHECK(two_copy_efficiency(scenario(0, 0, 0, 0), 1).cumulative ==
          doctest::Approx(0.25));
    CHECK(two_copy_efficiency(scenario(0.3, 0.7, 0, 0), 1).cumulative ==
          doctest::Approx(0.0525));
    CHECK(two_copy_efficiency(scenario(0.5, 0.5, 0.5, 0.5), 10).cumulative ==
          doctest::Approx(0.049999999173091406).epsilon(1e-12));
}

TEST_CASE("cumulative yield is the sum of the per-round yields") {
    auto rep = two_copy_efficiency(scenario(0.4, 0.2, 0.3, 0.1), 10);
    CHECK(rep.rounds == 10);
    CHECK(rep.per_round_yields.size() == 10);
    const double total = std::accumulate(rep.per_round_yields.begin(),
                                         rep.per_round_yields.end(), 0.0);
    CHECK(rep.cumulative == doctest::Approx(total).epsilon(1e-15));
}

TEST_CASE("filtering never helps symmetric Bell distribution") {
    for (double d : {0.2, 0.5, 0.8}) {
        auto none = two_copy_efficiency(scenario(d, d, 0.0, 0.0), 10);
        auto some = two_copy_efficiency(scenario(d, d, 0.3, 0.3), 10);
        CHECK(none.cumulative > some.cumulative);
    }
}

TEST_CASE("deep rounds at strong damping stay finite") {
    auto rep = two_copy_efficiency(scenario(0.9, 0.9, 0.8, 0.8), 10);
    for (double y : rep.per_round_yields) CHECK(std::isfinite(y));
    CHECK(rep.cumulative > 0.0);
}

TEST_CASE("nonmax pipeline: one-round value at d = w = 1/2 is 2/33") {
    auto rep = nonmax_initial_pipeline(ADParams(0.5), NRWMParams(0.5), 1);
    CHECK(rep.cumulative == doctest::Approx(2.0 / 33.0).epsilon(1e-12));
}

TEST_CASE("nonmax pipeline reduces to the Bell pipeline at d = 0") {
    auto a = nonmax_initial_pipeline(ADParams(0.0), NRWMParams(0.3), 5);
    auto b = two_copy_efficiency(scenario(0.0, 0.0, 0.3, 0.3), 5);
    CHECK(a.cumulative == doctest::Approx(b.cumulative).epsilon(1e-12));
}

TEST_CASE("bisection outcome statistics sum to one") {
    for (int n : {2, 8, 32}) {
        for (double t : {0.25, 0.8}) {
            double total = 0.0;
            for (int a = 0; a <= n; ++a)
                for (int b = 0; a + b <= n; ++b)
                    total += bisection_outcome_stats(n, t, a, b).probability;
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("full-weight outcomes carry the binomial rank") {
    auto s = bisection_outcome_stats(4, 0.5, 2, 2);
    REQUIRE(s.rank.has_value());
    CHECK(*s.rank == 6);
    CHECK(s.outcome_count == 6);  // C(4,4) * C(4,2)
    CHECK_FALSE(bisection_outcome_stats(4, 0.5, 1, 2).rank.has_value());
    CHECK_THROWS_AS(bisection_outcome_stats(4, 0.5, 3, 2), ArgumentError);
    CHECK_THROWS_AS(bisection_outcome_stats(64, 0.5, 0, 0), ArgumentError);
}

TEST_CASE("average outcome entropy at reference arguments") {
    CHECK(hamming_entropy(1) == doctest::Approx(0.0));
    CHECK(hamming_entropy(4) == doctest::Approx(0.4923402344426084).epsilon(1e-14));
    CHECK(hamming_entropy(32) == doctest::Approx(0.8891571877548791).epsilon(1e-14));
    CHECK(hamming_entropy(64) == doctest::Approx(0.9367646051940611).epsilon(1e-14));
    CHECK_THROWS_AS(hamming_entropy(0), ArgumentError);
    CHECK_THROWS_AS(hamming_entropy(65), ArgumentError);
}

TEST_CASE("bisection efficiency reference value") {
    auto rep = bisection_efficiency(ADParams(0.5), NRWMParams(0.5), 32);
    CHECK(rep.rounds == 5);
    CHECK(rep.cumulative == doctest::Approx(0.06246544625246661).epsilon(1e-12));
}

TEST_CASE("bisection efficiency declines with filter strength") {
    double prev = bisection_efficiency(ADParams(0.3), NRWMParams(0.0), 32).cumulative;
    for (double w : {0.2, 0.4, 0.6, 0.8}) {
        const double cur =
            bisection_efficiency(ADParams(0.3), NRWMParams(w), 32).cumulative;
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("bisection validates the copy count") {
    CHECK_THROWS_AS(bisection_efficiency(ADParams(0.1), NRWMParams(0.1), 3),
                    ArgumentError);
    CHECK_THROWS_AS(bisection_efficiency(ADParams(0.1), NRWMParams(0.1), 128),
                    ArgumentError);
    CHECK_NOTHROW(bisection_efficiency(ADParams(0.1), NRWMParams(0.1), 64));
}
