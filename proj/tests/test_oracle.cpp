#include <doctest.h>

#include "qdistil/oracle.hpp"

using namespace qdistil;

namespace {

void check_all_pass(const std::vector<oracle::OracleReport>& rows) {
    REQUIRE_FALSE(rows.empty());
    for (const auto& r : rows) {
        INFO(r.quantity, ": closed=", r.closed_form, " simulated=", r.simulated);
        CHECK(r.pass);
    }
}

}  // namespace

TEST_CASE("simulator confirms the filtered Bell closed forms") {
    check_all_pass(oracle::validate_bell_filter(0.3, 0.7, 0.2, 0.6));
    check_all_pass(oracle::validate_bell_filter(0.0, 0.0, 0.0, 0.0));
}

TEST_CASE("simulator confirms the two-copy round closed forms") {
    check_all_pass(oracle::validate_two_copy_round(
        bell_edp::TwoCopyRoundParams{0.9, 0.5, 0.2}));
}

TEST_CASE("simulator confirms the GHZ round closed forms") {
    check_all_pass(oracle::validate_ghz_round(0.45, 0.3));
}

TEST_CASE("simulator confirms the W round closed forms for 2 to 5 parties") {
    for (int parties = 2; parties <= 5; ++parties)
        check_all_pass(oracle::validate_w_round(parties, 0.35, 0.4));
    CHECK_THROWS_AS(oracle::validate_w_round(6, 0.1, 0.1), ArgumentError);
}

TEST_CASE("a short randomized validation run passes") {
    auto s = oracle::run_all(987, 3);
    CHECK(s.passed);
    CHECK(s.max_abs_error < 1e-12);
    CHECK(s.rows.size() > 50);
    CHECK(s.samples == 3);
}

TEST_CASE("an impossible tolerance reports failures instead of throwing") {
    auto s = oracle::run_all(987, 1, 1e-300);
    CHECK_FALSE(s.passed);
    CHECK(s.max_abs_error > 0.0);
}
