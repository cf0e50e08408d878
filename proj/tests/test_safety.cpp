#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "nav/safety.hpp"

using namespace nav;

namespace {

// Five-beam scan: bearings -30, -10, 0, +10, +90 degrees.
ScanData make_scan(double r_m30, double r_m10, double r_0, double r_p10, double r_p90) {
    ScanData s;
    s.bearings = {-0.5236, -0.1745, 0.0, 0.1745, 1.5708};
    s.ranges = {r_m30, r_m10, r_0, r_p10, r_p90};
    return s;
}

}  // namespace

TEST_CASE("assess: threshold bands inside the frontal cone") {
    SafetyConfig cfg;

    SECTION("frontal range below 0.35 is an emergency") {
        const auto a = assess(make_scan(3, 3, 0.30, 3, 3), cfg);
        CHECK(a.level == Assessment::emergency);
        CHECK(a.min_range == 0.30);
        CHECK(a.bearing == 0.0);
    }
    SECTION("frontal range in [0.35, 0.5) is slow-stop") {
        const auto a = assess(make_scan(3, 3, 0.45, 3, 3), cfg);
        CHECK(a.level == Assessment::slow_stop);
    }
    SECTION("frontal range at 0.6 is clear") {
        const auto a = assess(make_scan(3, 3, 0.60, 3, 3), cfg);
        CHECK(a.level == Assessment::clear);
    }
    SECTION("a close return outside the cone is ignored") {
        const auto a = assess(make_scan(0.2, 3, 3, 3, 0.2), cfg);
        CHECK(a.level == Assessment::clear);
    }
    SECTION("the minimizing beam's bearing is reported") {
        const auto a = assess(make_scan(3, 0.4, 3, 0.3, 3), cfg);
        CHECK(a.level == Assessment::emergency);
        CHECK(a.bearing == Catch::Approx(0.1745));
    }
}

TEST_CASE("assess severity is monotone in frontal ranges") {
    SafetyConfig cfg;
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> ur(0.05, 3.5);
    auto rank = [](Assessment a) {
        return a == Assessment::clear ? 0 : a == Assessment::slow_stop ? 1 : 2;
    };
    for (int i = 0; i < 5000; ++i) {
        ScanData s = make_scan(ur(rng), ur(rng), ur(rng), ur(rng), ur(rng));
        const int before = rank(assess(s, cfg).level);
        // shrink one frontal beam
        std::uniform_int_distribution<std::size_t> pick(1, 3);
        const std::size_t idx = pick(rng);
        s.ranges[idx] *= 0.5;
        const int after = rank(assess(s, cfg).level);
        CHECK(after >= before);
    }
}

TEST_CASE("should_replan enforces the attempt cap and cooldown") {
    SafetyConfig cfg;  // max 5, cooldown 5 s

    SECTION("fresh ledger replans immediately") {
        CHECK(should_replan({0, std::nullopt}, 0.0, cfg));
    }
    SECTION("at the cap it refuses forever") {
        CHECK_FALSE(should_replan({5, 100.0}, 1e9, cfg));
    }
    SECTION("cooldown is a strict inequality") {
        CHECK_FALSE(should_replan({1, 10.0}, 14.0, cfg));  // 4 <= 5
        CHECK_FALSE(should_replan({1, 10.0}, 15.0, cfg));  // 5 <= 5
        CHECK(should_replan({1, 10.0}, 15.01, cfg));
    }
}

TEST_CASE("record_attempt stamps the ledger") {
    SafetyConfig cfg;
    ReplanLedger ledger;
    record_attempt(ledger, 3.0, cfg);
    CHECK(ledger.attempts == 1);
    CHECK(ledger.last_replan_time == 3.0);
    // two records just over the cooldown apart are both allowed
    REQUIRE(should_replan(ledger, 8.01, cfg));
    record_attempt(ledger, 8.01, cfg);
    CHECK(ledger.attempts == 2);
}

TEST_CASE("replanning stops forever once the cap is reached") {
    SafetyConfig cfg;
    ReplanLedger ledger;
    double t = 0.0;
    int granted = 0;
    double last_grant = -1e9;
    for (int tick = 0; tick < 100000; ++tick) {
        if (should_replan(ledger, t, cfg)) {
            if (granted > 0) CHECK(t - last_grant > cfg.cooldown_s);
            record_attempt(ledger, t, cfg);
            last_grant = t;
            ++granted;
        }
        t += 0.05;
    }
    CHECK(granted == cfg.max_replans);
    CHECK(ledger.attempts == cfg.max_replans);
}
