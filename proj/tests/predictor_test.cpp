#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "pmbsi/invariant.hpp"
#include "pmbsi/predictor.hpp"

using namespace pmbsi;

namespace {
TimeSeries random_positive_series(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.5, 5.0);
    TimeSeries ts;
    for (std::size_t i = 0; i < n; ++i) ts.values.push_back(u(rng));
    return ts;
}
} // namespace

TEST_CASE("constant series with eta2 != 0 is forecast exactly") {
    TimeSeries ts;
    const double c = 2.7182818;
    ts.values.assign(30, c);
    StringParams p{6, 2, 0.3, -0.4, 1.9};
    const Forecast f = predict_one(ts, 10, p);
    REQUIRE(f.value.has_value());
    CHECK(*f.value == c);
}

TEST_CASE("constant series with eta2 == 0 is undefined (0/0)") {
    TimeSeries ts;
    ts.values.assign(30, 1.5);
    StringParams p{6, 2, 0.3, 0.0, 1.9};
    const Forecast f = predict_one(ts, 10, p);
    CHECK_FALSE(f.value.has_value());
}

TEST_CASE("predict_one matches the independent oracle") {
    std::mt19937_64 rng(77);
    const TimeSeries ts = random_positive_series(rng, 20);
    StringParams p{5, 2, 0.4, 0.2, 1.3};
    const Forecast f = predict_one(ts, 10, p);
    const auto want = oracle::predict(ts.values, 10, 5, 2, 0.4, 0.2, 1.3);
    REQUIRE(f.value.has_value() == want.has_value());
    if (f.value)
        CHECK(*f.value == doctest::Approx(*want).epsilon(1e-12));
}

TEST_CASE("predict_one throws on insufficient history, distinct from undefined") {
    std::mt19937_64 rng(3);
    const TimeSeries ts = random_positive_series(rng, 20);
    StringParams p{5, 2, 0.1, 0.1, 1.0};
    CHECK_THROWS_AS(predict_one(ts, 3, p), std::out_of_range);
}

TEST_CASE("no lookahead: samples after tau0 never influence the forecast") {
    std::mt19937_64 rng(13);
    TimeSeries ts = random_positive_series(rng, 30);
    StringParams p{6, 3, -0.2, 0.5, 0.8};
    const std::size_t tau0 = 15;
    const Forecast before = predict_one(ts, tau0, p);
    for (std::size_t i = tau0 + 1; i < ts.size(); ++i) ts.values[i] = 1e9 + i;
    const Forecast after = predict_one(ts, tau0, p);
    REQUIRE(before.value.has_value() == after.value.has_value());
    if (before.value) CHECK(*before.value == *after.value);
}

TEST_CASE("round trip: substituting the forecast reproduces the invariant") {
    std::mt19937_64 rng(19);
    int checked = 0;
    while (checked < 50) {
        TimeSeries ts = random_positive_series(rng, 25);
        StringParams p{5, 2, 0.3, -0.25, 1.4};
        const std::size_t tau0 = 12;
        const Forecast f = predict_one(ts, tau0, p);
        if (!f.value) continue;
        const std::size_t tau_prime = tau0 - static_cast<std::size_t>(p.lambda());
        ts.values[tau_prime + p.ls] = *f.value;
        const double c_hist = compute_C(ts, tau0 - p.ls, p);
        const double c_new = compute_C(ts, tau_prime, p);
        CHECK(c_new ==
              doctest::Approx(c_hist).epsilon(1e-9).scale(std::max(1.0, std::abs(c_hist))));
        ++checked;
    }
}

TEST_CASE("homogeneity: with Q=1 and eta=0 the forecast scales with the input") {
    std::mt19937_64 rng(29);
    TimeSeries ts = random_positive_series(rng, 30);
    StringParams p{6, 2, 0.0, 0.0, 1.0};
    const Forecast f = predict_one(ts, 14, p);
    REQUIRE(f.value.has_value());
    const double k = 3.75;
    TimeSeries scaled = ts;
    for (double& v : scaled.values) v *= k;
    const Forecast g = predict_one(scaled, 14, p);
    REQUIRE(g.value.has_value());
    CHECK(*g.value == doctest::Approx(k * *f.value).epsilon(1e-9));
}

TEST_CASE("predict_range substitution policy") {
    TimeSeries ts;
    ts.values.assign(30, 2.0); // constant: defined iff eta2 != 0

    SUBCASE("horizon 1 falls back to the most recent input") {
        StringParams p{4, 1, 0.2, 0.0, 1.0};
        const RangeResult r = predict_range(ts, p, 10, 15);
        for (const Forecast& f : r.forecasts) {
            CHECK(*f.value == 2.0);
            CHECK(f.substituted == Substitution::naive_fallback);
        }
        CHECK(r.substitution_rate == 1.0);
    }

    SUBCASE("no undefined forecasts means pointwise predict_one") {
        StringParams p{4, 1, 0.2, 0.5, 1.0};
        const RangeResult r = predict_range(ts, p, 10, 15);
        CHECK(r.substitution_rate == 0.0);
        for (std::size_t i = 0; i < r.forecasts.size(); ++i) {
            const Forecast one = predict_one(ts, 10 + i, p);
            CHECK(*r.forecasts[i].value == *one.value);
            CHECK(r.forecasts[i].substituted == Substitution::none);
        }
    }

    SUBCASE("horizon > 1 reuses the last valid forecast") {
        // ramp then plateau: early windows vary (defined), late windows are
        // constant with eta2 = 0 (undefined)
        TimeSeries mixed;
        for (int i = 0; i < 12; ++i) mixed.values.push_back(1.0 + 0.3 * i);
        mixed.values.insert(mixed.values.end(), 18, mixed.values.back());
        StringParams p{4, 2, 0.2, 0.0, 1.0};
        const RangeResult r = predict_range(mixed, p, 6, 28);
        double last_valid = 0.0;
        bool have_valid = false;
        for (std::size_t i = 0; i < r.forecasts.size(); ++i) {
            const Forecast raw = predict_one(mixed, 6 + i, p);
            if (raw.value) {
                CHECK(r.forecasts[i].substituted == Substitution::none);
                last_valid = *raw.value;
                have_valid = true;
            } else if (have_valid) {
                CHECK(r.forecasts[i].substituted == Substitution::last_valid_fallback);
                CHECK(*r.forecasts[i].value == last_valid);
            } else {
                CHECK(r.forecasts[i].substituted == Substitution::naive_fallback);
                CHECK(*r.forecasts[i].value == mixed.values[6 + i]);
            }
        }
        CHECK(r.substitution_rate > 0.0);
    }
}

TEST_CASE("iterated_predict") {
    SUBCASE("one step equals predict_one") {
        std::mt19937_64 rng(101);
        const TimeSeries ts = random_positive_series(rng, 25);
        StringParams p{4, 1, 0.3, 0.4, 1.2};
        const Forecast direct = predict_one(ts, 12, p);
        const Forecast iter = iterated_predict(ts, p, 12, 1);
        REQUIRE(direct.value.has_value());
        CHECK(*iter.value == *direct.value);
    }

    SUBCASE("constant series is a fixed point at any depth") {
        TimeSeries ts;
        ts.values.assign(20, 3.25);
        StringParams p{4, 1, 0.1, 0.5, 1.5};
        for (std::size_t steps : {1u, 3u, 7u}) {
            const Forecast f = iterated_predict(ts, p, 10, steps);
            CHECK(*f.value == 3.25);
        }
    }

    SUBCASE("requires a 1-step model") {
        TimeSeries ts;
        ts.values.assign(20, 1.0);
        StringParams p{4, 2, 0.1, 0.5, 1.5};
        CHECK_THROWS_AS(iterated_predict(ts, p, 10, 2), NumericalError);
    }
}

TEST_CASE("naive_forecast returns the current value at any horizon") {
    TimeSeries ts;
    ts.values = {1, 2, 5, 4};
    CHECK(naive_forecast(ts, 2, 1) == 5.0);
    CHECK(naive_forecast(ts, 2, 7) == 5.0);
    CHECK_THROWS_AS(naive_forecast(ts, 9, 1), std::out_of_range);
}
