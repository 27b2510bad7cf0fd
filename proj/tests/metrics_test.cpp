#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "pmbsi/metrics.hpp"
#include "pmbsi/errors.hpp"

using namespace pmbsi;

TEST_CASE("mae examples") {
    std::vector<double> a{1, 2}, f{2, 4};
    CHECK(mae(a, f) == doctest::Approx(1.5));
    CHECK(mae(a, a) == 0.0);
    std::vector<double> empty;
    CHECK_THROWS_AS(mae(empty, empty), NumericalError);
    std::vector<double> shorter{1};
    CHECK_THROWS_AS(mae(a, shorter), NumericalError);
}

TEST_CASE("smape single-term arithmetic") {
    std::vector<double> a{1}, f{3};
    CHECK(smape(a, f, SmapeVariant::standard) == doctest::Approx(100.0));
    // 100 * 0.5 * |1-3| / (1+3) = 25; consistent with standard == 4x literal
    CHECK(smape(a, f, SmapeVariant::literal) == doctest::Approx(25.0));
    CHECK(smape(a, a, SmapeVariant::standard) == 0.0);
    CHECK(smape(a, a, SmapeVariant::literal) == 0.0);
}

TEST_CASE("smape zero-denominator points contribute zero") {
    std::vector<double> a{0, 1}, f{0, 1};
    CHECK(smape(a, f, SmapeVariant::standard) == 0.0);
    std::vector<double> g{0, 3};
    CHECK(smape(a, g, SmapeVariant::standard) == doctest::Approx(50.0));
}

TEST_CASE("standard smape equals 4x literal smape") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> a, f;
        for (int i = 0; i < 20; ++i) {
            a.push_back(u(rng));
            f.push_back(u(rng));
        }
        const double s = smape(a, f, SmapeVariant::standard);
        const double l = smape(a, f, SmapeVariant::literal);
        CHECK(s == doctest::Approx(4.0 * l).epsilon(1e-12));
    }
}

TEST_CASE("metrics are permutation invariant and smape is symmetric") {
    std::vector<double> a{1, 5, 2, 9}, f{2, 4, 2.5, 7};
    std::vector<double> ap{9, 1, 2, 5}, fp{7, 2, 2.5, 4};
    CHECK(mae(a, f) == doctest::Approx(mae(ap, fp)).epsilon(1e-15));
    CHECK(smape(a, f) == doctest::Approx(smape(ap, fp)).epsilon(1e-15));
    CHECK(smape(a, f) == doctest::Approx(smape(f, a)).epsilon(1e-15));
}
