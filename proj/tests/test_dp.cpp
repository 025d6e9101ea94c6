#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "pgb/dp.hpp"

using namespace pgb;

TEST_CASE("laplace_noise: zero sensitivity is exactly zero") {
    Rng rng(1);
    for (int i = 0; i < 100; ++i)
        CHECK(laplace_noise(SensitivityBound::global(0.0), 0.5, rng) == 0.0);
}

TEST_CASE("laplace_noise rejects bad arguments") {
    Rng rng(1);
    CHECK_THROWS(laplace_noise(SensitivityBound::global(1.0), 0.0, rng));
    CHECK_THROWS(laplace_noise(SensitivityBound::global(-1.0), 1.0, rng));
    CHECK_THROWS(laplace_noise(SensitivityBound::smooth(1.0, 0.1), 1.0, rng));
}

TEST_CASE("laplace_noise moments: mean ~ 0, variance ~ 2b^2") {
    Rng rng(12345);
    const int n = 100000;
    double sum = 0.0, sum_sq = 0.0;
    auto sens = SensitivityBound::global(1.0);
    for (int i = 0; i < n; ++i) {
        double x = laplace_noise(sens, 1.0, rng);
        sum += x;
        sum_sq += x * x;
    }
    double mean = sum / n;
    double var = sum_sq / n - mean * mean;
    CHECK(std::fabs(mean) < 0.02);
    CHECK(std::fabs(var - 2.0) < 0.05 * 2.0);
}

TEST_CASE("laplace_noise is deterministic per seed") {
    Rng a(7), b(7);
    auto sens = SensitivityBound::global(1.0);
    for (int i = 0; i < 10; ++i)
        CHECK(laplace_noise(sens, 0.5, a) == laplace_noise(sens, 0.5, b));
}

TEST_CASE("smooth beta calibration") {
    PrivacyBudget budget{2.0, 0.01};
    CHECK(smooth_beta(budget) == doctest::Approx(0.18876).epsilon(1e-3));
    CHECK(std::fabs(smooth_beta(budget) - 2.0 / (2.0 * std::log(200.0))) < 1e-15);
}

TEST_CASE("smooth_noise basics") {
    PrivacyBudget budget{1.0, 0.01};
    double beta = smooth_beta(budget);

    Rng rng(3);
    CHECK(smooth_noise(SensitivityBound::smooth(0.0, beta), budget, rng) == 0.0);

    Rng a(9), b(9);
    auto bound = SensitivityBound::smooth(1.0, beta);
    CHECK(smooth_noise(bound, budget, a) == smooth_noise(bound, budget, b));

    PrivacyBudget pure{1.0, 0.0};
    Rng c(1);
    CHECK_THROWS(smooth_noise(bound, pure, c));
    // inconsistent beta
    CHECK_THROWS(smooth_noise(SensitivityBound::smooth(1.0, beta * 2.0), budget, c));
}

TEST_CASE("smooth_sensitivity_upper_bound") {
    // constant local sensitivity: the maximum sits at t = 0
    auto constant = [](int) { return 3.0; };
    CHECK(smooth_sensitivity_upper_bound(constant, 0.5, 20).value == doctest::Approx(3.0));

    // (t + 1) e^{-t}: enumerate the oracle over t in 0..10
    auto linear = [](int t) { return static_cast<double>(t + 1); };
    double oracle = 0.0;
    for (int t = 0; t <= 10; ++t)
        oracle = std::max(oracle, (t + 1) * std::exp(-static_cast<double>(t)));
    auto bound = smooth_sensitivity_upper_bound(linear, 1.0, 10);
    CHECK(bound.value == doctest::Approx(oracle));
    CHECK(bound.value == doctest::Approx(1.0));

    // beta = 0: no decay, the cap (or t_max) dominates
    CHECK(smooth_sensitivity_upper_bound(linear, 0.0, 10).value == doctest::Approx(11.0));

    // result is never below the local sensitivity at the database itself
    for (double beta : {0.0, 0.3, 2.0})
        CHECK(smooth_sensitivity_upper_bound(linear, beta, 50).value >= linear(0));

    // analytic tail for globally capped local sensitivity
    auto capped = smooth_sensitivity_upper_bound(constant, 1e-6, 2, 100.0);
    CHECK(capped.value == doctest::Approx(100.0 * std::exp(-1e-6 * 3.0)));
}

TEST_CASE("exponential_select: degenerate cases") {
    Rng rng(5);
    CHECK(exponential_select({4.2}, 1.0, 1.0, rng) == 0);
    CHECK_THROWS(exponential_select({}, 1.0, 1.0, rng));
    CHECK_THROWS(exponential_select({1.0, 2.0}, 0.0, 1.0, rng));
}

TEST_CASE("exponential_select: equal scores select uniformly") {
    Rng rng(77);
    const int draws = 100000;
    std::vector<double> scores = {1.0, 1.0, 1.0, 1.0};
    std::map<std::size_t, int> freq;
    for (int i = 0; i < draws; ++i) ++freq[exponential_select(scores, 1.0, 1.0, rng)];
    for (const auto& [idx, count] : freq)
        CHECK(std::fabs(count / static_cast<double>(draws) - 0.25) < 0.02);
}

TEST_CASE("exponential_select: dominant score wins at large epsilon") {
    Rng rng(78);
    std::vector<double> scores = {0.0, 10.0};
    int high = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i)
        if (exponential_select(scores, 1.0, 10.0, rng) == 1) ++high;
    CHECK(high / static_cast<double>(draws) > 0.999);
}

TEST_CASE("exponential_select is invariant under score translation") {
    // identical seeds and shifted scores give identical picks (Gumbel-max)
    Rng a(91), b(91);
    std::vector<double> scores = {0.3, 1.7, 0.9, 2.2};
    std::vector<double> shifted = {100.3, 101.7, 100.9, 102.2};
    for (int i = 0; i < 1000; ++i)
        CHECK(exponential_select(scores, 1.0, 2.0, a) == exponential_select(shifted, 1.0, 2.0, b));

    // and the frequencies match within 1% across independent streams
    Rng c(92), d(93);
    std::vector<int> freq_plain(4, 0), freq_shift(4, 0);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        freq_plain[exponential_select(scores, 1.0, 2.0, c)]++;
        freq_shift[exponential_select(shifted, 1.0, 2.0, d)]++;
    }
    for (int k = 0; k < 4; ++k)
        CHECK(std::fabs(freq_plain[k] - freq_shift[k]) / static_cast<double>(draws) < 0.01);
}

TEST_CASE("split_budget shares") {
    auto ledger = split_budget({1.0, 0.0}, {{"a", 0.5}, {"b", 0.5}});
    CHECK(ledger.stage("a").epsilon == doctest::Approx(0.5));
    CHECK(ledger.stage("b").epsilon == doctest::Approx(0.5));
    CHECK(ledger.epsilon_sum() == doctest::Approx(1.0).epsilon(1e-12));

    auto thirds = split_budget({3.0, 0.0}, {{"x", 1.0 / 3}, {"y", 1.0 / 3}, {"z", 1.0 / 3}});
    CHECK(thirds.stage("x").epsilon == doctest::Approx(1.0));
    CHECK(std::fabs(thirds.epsilon_sum() - 3.0) <= 1e-12 * 3.0);

    auto with_delta = split_budget({0.1, 0.01}, {{"a", 0.2}, {"b", 0.8}});
    CHECK(with_delta.stage("a").delta == doctest::Approx(0.002));
    CHECK(with_delta.stage("b").delta == doctest::Approx(0.008));

    CHECK_THROWS(split_budget({1.0, 0.0}, {{"a", 0.5}, {"b", 0.6}}));
    CHECK_THROWS(split_budget({1.0, 0.0}, {{"a", -0.5}, {"b", 1.5}}));
    CHECK_THROWS(split_budget({0.0, 0.0}, {{"a", 1.0}}));
}

TEST_CASE("split_budget sum stays exact across magnitudes") {
    for (double eps : {0.1, 1.0, 10.0, 1e6}) {
        auto ledger = split_budget({eps, 0.01}, {{"a", 0.1}, {"b", 0.9}});
        CHECK(std::fabs(ledger.epsilon_sum() - eps) <= 1e-12 * std::max(1.0, eps));
        double dsum = 0.0;
        for (const auto& s : ledger.stages) dsum += s.delta;
        CHECK(dsum <= 0.01 + 1e-15);
    }
}
