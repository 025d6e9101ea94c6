#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "pgb/metrics.hpp"
#include "pgb/rng.hpp"

using namespace pgb;

TEST_CASE("relative error") {
    CHECK(relative_error(10.0, 9.0) == doctest::Approx(0.1));
    CHECK(relative_error(3.7, 3.7) == 0.0);
    CHECK(relative_error(0.0, 5.0) == doctest::Approx(5e12));
    CHECK(re_denominator_guarded(0.0));
    CHECK_FALSE(re_denominator_guarded(1.0));
}

TEST_CASE("mean relative error (absolute mean form)") {
    std::vector<double> a = {1.0, 2.0};
    std::vector<double> b = {2.0, 2.0};
    CHECK(mean_relative_error(a, a) == 0.0);
    CHECK(mean_relative_error(a, b) == doctest::Approx(0.5));
    CHECK_THROWS(mean_relative_error(a, std::vector<double>{1.0}));

    Rng rng(1);
    std::vector<double> x(100), y(100);
    for (std::size_t i = 0; i < 100; ++i) {
        x[i] = rng.uniform();
        y[i] = rng.uniform();
    }
    double oracle = 0.0;
    for (std::size_t i = 0; i < 100; ++i) oracle += std::fabs(x[i] - y[i]);
    oracle /= 100.0;
    CHECK(mean_relative_error(x, y) == doctest::Approx(oracle).epsilon(1e-12));

    // per-entry variant
    double oracle_rel = 0.0;
    for (std::size_t i = 0; i < 100; ++i) oracle_rel += relative_error(x[i], y[i]);
    oracle_rel /= 100.0;
    CHECK(mean_relative_error_per_entry(x, y) == doctest::Approx(oracle_rel).epsilon(1e-12));
}

TEST_CASE("kl divergence") {
    std::vector<double> p = {0.25, 0.25, 0.5};
    CHECK(kl_divergence(p, p) < 1e-7);

    std::vector<double> point = {1.0, 0.0};
    std::vector<double> uniform = {0.5, 0.5};
    CHECK(kl_divergence(point, uniform) == doctest::Approx(std::log(2.0)).epsilon(1e-4));

    Rng rng(2);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> a(5), b(5);
        double sa = 0, sb = 0;
        for (int i = 0; i < 5; ++i) {
            a[i] = rng.uniform();
            b[i] = rng.uniform();
            sa += a[i];
            sb += b[i];
        }
        for (int i = 0; i < 5; ++i) {
            a[i] /= sa;
            b[i] /= sb;
        }
        CHECK(kl_divergence(a, b) >= 0.0);
    }
}

TEST_CASE("hellinger and ks") {
    std::vector<double> p = {0.2, 0.8};
    CHECK(hellinger(p, p) == doctest::Approx(0.0));
    CHECK(ks_statistic(p, p) == doctest::Approx(0.0));

    std::vector<double> mass_a = {1.0, 0.0};
    std::vector<double> mass_b = {0.0, 1.0};
    CHECK(hellinger(mass_a, mass_b) == doctest::Approx(1.0));
    CHECK(ks_statistic(mass_a, mass_b) == doctest::Approx(1.0));

    // padded supports
    std::vector<double> short_mass = {1.0};
    std::vector<double> shifted_mass = {0.0, 1.0};
    CHECK(ks_statistic(short_mass, shifted_mass) == doctest::Approx(1.0));

    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a(6), b(6);
        double sa = 0, sb = 0;
        for (int i = 0; i < 6; ++i) {
            a[i] = rng.uniform();
            b[i] = rng.uniform();
            sa += a[i];
            sb += b[i];
        }
        for (int i = 0; i < 6; ++i) {
            a[i] /= sa;
            b[i] /= sb;
        }
        double hd_oracle = 0.0;
        for (int i = 0; i < 6; ++i) {
            double d = std::sqrt(a[i]) - std::sqrt(b[i]);
            hd_oracle += d * d;
        }
        hd_oracle = std::sqrt(hd_oracle) / std::sqrt(2.0);
        CHECK(hellinger(a, b) == doctest::Approx(hd_oracle).epsilon(1e-12));

        double cdf_a = 0, cdf_b = 0, ks_oracle = 0;
        for (int i = 0; i < 6; ++i) {
            cdf_a += a[i];
            cdf_b += b[i];
            ks_oracle = std::max(ks_oracle, std::fabs(cdf_a - cdf_b));
        }
        CHECK(ks_statistic(a, b) == doctest::Approx(ks_oracle).epsilon(1e-12));
        CHECK(hellinger(a, b) >= 0.0);
        CHECK(hellinger(a, b) <= 1.0);
        CHECK(ks_statistic(a, b) <= 1.0);
    }
}

TEST_CASE("partition scores: identity and degenerate cases") {
    std::vector<int> p = {0, 0, 1, 1, 2};
    PartitionScores self = partition_scores(p, p);
    CHECK(self.nmi == doctest::Approx(1.0));
    CHECK(self.ari == doctest::Approx(1.0));
    CHECK(self.ami == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(self.avg_f1 == doctest::Approx(1.0));
    CHECK_FALSE(self.id_intersection_used);

    std::vector<int> one(10, 0);
    std::vector<int> singletons(10);
    std::iota(singletons.begin(), singletons.end(), 0);
    PartitionScores deg = partition_scores(one, singletons);
    CHECK(deg.nmi == doctest::Approx(0.0));

    // both trivial single-cluster partitions are identical
    PartitionScores trivial = partition_scores(one, one);
    CHECK(trivial.nmi == doctest::Approx(1.0));
    CHECK(trivial.ari == doctest::Approx(1.0));

    // mismatched node sets are scored on the shared prefix and flagged
    std::vector<int> longer = {0, 0, 1, 1, 2, 2};
    CHECK(partition_scores(p, longer).id_intersection_used);
}

TEST_CASE("partition scores match contingency-table oracles") {
    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 30;
        std::vector<int> a(n), b(n);
        for (int i = 0; i < n; ++i) {
            a[i] = static_cast<int>(rng.uniform_index(4));
            b[i] = static_cast<int>(rng.uniform_index(3));
        }
        PartitionScores s = partition_scores(a, b);

        // oracle NMI from scratch
        std::vector<std::vector<int>> table(4, std::vector<int>(3, 0));
        std::vector<int> ra(4, 0), cb(3, 0);
        for (int i = 0; i < n; ++i) {
            table[a[i]][b[i]]++;
            ra[a[i]]++;
            cb[b[i]]++;
        }
        auto h = [&](const std::vector<int>& counts) {
            double out = 0;
            for (int c : counts)
                if (c) out -= (double(c) / n) * std::log(double(c) / n);
            return out;
        };
        double mi = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 3; ++j)
                if (table[i][j])
                    mi += (double(table[i][j]) / n) *
                          std::log(double(table[i][j]) * n / (double(ra[i]) * cb[j]));
        double nmi_oracle = 2.0 * mi / (h(ra) + h(cb));
        CHECK(s.nmi == doctest::Approx(nmi_oracle).epsilon(1e-9));

        // oracle ARI
        auto c2 = [](long long x) { return x * (x - 1) / 2.0; };
        double sum_cells = 0, sum_rows = 0, sum_cols = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 3; ++j) sum_cells += c2(table[i][j]);
        for (int i = 0; i < 4; ++i) sum_rows += c2(ra[i]);
        for (int j = 0; j < 3; ++j) sum_cols += c2(cb[j]);
        double expected = sum_rows * sum_cols / c2(n);
        double ari_oracle = (sum_cells - expected) / (0.5 * (sum_rows + sum_cols) - expected);
        CHECK(s.ari == doctest::Approx(ari_oracle).epsilon(1e-9));

        CHECK(s.nmi >= 0.0);
        CHECK(s.nmi <= 1.0);
        CHECK(s.avg_f1 >= 0.0);
        CHECK(s.avg_f1 <= 1.0);
        CHECK(s.ari <= 1.0);
    }
}

TEST_CASE("mae and mse") {
    std::vector<double> a = {0.0, 1.0};
    std::vector<double> b = {1.0, 1.0};
    CHECK(mae(a, a) == 0.0);
    CHECK(mse(a, a) == 0.0);
    CHECK(mae(a, b) == doctest::Approx(0.5));
    CHECK(mse(a, b) == doctest::Approx(0.5));
    CHECK_THROWS(mae(a, std::vector<double>{1.0}));

    Rng rng(5);
    std::vector<double> x(1000), y(1000);
    for (std::size_t i = 0; i < 1000; ++i) {
        x[i] = rng.uniform();
        y[i] = rng.uniform();
    }
    double mae_oracle = 0, mse_oracle = 0;
    for (std::size_t i = 0; i < 1000; ++i) {
        mae_oracle += std::fabs(x[i] - y[i]);
        mse_oracle += (x[i] - y[i]) * (x[i] - y[i]);
    }
    CHECK(mae(x, y) == doctest::Approx(mae_oracle / 1000).epsilon(1e-12));
    CHECK(mse(x, y) == doctest::Approx(mse_oracle / 1000).epsilon(1e-12));
}

TEST_CASE("sorted alignment pads and sorts before scoring") {
    CHECK(sorted_mae({3.0, 1.0, 2.0}, {2.0, 3.0, 1.0}) == 0.0);
    CHECK(sorted_mae({1.0}, {1.0, 0.5}) == doctest::Approx(0.25));
    CHECK(sorted_mse({1.0}, {1.0, 0.5}) == doctest::Approx(0.125));
}

TEST_CASE("metric names and directions") {
    CHECK(all_metrics.size() == 11);
    CHECK(metric_name(MetricId::AvgF1) == "Avg-F1");
    for (MetricId m : all_metrics) CHECK(parse_metric(metric_name(m)) == m);
    CHECK(higher_is_better(MetricId::NMI));
    CHECK(higher_is_better(MetricId::ARI));
    CHECK(higher_is_better(MetricId::AMI));
    CHECK(higher_is_better(MetricId::AvgF1));
    CHECK_FALSE(higher_is_better(MetricId::RE));
    CHECK_FALSE(higher_is_better(MetricId::KL));
    CHECK_FALSE(higher_is_better(MetricId::MAE));
}

TEST_CASE("symmetry properties") {
    Rng rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> a(8), b(8);
        double sa = 0, sb = 0;
        for (int i = 0; i < 8; ++i) {
            a[i] = rng.uniform() + 0.01;
            b[i] = rng.uniform() + 0.01;
            sa += a[i];
            sb += b[i];
        }
        for (int i = 0; i < 8; ++i) {
            a[i] /= sa;
            b[i] /= sb;
        }
        CHECK(hellinger(a, b) == doctest::Approx(hellinger(b, a)).epsilon(1e-12));
        CHECK(ks_statistic(a, b) == doctest::Approx(ks_statistic(b, a)).epsilon(1e-12));
        CHECK(mae(a, b) == doctest::Approx(mae(b, a)).epsilon(1e-12));
        CHECK(mse(a, b) == doctest::Approx(mse(b, a)).epsilon(1e-12));

        std::vector<int> pa(12), pb(12);
        for (int i = 0; i < 12; ++i) {
            pa[i] = static_cast<int>(rng.uniform_index(3));
            pb[i] = static_cast<int>(rng.uniform_index(3));
        }
        PartitionScores ab = partition_scores(pa, pb);
        PartitionScores ba = partition_scores(pb, pa);
        CHECK(ab.nmi == doctest::Approx(ba.nmi).epsilon(1e-9));
        CHECK(ab.ari == doctest::Approx(ba.ari).epsilon(1e-9));
        CHECK(ab.ami == doctest::Approx(ba.ami).epsilon(1e-9));
        CHECK(ab.avg_f1 == doctest::Approx(ba.avg_f1).epsilon(1e-9));
    }
}
