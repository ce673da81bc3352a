#include <algorithm>
#include <cmath>

#include "copool/distance.hpp"
#include "copool/error.hpp"
#include "copool/evaluation.hpp"
#include "copool/pooling.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace copool;
using copool::testing::Gen;
namespace oracle = copool::testing::oracle;

namespace {

Opinion op(std::vector<double> p) { return validate_opinion(std::move(p)); }
Outcome won(std::size_t k) { return Outcome::one_based(k); }

}  // namespace

TEST_CASE("overall_accuracy") {
    const std::vector<ScoredAggregate> one{{op({0.8, 0.2}), won(1)}};
    const AccuracyStats a = overall_accuracy(one);
    CHECK(a.accuracy == 1.0);
    CHECK(a.excluded == 0);

    const std::vector<ScoredAggregate> tie{{op({0.5, 0.5}), won(1)}};
    const AccuracyStats b = overall_accuracy(tie);
    CHECK_FALSE(b.accuracy.has_value());
    CHECK(b.counted == 0);
    CHECK(b.excluded == 1);

    const std::vector<ScoredAggregate> three{
        {op({0.8, 0.2}), won(1)}, {op({0.6, 0.4}), won(2)}, {op({0.3, 0.7}), won(2)}};
    const AccuracyStats c = overall_accuracy(three);
    CHECK(std::fabs(*c.accuracy - 2.0 / 3.0) <= 1e-12);
    CHECK(c.correct == 2);

    auto reversed = three;
    std::reverse(reversed.begin(), reversed.end());
    CHECK(overall_accuracy(reversed) == c);

    CHECK_THROWS_AS(overall_accuracy(std::vector<ScoredAggregate>{}), Error);
    CHECK_THROWS_AS(overall_accuracy(std::vector<ScoredAggregate>{{op({0.2, 0.3, 0.5}), won(1)}}), Error);
}

TEST_CASE("absolute_error") {
    CHECK(absolute_error(op({0.9, 0.1}), won(1)) == 0.1);
    CHECK(absolute_error(op({0.5, 0.5}), won(2)) == 0.5);
    CHECK(std::fabs(absolute_error(op({0.3175, 0.6825}), won(2)) - 0.3175) <= 1e-15);
    CHECK_THROWS_AS(absolute_error(op({0.2, 0.3, 0.5}), won(1)), Error);
    Gen gen(61);
    for (int i = 0; i < 100; ++i) {
        const double p = gen.uniform();
        const Opinion a = op({p, 1.0 - p});
        CHECK(absolute_error(a, won(1)) + a[0] == 1.0);
    }
}

TEST_CASE("wilcoxon examples pinned by enumeration") {
    const std::vector<double> all_negative{-1, -2, -3, -4, -5};
    const WilcoxonResult a = wilcoxon_left_tailed(all_negative);
    CHECK(a.statistic == 0.0);
    CHECK(a.p_value == 0.03125);
    CHECK(a.exact);
    CHECK(a.n == 5);

    const WilcoxonResult b = wilcoxon_left_tailed(std::vector<double>{1.0, -1.5});
    CHECK(b.statistic == 1.0);
    CHECK(b.p_value == 0.5);

    const WilcoxonResult c = wilcoxon_left_tailed(std::vector<double>{-2, -1, 1, 2});
    CHECK(c.statistic == 5.0);
    CHECK(c.p_value == 0.625);

    // scipy.stats.wilcoxon(..., alternative="less", method="exact")
    const WilcoxonResult d = wilcoxon_left_tailed(std::vector<double>{1, -2, 3, -4, -5, -6, 7, -8});
    CHECK(d.statistic == 11.0);
    CHECK(d.p_value == 0.19140625);

    // zeros are dropped before ranking
    const WilcoxonResult e = wilcoxon_left_tailed(std::vector<double>{0.0, -1, 0.0, -2, -3, -4, -5});
    CHECK(e.n == 5);
    CHECK(e.p_value == 0.03125);

    CHECK_THROWS_AS(wilcoxon_left_tailed(std::vector<double>{0.0, 0.0}), Error);
    CHECK_THROWS_AS(wilcoxon_left_tailed(std::vector<double>{}), Error);
}

TEST_CASE("wilcoxon exact path agrees with enumeration, including ties") {
    Gen gen(62);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = gen.between(1, 10);
        std::vector<double> d(m);
        for (double& x : d) x = static_cast<double>(static_cast<int>(gen.between(0, 8)) - 4) * 0.5;
        if (std::all_of(d.begin(), d.end(), [](double x) { return x == 0.0; })) d[0] = 1.0;
        const auto expected = oracle::wilcoxon_enumerate(d);
        const WilcoxonResult got = wilcoxon_left_tailed(d);
        CHECK(got.statistic == expected.statistic);
        CHECK(std::fabs(got.p_value - expected.p_value) <= 1e-12);
    }
}

TEST_CASE("wilcoxon negation gives the right tail") {
    Gen gen(63);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = gen.between(1, 12);
        std::vector<double> d(m);
        for (double& x : d) x = static_cast<double>(gen.between(1, 6)) * (gen.uniform() < 0.5 ? -1.0 : 1.0);
        std::vector<double> neg(d);
        for (double& x : neg) x = -x;
        const double mass = oracle::wilcoxon_enumerate(d).point_mass;
        const double sum = wilcoxon_left_tailed(d).p_value + wilcoxon_left_tailed(neg).p_value;
        CHECK(std::fabs(sum - (1.0 + mass)) <= 1e-12);
    }
}

TEST_CASE("wilcoxon normal approximation tracks the exact distribution for 15-20 pairs") {
    Gen gen(64);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = gen.between(15, 20);
        std::vector<double> d(m);
        for (std::size_t i = 0; i < m; ++i) d[i] = static_cast<double>(i + 1) * (gen.uniform() < 0.4 ? 1.0 : -1.0);
        const WilcoxonResult exact = wilcoxon_left_tailed(d, WilcoxonMethod::exact);
        const WilcoxonResult approx = wilcoxon_left_tailed(d, WilcoxonMethod::normal);
        CHECK_FALSE(approx.exact);
        CHECK(std::fabs(exact.p_value - approx.p_value) <= 0.02);
    }
    std::vector<double> big(30);
    for (std::size_t i = 0; i < big.size(); ++i) big[i] = -static_cast<double>(i + 1);
    CHECK_FALSE(wilcoxon_left_tailed(big).exact);
    CHECK(wilcoxon_left_tailed(big).p_value < 1e-4);
}

TEST_CASE("synthetic_panel") {
    const Opinion truth = op({0.7, 0.3});
    const OpinionPanel clean = synthetic_panel({.seed = 1, .n = 10, .z = 2, .noise = 0.0, .outlier_count = 0}, truth);
    for (std::size_t i = 0; i < clean.n(); ++i) CHECK(clean.opinion(i) == truth);

    const SyntheticPanelSpec spec{.seed = 99, .n = 50, .z = 2, .noise = 0.05, .outlier_count = 3};
    CHECK(synthetic_panel(spec, truth) == synthetic_panel(spec, truth));
    CHECK_FALSE(synthetic_panel(spec, truth) == synthetic_panel({.seed = 100, .n = 50, .z = 2, .noise = 0.05, .outlier_count = 3}, truth));

    const OpinionPanel three = synthetic_panel({.seed = 5, .n = 20, .z = 3, .noise = 0.2, .outlier_count = 4},
                                               op({0.2, 0.3, 0.5}));
    CHECK(three.z() == 3);

    CHECK_THROWS_AS(synthetic_panel({.seed = 1, .n = 3, .z = 2, .noise = 0.1, .outlier_count = 3}, truth), Error);
    CHECK_THROWS_AS(synthetic_panel({.seed = 1, .n = 3, .z = 3, .noise = 0.1, .outlier_count = 0}, truth), Error);
    CHECK_THROWS_AS(synthetic_panel({.seed = 1, .n = 3, .z = 2, .noise = -1, .outlier_count = 0}, truth), Error);
}

// Rate pinned from seeds 0..199 (ground truth (0.7, 0.3), n = 100, one outlier).
TEST_CASE("consensual pool resists a single outlier better than the average") {
    const Opinion truth = op({0.7, 0.3});
    int closer = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const OpinionPanel p =
            synthetic_panel({.seed = seed, .n = 100, .z = 2, .noise = 0.05, .outlier_count = 1}, truth);
        const Opinion c = consensual_pool(p, {}).consensus;
        const Opinion a = average_pool(p);
        if (rmsd(c, truth) < rmsd(a, truth)) ++closer;
    }
    MESSAGE("consensual closer than average in " << closer << " of 200 seeds");
    CHECK(closer > 100);
    CHECK(closer == 127);
}

TEST_CASE("summarize") {
    MethodResult r;
    r.per_game = {{.game_id = "a", .aggregate = op({0.8, 0.2}), .absolute_error = 0.2},
                  {.game_id = "b", .aggregate = op({0.6, 0.4}), .absolute_error = 0.6},
                  {.game_id = "c", .aggregate = op({0.5, 0.5}), .absolute_error = 0.5}};
    const std::vector<Outcome> winners{won(1), won(2), won(1)};
    summarize(r, winners);
    CHECK(r.accuracy.accuracy == 0.5);
    CHECK(r.accuracy.excluded == 1);
    CHECK(r.mean_absolute_error == doctest::Approx(1.3 / 3).epsilon(1e-15));
    // sample standard deviation of {0.2, 0.6, 0.5}
    CHECK(r.stddev_absolute_error == doctest::Approx(std::sqrt(0.26 / 6)).epsilon(1e-12));
    CHECK_THROWS_AS(summarize(r, std::vector<Outcome>{won(1)}), Error);
}
