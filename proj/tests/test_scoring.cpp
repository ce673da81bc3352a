#include <cmath>

#include "copool/distance.hpp"
#include "copool/error.hpp"
#include "copool/scoring.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace copool;
using copool::testing::Gen;

namespace {

Opinion op(std::vector<double> p) { return validate_opinion(std::move(p)); }
const Outcome first = Outcome::one_based(1);
const Outcome second = Outcome::one_based(2);

}  // namespace

TEST_CASE("quadratic_score") {
    CHECK(quadratic_score(op({1, 0}), first) == 1.0);
    CHECK(quadratic_score(op({0.5, 0.5}), first) == 0.5);
    CHECK(quadratic_score(op({0.5, 0.5}), second) == 0.5);
    CHECK(std::fabs(quadratic_score(op({0.99, 0.01}), second) - -0.9602) <= 1e-9);
    CHECK_THROWS_AS(quadratic_score(op({0.5, 0.5}), Outcome::one_based(3)), Error);
}

TEST_CASE("affine_score reproduces the contest's quoted points") {
    CHECK(std::fabs(affine_score(op({0.99, 0.01}), first, 200, -100) - 99.96) <= 1e-9);
    CHECK(std::fabs(affine_score(op({0.99, 0.01}), second, 200, -100) - -292.04) <= 1e-9);
    CHECK(std::fabs(affine_score(op({0.5, 0.5}), first, 200, -100)) <= 1e-12);
    CHECK_THROWS_AS(affine_score(op({0.5, 0.5}), first, 0, 1), Error);
}

TEST_CASE("contest_score") {
    CHECK(std::fabs(contest_score(0.51) - -4.04) <= 1e-9);
    CHECK(std::fabs(contest_score(0.49) - 3.96) <= 1e-9);
    CHECK(contest_score(0.5) == 0.0);
    CHECK_THROWS_AS(contest_score(1.5), Error);
    CHECK_THROWS_AS(contest_score(-0.1), Error);
    // For binary events it is the (200, -100) transform of the quadratic rule.
    for (int i = 0; i <= 100; ++i) {
        const double pl = i / 100.0;
        const Opinion reported = op({1.0 - pl, pl});
        CHECK(std::fabs(contest_score(pl) - affine_score(reported, first, 200, -100)) <= 1e-12);
    }
}

TEST_CASE("expected_score") {
    CHECK(expected_score(op({0.5, 0.5}), op({0.5, 0.5})) == 0.5);
    CHECK(std::fabs(expected_score(op({0.9, 0.1}), op({0.05, 0.95})) - -0.625) <= 1e-9);
    CHECK(expected_score(op({1, 0}), op({1, 0})) == 1.0);
    CHECK_THROWS_AS(expected_score(op({0.5, 0.5}), op({0.2, 0.3, 0.5})), Error);
}

TEST_CASE("expected_score equals its algebraic expansion") {
    Gen gen(51);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t z = gen.between(2, 8);
        const Opinion b = op(gen.probability_vector(z));
        const Opinion r = op(gen.probability_vector(z));
        double cross = 0.0, squares = 0.0;
        for (std::size_t k = 0; k < z; ++k) {
            cross += r[k] * b[k];
            squares += r[k] * r[k];
        }
        CHECK(std::fabs(expected_score(b, r) - (2.0 * cross - squares)) <= 1e-12);
        CHECK(std::fabs(expected_score(b, r, kContestTransform) - (200.0 * expected_score(b, r) - 100.0)) <= 1e-9);
    }
}

TEST_CASE("closer reports earn higher expected scores") {
    Gen gen(52);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t z = gen.between(2, 6);
        const Opinion b = op(gen.probability_vector(z));
        const Opinion r1 = op(gen.probability_vector(z));
        const Opinion r2 = op(gen.probability_vector(z));
        const double d1 = rmsd(b, r1), d2 = rmsd(b, r2);
        const double s1 = expected_score(b, r1), s2 = expected_score(b, r2);
        if (std::fabs(d1 - d2) < 1e-12 || std::fabs(s1 - s2) < 1e-12) continue;
        CHECK((d1 < d2) == (s1 > s2));
    }
}

TEST_CASE("effectiveness_audit") {
    const OpinionPanel example({op({0.9, 0.1}), op({0.05, 0.95}), op({0.2, 0.8})});
    CHECK(effectiveness_audit(example, 0.01).empty());
    CHECK(effectiveness_audit(example, 0.01, kContestTransform).empty());
    CHECK(effectiveness_audit(OpinionPanel({op({0.3, 0.7})}), 0.01).empty());

    Gen gen(53);
    for (int trial = 0; trial < 100; ++trial) {
        const OpinionPanel p = gen.panel(gen.between(1, 10), gen.between(2, 6));
        CHECK(effectiveness_audit(p, 1e-4).empty());
    }
}
