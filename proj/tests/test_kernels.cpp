// The parallel kernels must reproduce the serial reference bit for bit.

#include "copool/kernels.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace copool;
using copool::testing::Gen;

TEST_CASE("parallel kernels match the serial reference exactly") {
    Gen gen(21);
    // Sizes straddle the threshold so both branches of the if-clause run.
    for (std::size_t n : {1UL, 7UL, kernels::kParallelRowThreshold - 1, kernels::kParallelRowThreshold, 150UL}) {
        CAPTURE(n);
        const Matrix f = gen.stochastic(n, 5);

        Matrix ws(n, n), wp(n, n);
        kernels::serial::consensual_weights(f, 1e-4, ws);
        kernels::parallel::consensual_weights(f, 1e-4, wp);
        CHECK(ws == wp);

        Matrix ns(n, 5), np(n, 5);
        kernels::serial::apply_weights(ws, f, ns);
        kernels::parallel::apply_weights(wp, f, np);
        CHECK(ns == np);

        CHECK(kernels::serial::delta(f) == kernels::parallel::delta(f));
        CHECK(kernels::serial::gamma(f) == kernels::parallel::gamma(f));
    }
}

TEST_CASE("serial weight kernel follows the inverse-distance rule") {
    const Matrix f = Matrix::from_rows({{0.9, 0.1}, {0.05, 0.95}, {0.2, 0.8}});
    Matrix w(3, 3);
    kernels::serial::consensual_weights(f, 0.01, w);
    // Row 1: 1/0.01, 1/0.86, 1/0.71 normalized.
    const double total = 1 / 0.01 + 1 / 0.86 + 1 / 0.71;
    CHECK(w(0, 0) == doctest::Approx(100 / total).epsilon(1e-12));
    CHECK(w(0, 1) == doctest::Approx((1 / 0.86) / total).epsilon(1e-12));
    CHECK(w(0, 2) == doctest::Approx((1 / 0.71) / total).epsilon(1e-12));
}
