#include "copool/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace copool {

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) {
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    double u1;
    do {
        u1 = uniform();
    } while (u1 == 0.0);
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_normal_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

std::vector<double> Rng::simplex(std::size_t z) {
    // Normalized unit exponentials are Dirichlet(1, ..., 1).
    std::vector<double> p(z);
    double total = 0.0;
    for (double& v : p) {
        double u;
        do {
            u = uniform();
        } while (u == 0.0);
        v = -std::log(u);
        total += v;
    }
    for (double& v : p) v /= total;
    return p;
}

}  // namespace copool
