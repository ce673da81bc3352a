#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace copool {

// Seeded generator whose output is identical across standard libraries:
// mt19937_64 is fully specified, and the conversions below avoid the
// implementation-defined std distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);
    /// Standard normal (Box-Muller).
    double normal();
    /// Uniform point on the probability simplex with z vertices.
    std::vector<double> simplex(std::size_t z);

private:
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace copool
