#pragma once

// Random instance generators and independent reference implementations used
// by the unit and acceptance suites. Nothing here calls into the library's
// pooling, distance, kernel or Wilcoxon code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "copool/opinion.hpp"

namespace copool::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    std::size_t between(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
    }

    // Mix of interior points, sparse vectors with exact zeros, and point masses.
    std::vector<double> probability_vector(std::size_t z) {
        std::vector<double> p(z);
        const double kind = uniform();
        if (kind < 0.1) {
            p[between(0, z - 1)] = 1.0;
            return p;
        }
        double total = 0.0;
        for (double& v : p) {
            v = (kind < 0.3 && uniform() < 0.3) ? 0.0 : -std::log(1.0 - uniform());
            total += v;
        }
        if (total == 0.0) {
            p[0] = 1.0;
            return p;
        }
        for (double& v : p) v /= total;
        return p;
    }

    Matrix stochastic(std::size_t rows, std::size_t cols) {
        Matrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            const auto p = probability_vector(cols);
            std::copy(p.begin(), p.end(), m.row(i).begin());
        }
        return m;
    }

    OpinionPanel panel(std::size_t n, std::size_t z) { return OpinionPanel::from_matrix(stochastic(n, z)); }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

namespace oracle {

inline double delta(const Matrix& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.rows(); ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < m.cols(); ++k) s += std::fabs(m(i, k) - m(j, k));
            best = std::max(best, 0.5 * s);
        }
    return best;
}

inline double gamma(const Matrix& m) {
    double best = 1.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.rows(); ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < m.cols(); ++k) s += std::min(m(i, k), m(j, k));
            best = std::min(best, s);
        }
    return best;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            out(i, j) = s;
        }
    return out;
}

struct Wilcoxon {
    double statistic;
    double p_value;
    // P(W = statistic) under the null.
    double point_mass;
};

// Exact left tail by enumerating all 2^m sign assignments of the ranks.
inline Wilcoxon wilcoxon_enumerate(const std::vector<double>& differences) {
    std::vector<double> d;
    for (double x : differences)
        if (x != 0.0) d.push_back(x);
    const std::size_t m = d.size();
    // Average ranks by counting: rank = #smaller + (#equal + 1) / 2.
    std::vector<double> rank(m);
    for (std::size_t i = 0; i < m; ++i) {
        double smaller = 0.0, equal = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            if (std::fabs(d[j]) < std::fabs(d[i])) smaller += 1.0;
            if (std::fabs(d[j]) == std::fabs(d[i])) equal += 1.0;
        }
        rank[i] = smaller + (equal + 1.0) / 2.0;
    }
    double w = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        if (d[i] > 0.0) w += rank[i];

    std::uint64_t below = 0, at = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1) s += rank[i];
        if (s <= w + 1e-9) ++below;
        if (std::fabs(s - w) <= 1e-9) ++at;
    }
    const double total = std::ldexp(1.0, static_cast<int>(m));
    return {w, static_cast<double>(below) / total, static_cast<double>(at) / total};
}

// Straight-line Barlow-Mendel-Shiu pool: clamp exact 0/1, renormalize, weight
// each expert by 1 / (largest KL divergence to any peer), pool the reported rows.
inline std::vector<double> bms(const std::vector<std::vector<double>>& reported, double clamp) {
    const std::size_t n = reported.size();
    const std::size_t z = reported[0].size();
    std::vector<std::vector<double>> r = reported;
    for (auto& row : r) {
        double total = 0.0;
        for (double& p : row) {
            if (p == 0.0) p = clamp;
            else if (p == 1.0) p = 1.0 - clamp;
            total += p;
        }
        for (double& p : row) p /= total;
    }
    std::vector<double> inv(n);
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double worst = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double kl = 0.0;
            for (std::size_t k = 0; k < z; ++k) kl += r[i][k] * std::log(r[i][k] / r[j][k]);
            worst = std::max(worst, kl);
        }
        inv[i] = worst > 0.0 ? 1.0 / worst : 0.0;
        c += inv[i];
    }
    if (c == 0.0) {  // unanimous panel: any weighting returns the common opinion
        inv.assign(n, 1.0);
        c = static_cast<double>(n);
    }
    std::vector<double> out(z, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < z; ++k) out[k] += inv[i] / c * reported[i][k];
    return out;
}

}  // namespace oracle

}  // namespace copool::testing
