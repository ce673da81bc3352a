#include "copool/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>

namespace copool::kernels {

namespace {

double rmsd_row(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(a.size()));
}

void weights_row(const Matrix& opinions, double epsilon, std::size_t i, Matrix& weights) {
    const std::size_t n = opinions.rows();
    const auto fi = opinions.row(i);
    auto out = weights.row(i);
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double w = 1.0 / (epsilon + (i == j ? 0.0 : rmsd_row(fi, opinions.row(j))));
        out[j] = w;
        total += w;
    }
    for (std::size_t j = 0; j < n; ++j) out[j] /= total;
}

void apply_row(const Matrix& weights, const Matrix& x, std::size_t i, Matrix& out) {
    auto dst = out.row(i);
    std::fill(dst.begin(), dst.end(), 0.0);
    const auto w = weights.row(i);
    for (std::size_t j = 0; j < x.rows(); ++j) {
        const double wij = w[j];
        const auto src = x.row(j);
        for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += wij * src[k];
    }
}

// Largest half-L1 distance from row i to any later row.
double delta_row(const Matrix& m, std::size_t i) {
    double best = 0.0;
    const auto a = m.row(i);
    for (std::size_t j = i + 1; j < m.rows(); ++j) {
        const auto b = m.row(j);
        double sum = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) sum += std::fabs(a[k] - b[k]);
        best = std::max(best, sum);
    }
    return 0.5 * best;
}

// Smallest overlap from row i to any row j >= i (j == i gives the row sum).
double gamma_row(const Matrix& m, std::size_t i) {
    double best = 1.0;
    const auto a = m.row(i);
    for (std::size_t j = i; j < m.rows(); ++j) {
        const auto b = m.row(j);
        double sum = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) sum += std::min(a[k], b[k]);
        best = std::min(best, sum);
    }
    return best;
}

}  // namespace

namespace serial {

void consensual_weights(const Matrix& opinions, double epsilon, Matrix& weights) {
    for (std::size_t i = 0; i < opinions.rows(); ++i) weights_row(opinions, epsilon, i, weights);
}

void apply_weights(const Matrix& weights, const Matrix& x, Matrix& out) {
    for (std::size_t i = 0; i < weights.rows(); ++i) apply_row(weights, x, i, out);
}

double delta(const Matrix& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) best = std::max(best, delta_row(m, i));
    return best;
}

double gamma(const Matrix& m) {
    double best = 1.0;
    for (std::size_t i = 0; i < m.rows(); ++i) best = std::min(best, gamma_row(m, i));
    return best;
}

}  // namespace serial

namespace parallel {

void consensual_weights(const Matrix& opinions, double epsilon, Matrix& weights) {
    const auto n = static_cast<std::int64_t>(opinions.rows());
#pragma omp parallel for schedule(static) if (opinions.rows() >= kParallelRowThreshold)
    for (std::int64_t i = 0; i < n; ++i) {
        weights_row(opinions, epsilon, static_cast<std::size_t>(i), weights);
    }
}

void apply_weights(const Matrix& weights, const Matrix& x, Matrix& out) {
    const auto n = static_cast<std::int64_t>(weights.rows());
#pragma omp parallel for schedule(static) if (weights.rows() >= kParallelRowThreshold)
    for (std::int64_t i = 0; i < n; ++i) {
        apply_row(weights, x, static_cast<std::size_t>(i), out);
    }
}

double delta(const Matrix& m) {
    const auto n = static_cast<std::int64_t>(m.rows());
    double best = 0.0;
    // Row pairs (i, j > i) shrink with i, so hand out rows dynamically.
#pragma omp parallel for schedule(dynamic, 4) reduction(max : best) if (m.rows() >= kParallelRowThreshold)
    for (std::int64_t i = 0; i < n; ++i) {
        best = std::max(best, delta_row(m, static_cast<std::size_t>(i)));
    }
    return best;
}

double gamma(const Matrix& m) {
    const auto n = static_cast<std::int64_t>(m.rows());
    double best = 1.0;
#pragma omp parallel for schedule(dynamic, 4) reduction(min : best) if (m.rows() >= kParallelRowThreshold)
    for (std::int64_t i = 0; i < n; ++i) {
        best = std::min(best, gamma_row(m, static_cast<std::size_t>(i)));
    }
    return best;
}

}  // namespace parallel

}  // namespace copool::kernels
