#include "copool/pooling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "copool/distance.hpp"
#include "copool/error.hpp"
#include "copool/kernels.hpp"

namespace copool {

void PoolConfig::validate() const {
    if (!(epsilon > 0.0)) throw Error(Errc::invalid_argument, "epsilon must be positive");
    if (!(tolerance > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
    if (max_iterations < 1) throw Error(Errc::invalid_argument, "max_iterations must be at least 1");
    if (!(bms_clamp > 0.0 && bms_clamp < 0.5)) {
        throw Error(Errc::invalid_argument, "bms_clamp must lie in (0, 0.5)");
    }
}

Opinion linear_pool(const OpinionPanel& panel, std::span<const double> weights) {
    require_probability_vector(weights, panel.n(), "pool weights");
    std::vector<double> out(panel.z(), 0.0);
    for (std::size_t i = 0; i < panel.n(); ++i) {
        const auto row = panel.row(i);
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += weights[i] * row[k];
    }
    return Opinion::from_convex_combination(std::move(out));
}

WeightMatrix consensual_weights(const OpinionPanel& panel, double epsilon) {
    if (!(epsilon > 0.0)) throw Error(Errc::invalid_argument, "epsilon must be positive");
    Matrix weights(panel.n(), panel.n());
    kernels::parallel::consensual_weights(panel.matrix(), epsilon, weights);
    return WeightMatrix(std::move(weights));
}

OpinionPanel degroot_step(const OpinionPanel& panel, const WeightMatrix& weights) {
    if (weights.n() != panel.n()) {
        throw Error(Errc::dimension_mismatch, "weight matrix is " + std::to_string(weights.n()) +
                                                  "x" + std::to_string(weights.n()) + " but panel has " +
                                                  std::to_string(panel.n()) + " experts");
    }
    Matrix next(panel.n(), panel.z());
    kernels::parallel::apply_weights(weights.entries(), panel.matrix(), next);
    return panel_from_convex_combination(std::move(next));
}

OpinionPanel consensual_step(const OpinionPanel& panel, double epsilon) {
    return degroot_step(panel, consensual_weights(panel, epsilon));
}

ConsensusResult consensual_pool(const OpinionPanel& panel, const PoolConfig& config) {
    config.validate();
    const std::size_t n = panel.n();

    Matrix opinions = panel.matrix();
    Matrix next(n, panel.z());
    Matrix weights(n, n);
    Matrix accumulated = Matrix::identity(n);
    Matrix next_accumulated(n, n);

    std::vector<double> trace{kernels::parallel::delta(opinions)};
    std::vector<WeightMatrix> history;
    std::size_t t = 0;
    while (trace.back() >= config.tolerance && t < config.max_iterations) {
        kernels::parallel::consensual_weights(opinions, config.epsilon, weights);
        kernels::parallel::apply_weights(weights, opinions, next);
        kernels::parallel::apply_weights(weights, accumulated, next_accumulated);
        std::swap(opinions, next);
        std::swap(accumulated, next_accumulated);
        if (config.record_history) history.emplace_back(weights);
        ++t;
        trace.push_back(kernels::parallel::delta(opinions));
    }

    kernels::parallel::consensual_weights(opinions, config.epsilon, weights);
    const bool converged = trace.back() < config.tolerance;
    const auto first = opinions.row(0);
    const auto beta = accumulated.row(0);
    return ConsensusResult{
        .consensus = Opinion::from_convex_combination({first.begin(), first.end()}),
        .iterations = t,
        .delta_trace = std::move(trace),
        .effective_weights = {beta.begin(), beta.end()},
        .final_weight_matrix = WeightMatrix(std::move(weights)),
        .weight_history = std::move(history),
        .converged = converged,
    };
}

std::vector<double> effective_weights(std::span<const WeightMatrix> history) {
    if (history.empty()) throw Error(Errc::empty_input, "effective_weights: empty weight history");
    const std::size_t n = history.front().n();
    for (std::size_t s = 0; s < history.size(); ++s) {
        if (history[s].n() != n) {
            throw Error(Errc::dimension_mismatch, "effective_weights: matrix " + std::to_string(s) +
                                                      " is " + std::to_string(history[s].n()) +
                                                      "x" + std::to_string(history[s].n()) +
                                                      ", expected " + std::to_string(n));
        }
    }
    // e_1^T P^(t) ... P^(1), evaluated left to right as a row vector.
    std::vector<double> row(n, 0.0);
    row[0] = 1.0;
    std::vector<double> next(n);
    for (auto it = history.rbegin(); it != history.rend(); ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const auto pj = it->row(j);
            for (std::size_t k = 0; k < n; ++k) next[k] += row[j] * pj[k];
        }
        row.swap(next);
    }
    return row;
}

Opinion average_pool(const OpinionPanel& panel) {
    const std::vector<double> uniform(panel.n(), 1.0 / static_cast<double>(panel.n()));
    return linear_pool(panel, uniform);
}

OpinionPanel bms_recalibrate(const OpinionPanel& panel, double clamp) {
    if (!(clamp > 0.0 && clamp < 0.5)) throw Error(Errc::invalid_argument, "bms clamp must lie in (0, 0.5)");
    Matrix m = panel.matrix();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = m.row(i);
        bool touched = false;
        for (double& p : row) {
            if (p == 0.0) {
                p = clamp;
                touched = true;
            } else if (p == 1.0) {
                p = 1.0 - clamp;
                touched = true;
            }
        }
        if (!touched) continue;
        double sum = 0.0;
        for (double p : row) sum += p;
        for (double& p : row) p /= sum;
    }
    return OpinionPanel::from_matrix(std::move(m));
}

BmsWeights bms_weights(const OpinionPanel& recalibrated, const Divergence& divergence) {
    const std::size_t n = recalibrated.n();
    if (n < 2) throw Error(Errc::invalid_argument, "BMS weights need at least 2 experts");
    const auto opinions = recalibrated.opinions();

    BmsWeights out;
    out.weights.resize(n);
    out.farthest.resize(n);
    std::vector<double> largest(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            const double d = divergence(opinions[i], opinions[j]);
            if (d > best) {
                best = d;
                out.farthest[i] = j;
            }
        }
        largest[i] = best;
        if (!(best > 0.0)) out.degenerate = true;
    }

    if (out.degenerate) {
        std::fill(out.weights.begin(), out.weights.end(), 1.0 / static_cast<double>(n));
        return out;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.weights[i] = 1.0 / largest[i];
        total += out.weights[i];
    }
    for (double& w : out.weights) w /= total;
    return out;
}

BmsResult bms_pool_detailed(const OpinionPanel& panel, double clamp) {
    if (panel.n() < 2) throw Error(Errc::invalid_argument, "BMS pool needs at least 2 experts");
    const OpinionPanel recalibrated = bms_recalibrate(panel, clamp);
    BmsWeights weights = bms_weights(recalibrated, kl_divergence);
    // Recalibration only makes the divergences finite; the reported
    // opinions are what get pooled.
    Opinion pooled = linear_pool(panel, weights.weights);
    return BmsResult{.pooled = std::move(pooled), .weights = std::move(weights)};
}

Opinion bms_pool(const OpinionPanel& panel, double clamp) {
    return bms_pool_detailed(panel, clamp).pooled;
}

}  // namespace copool
