#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "copool/opinion.hpp"

namespace copool {

/// Parameters shared by the three pools.
struct PoolConfig {
    /// Added to every distance before inversion; keeps weights in (0, 1).
    double epsilon = 1e-4;
    /// Iteration stops once delta of the opinion matrix drops below this.
    double tolerance = 1e-9;
    std::size_t max_iterations = 1'000'000;
    /// Recalibration bound for the BMS pool (0 -> clamp, 1 -> 1 - clamp).
    double bms_clamp = 0.01;
    /// Keep every per-step WeightMatrix in ConsensusResult::weight_history.
    bool record_history = false;

    /// Throws invalid_argument if any field is out of range.
    void validate() const;
};

struct ConsensusResult {
    Opinion consensus;
    std::size_t iterations = 0;
    /// delta(F^(0)), ..., delta(F^(t)).
    std::vector<double> delta_trace;
    /// Row 1 of P^(t) ... P^(1); consensus == sum_j beta_j f_j^(0).
    std::vector<double> effective_weights;
    /// Weights the experts assign on the final panel.
    WeightMatrix final_weight_matrix;
    /// P^(1), ..., P^(t) when PoolConfig::record_history is set.
    std::vector<WeightMatrix> weight_history;
    /// False when max_iterations ran out with delta still >= tolerance.
    bool converged = true;

    double final_delta() const { return delta_trace.back(); }
};

/// sum_i weights_i f_i. Throws on length mismatch or a non-probability vector.
Opinion linear_pool(const OpinionPanel& panel, std::span<const double> weights);

/// Entry (i, j) proportional to 1 / (epsilon + rmsd(f_i, f_j)), rows normalized.
WeightMatrix consensual_weights(const OpinionPanel& panel, double epsilon);

/// One synchronous revision with a fixed weight matrix: returns P * F.
OpinionPanel degroot_step(const OpinionPanel& panel, const WeightMatrix& weights);

/// One consensual revision: weights from the pre-step panel, then P * F.
OpinionPanel consensual_step(const OpinionPanel& panel, double epsilon);

/// Repeats consensual_step until delta < tolerance or max_iterations.
/// Non-convergence is reported through ConsensusResult::converged.
ConsensusResult consensual_pool(const OpinionPanel& panel, const PoolConfig& config);

/// Row 1 of history.back() * ... * history.front(). Throws on an empty or
/// shape-inconsistent history.
std::vector<double> effective_weights(std::span<const WeightMatrix> history);

/// Linear pool with uniform weights 1/n.
Opinion average_pool(const OpinionPanel& panel);

using Divergence = std::function<double(const Opinion&, const Opinion&)>;

/// Replaces entries equal to 0 by clamp and entries equal to 1 by 1 - clamp,
/// then renormalizes each touched row.
OpinionPanel bms_recalibrate(const OpinionPanel& panel, double clamp);

struct BmsWeights {
    std::vector<double> weights;
    /// Index of the most divergent peer for each expert.
    std::vector<std::size_t> farthest;
    /// Some expert's largest divergence was zero; uniform weights were used.
    bool degenerate = false;
};

/// w_i proportional to 1 / max_j divergence(f_i, f_j) on an already
/// recalibrated panel. Requires n >= 2.
BmsWeights bms_weights(const OpinionPanel& recalibrated, const Divergence& divergence);

struct BmsResult {
    Opinion pooled;
    BmsWeights weights;
};

/// Weights each expert by the inverse KL divergence to its most distant
/// peer, computed on the recalibrated panel, and pools the reported opinions.
BmsResult bms_pool_detailed(const OpinionPanel& panel, double clamp);
Opinion bms_pool(const OpinionPanel& panel, double clamp);

}  // namespace copool
