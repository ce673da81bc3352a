#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "copool/opinion.hpp"

namespace copool {

/// Index of a realized outcome. Stored zero-based; files and the CLI speak
/// one-based.
class Outcome {
public:
    static constexpr Outcome zero_based(std::size_t k) { return Outcome(k); }
    static constexpr Outcome one_based(std::size_t k) { return Outcome(k - 1); }

    constexpr std::size_t index() const noexcept { return index_; }
    constexpr std::size_t one_based_index() const noexcept { return index_ + 1; }

    bool operator==(const Outcome&) const = default;

private:
    constexpr explicit Outcome(std::size_t k) : index_(k) {}
    std::size_t index_;
};

/// Positive affine map x * R + y of the quadratic rule.
struct AffineTransform {
    double scale = 1.0;
    double offset = 0.0;
};

/// The contest rule 100 - 400 p_l^2 as an affine transform of the quadratic rule.
inline constexpr AffineTransform kContestTransform{200.0, -100.0};

/// R(f, e) = 2 f_e - sum_k f_k^2, in [-1, 1].
double quadratic_score(const Opinion& reported, Outcome outcome);

/// x * R(f, e) + y; throws invalid_argument unless x > 0.
double affine_score(const Opinion& reported, Outcome outcome, double x, double y);

/// 100 - 400 p_l^2 where p_l is the probability given to the eventual loser.
double contest_score(double prob_assigned_to_loser);

/// sum_e believer_e * R(reported, e).
double expected_score(const Opinion& believer, const Opinion& reported);

/// Expected score under an affine transform of the quadratic rule.
double expected_score(const Opinion& believer, const Opinion& reported, AffineTransform transform);

/// A triple where expert i's weights on peers j and k are strictly ordered
/// one way and i's expected scores for reporting f_j, f_k the other way.
struct EffectivenessViolation {
    std::size_t evaluator = 0;
    std::pair<std::size_t, std::size_t> pair;
    std::pair<double, double> weight_order;          // (p_ij, p_ik)
    std::pair<double, double> expected_score_order;  // (E_i[R(f_j)], E_i[R(f_k)])
};

/// Differences below this count as ties in effectiveness_audit.
inline constexpr double kEffectivenessTieTolerance = 1e-12;

/// Checks p_ij < p_ik <=> E_i[R(f_k)] > E_i[R(f_j)] for every expert i and
/// pair (j, k) under consensual_weights(panel, epsilon). Expected to be empty.
std::vector<EffectivenessViolation> effectiveness_audit(const OpinionPanel& panel, double epsilon,
                                                        AffineTransform transform = {});

}  // namespace copool
