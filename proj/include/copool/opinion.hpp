#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "copool/matrix.hpp"

namespace copool {

/// Row sums of stochastic vectors and matrices must match 1 within this.
inline constexpr double kStochasticTolerance = 1e-9;

/// One expert's probability vector over z >= 2 mutually exclusive outcomes.
class Opinion {
public:
    std::span<const double> probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t k) const { return probs_[k]; }

    bool operator==(const Opinion&) const = default;

    // Output of a convex combination of valid opinions. Entries are clamped
    // into [0, 1] to absorb rounding, then the usual checks apply.
    static Opinion from_convex_combination(std::vector<double> probs);

private:
    explicit Opinion(std::vector<double> probs) : probs_(std::move(probs)) {}
    friend Opinion validate_opinion(std::vector<double> raw);

    std::vector<double> probs_;
};

/// Checks raw against the probability-vector invariants without modifying
/// it. Throws Error (dimension_too_small, entry_out_of_range, sum_not_one).
Opinion validate_opinion(std::vector<double> raw);

/// Row-stochastic n x z matrix of opinions, n >= 1.
class OpinionPanel {
public:
    explicit OpinionPanel(const std::vector<Opinion>& opinions);

    /// Validates every row of m as an opinion.
    static OpinionPanel from_matrix(Matrix m);

    std::size_t n() const noexcept { return matrix_.rows(); }
    std::size_t z() const noexcept { return matrix_.cols(); }

    std::span<const double> row(std::size_t i) const { return matrix_.row(i); }
    Opinion opinion(std::size_t i) const;
    std::vector<Opinion> opinions() const;
    const Matrix& matrix() const noexcept { return matrix_; }

    bool operator==(const OpinionPanel&) const = default;

private:
    explicit OpinionPanel(Matrix m) : matrix_(std::move(m)) {}
    friend OpinionPanel panel_from_convex_combination(Matrix m);

    Matrix matrix_;
};

/// Same as OpinionPanel::from_matrix but clamps rounding excursions out of
/// [0, 1] first; for matrices produced by mixing valid opinions.
OpinionPanel panel_from_convex_combination(Matrix m);

/// Square row-stochastic matrix of peer weights.
class WeightMatrix {
public:
    explicit WeightMatrix(Matrix entries);

    std::size_t n() const noexcept { return entries_.rows(); }
    double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
    std::span<const double> row(std::size_t i) const { return entries_.row(i); }
    const Matrix& entries() const noexcept { return entries_; }

    bool operator==(const WeightMatrix&) const = default;

private:
    Matrix entries_;
};

bool is_row_stochastic(const Matrix& m, double tolerance = kStochasticTolerance);

/// Checks that w is a probability vector of length n. Throws on failure.
void require_probability_vector(std::span<const double> w, std::size_t n, const char* what);

/// Half the maximum L1 distance between two rows. Throws not_stochastic.
double delta(const Matrix& m);
/// Minimum over row pairs of sum_k min(m_ik, m_jk). Throws not_stochastic.
double gamma(const Matrix& m);

inline double delta(const OpinionPanel& p) { return delta(p.matrix()); }
inline double delta(const WeightMatrix& p) { return delta(p.entries()); }
inline double gamma(const OpinionPanel& p) { return gamma(p.matrix()); }
inline double gamma(const WeightMatrix& p) { return gamma(p.entries()); }

}  // namespace copool
