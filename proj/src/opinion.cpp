#include "copool/opinion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "copool/error.hpp"
#include "copool/kernels.hpp"

namespace copool {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

Opinion validate_opinion(std::vector<double> raw) {
    if (raw.size() < 2) {
        throw Error(Errc::dimension_too_small,
                    "opinion needs at least 2 outcomes, got " + std::to_string(raw.size()));
    }
    for (std::size_t k = 0; k < raw.size(); ++k) {
        if (!(raw[k] >= 0.0 && raw[k] <= 1.0)) {
            throw Error(Errc::entry_out_of_range,
                        "entry " + std::to_string(k) + " = " + fmt(raw[k]) + " is outside [0, 1]");
        }
    }
    const double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
    if (std::fabs(sum - 1.0) > kStochasticTolerance) {
        throw Error(Errc::sum_not_one, "entries sum to " + fmt(sum) + ", expected 1");
    }
    return Opinion(std::move(raw));
}

Opinion Opinion::from_convex_combination(std::vector<double> probs) {
    for (double& p : probs) p = std::clamp(p, 0.0, 1.0);
    return validate_opinion(std::move(probs));
}

OpinionPanel::OpinionPanel(const std::vector<Opinion>& opinions) {
    if (opinions.empty()) throw Error(Errc::empty_panel, "opinion panel needs at least one opinion");
    const std::size_t z = opinions.front().size();
    std::vector<double> data;
    data.reserve(opinions.size() * z);
    for (std::size_t i = 0; i < opinions.size(); ++i) {
        if (opinions[i].size() != z) {
            throw Error(Errc::dimension_mismatch, "opinion " + std::to_string(i) + " has " +
                                                      std::to_string(opinions[i].size()) +
                                                      " outcomes, expected " + std::to_string(z));
        }
        data.insert(data.end(), opinions[i].probs().begin(), opinions[i].probs().end());
    }
    matrix_ = Matrix(opinions.size(), z, std::move(data));
}

OpinionPanel OpinionPanel::from_matrix(Matrix m) {
    if (m.rows() == 0) throw Error(Errc::empty_panel, "opinion panel needs at least one opinion");
    for (std::size_t i = 0; i < m.rows(); ++i) {
        try {
            validate_opinion({m.row(i).begin(), m.row(i).end()});
        } catch (const Error& e) {
            throw Error(e.code(), "row " + std::to_string(i) + ": " + e.what());
        }
    }
    return OpinionPanel(std::move(m));
}

OpinionPanel panel_from_convex_combination(Matrix m) {
    for (double& v : m.data()) v = std::clamp(v, 0.0, 1.0);
    return OpinionPanel::from_matrix(std::move(m));
}

Opinion OpinionPanel::opinion(std::size_t i) const {
    return validate_opinion({matrix_.row(i).begin(), matrix_.row(i).end()});
}

std::vector<Opinion> OpinionPanel::opinions() const {
    std::vector<Opinion> out;
    out.reserve(n());
    for (std::size_t i = 0; i < n(); ++i) out.push_back(opinion(i));
    return out;
}

WeightMatrix::WeightMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw Error(Errc::dimension_mismatch, "weight matrix must be square, got " +
                                                  std::to_string(entries_.rows()) + "x" +
                                                  std::to_string(entries_.cols()));
    }
    if (!is_row_stochastic(entries_)) {
        throw Error(Errc::not_stochastic, "weight matrix is not row-stochastic");
    }
}

bool is_row_stochastic(const Matrix& m, double tolerance) {
    if (m.rows() == 0 || m.cols() == 0) return false;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double sum = 0.0;
        for (double v : m.row(i)) {
            if (!(v >= 0.0 && v <= 1.0 + tolerance)) return false;
            sum += v;
        }
        if (std::fabs(sum - 1.0) > tolerance) return false;
    }
    return true;
}

void require_probability_vector(std::span<const double> w, std::size_t n, const char* what) {
    if (w.size() != n) {
        throw Error(Errc::dimension_mismatch, std::string(what) + " has length " +
                                                  std::to_string(w.size()) + ", expected " +
                                                  std::to_string(n));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!(w[i] >= 0.0 && w[i] <= 1.0)) {
            throw Error(Errc::entry_out_of_range, std::string(what) + " entry " + std::to_string(i) +
                                                      " = " + fmt(w[i]) + " is outside [0, 1]");
        }
        sum += w[i];
    }
    if (std::fabs(sum - 1.0) > kStochasticTolerance) {
        throw Error(Errc::sum_not_one, std::string(what) + " sums to " + fmt(sum));
    }
}

double delta(const Matrix& m) {
    if (!is_row_stochastic(m)) throw Error(Errc::not_stochastic, "delta: matrix is not row-stochastic");
    return kernels::parallel::delta(m);
}

double gamma(const Matrix& m) {
    if (!is_row_stochastic(m)) throw Error(Errc::not_stochastic, "gamma: matrix is not row-stochastic");
    return kernels::parallel::gamma(m);
}

}  // namespace copool
