#include "copool/matrix.hpp"

#include <string>

#include "copool/error.hpp"
#include "copool/kernels.hpp"

namespace copool {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) {
        throw Error(Errc::dimension_mismatch,
                    "matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                        std::to_string(rows * cols));
    }
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    std::vector<double> data;
    data.reserve(rows.size() * cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw Error(Errc::dimension_mismatch, "row " + std::to_string(r) + " has " +
                                                      std::to_string(rows[r].size()) +
                                                      " columns, expected " + std::to_string(cols));
        }
        data.insert(data.end(), rows[r].begin(), rows[r].end());
    }
    return Matrix(rows.size(), cols, std::move(data));
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw Error(Errc::dimension_mismatch,
                    "cannot multiply " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                        " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    Matrix out(a.rows(), b.cols());
    kernels::parallel::apply_weights(a, b, out);
    return out;
}

}  // namespace copool
