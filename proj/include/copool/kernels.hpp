#pragma once

// Inner loops of the consensual iteration. Every kernel exists twice: a plain
// serial reference and an OpenMP version that splits work by output row. Both
// perform the same per-row arithmetic in the same order, so their results are
// bit-identical; tests rely on that.
//
// Kernels do not validate their inputs. Output buffers must be pre-sized.

#include <cstddef>

#include "copool/matrix.hpp"

namespace copool::kernels {

/// Rows below this count run single-threaded even in the parallel kernels.
inline constexpr std::size_t kParallelRowThreshold = 64;

namespace serial {

/// weights(i, j) = (1 / (epsilon + rmsd(row i, row j))) normalized over j.
void consensual_weights(const Matrix& opinions, double epsilon, Matrix& weights);

/// out = weights * x.
void apply_weights(const Matrix& weights, const Matrix& x, Matrix& out);

/// Half the largest L1 distance between two rows.
double delta(const Matrix& m);

/// Smallest pairwise overlap sum_k min(a_k, b_k) between two rows.
double gamma(const Matrix& m);

}  // namespace serial

namespace parallel {

void consensual_weights(const Matrix& opinions, double epsilon, Matrix& weights);
void apply_weights(const Matrix& weights, const Matrix& x, Matrix& out);
double delta(const Matrix& m);
double gamma(const Matrix& m);

}  // namespace parallel

}  // namespace copool::kernels
