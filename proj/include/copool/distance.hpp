#pragma once

#include "copool/opinion.hpp"

namespace copool {

/// Root-mean-square deviation sqrt(sum_k (a_k - b_k)^2 / z). A metric on
/// opinions; bounded above by sqrt(2 / z).
double rmsd(const Opinion& a, const Opinion& b);

/// Kullback-Leibler divergence sum_k a_k ln(a_k / b_k) in nats, with
/// 0 ln(0 / b) = 0. Throws undefined_divergence if a_k > 0 where b_k = 0.
double kl_divergence(const Opinion& a, const Opinion& b);

}  // namespace copool
