#include "copool/distance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "copool/error.hpp"

namespace copool {

namespace {

void require_same_size(const Opinion& a, const Opinion& b, const char* what) {
    if (a.size() != b.size()) {
        throw Error(Errc::dimension_mismatch, std::string(what) + ": dimensions " +
                                                  std::to_string(a.size()) + " and " +
                                                  std::to_string(b.size()) + " differ");
    }
}

}  // namespace

double rmsd(const Opinion& a, const Opinion& b) {
    require_same_size(a, b, "rmsd");
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(a.size()));
}

double kl_divergence(const Opinion& a, const Opinion& b) {
    require_same_size(a, b, "kl_divergence");
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] == 0.0) continue;
        if (b[k] == 0.0) {
            throw Error(Errc::undefined_divergence,
                        "kl_divergence: outcome " + std::to_string(k) +
                            " has zero reference probability but positive mass");
        }
        sum += a[k] * std::log(a[k] / b[k]);
    }
    // Near-identical arguments can round a hair below zero.
    return std::max(sum, 0.0);
}

}  // namespace copool
