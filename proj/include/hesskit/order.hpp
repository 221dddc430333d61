#pragma once

#include <stdexcept>
#include <string>

namespace hesskit {

/// Index pair (k, n) of the k-Hessian eigenvalue problem on the unit ball
/// of R^n.  k = 1 is the Laplacian, k = n the Monge-Ampere operator.
struct HessianOrder {
    int k = 1;
    int n = 2;

    HessianOrder() = default;
    HessianOrder(int k_, int n_) : k(k_), n(n_) {
        if (n < 2)
            throw std::invalid_argument("HessianOrder: need n >= 2, got n=" + std::to_string(n));
        if (k < 1 || k > n)
            throw std::invalid_argument("HessianOrder: need 1 <= k <= n, got k=" +
                                        std::to_string(k) + ", n=" + std::to_string(n));
    }

    bool operator==(const HessianOrder&) const = default;
};

} // namespace hesskit
