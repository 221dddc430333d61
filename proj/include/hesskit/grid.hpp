#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace hesskit {

/// Radii 0 = r_0 < r_1 < ... < r_M = 1 discretizing the unit interval.
struct RadialGrid {
    std::vector<double> nodes;

    static RadialGrid uniform(std::size_t cells);

    std::size_t cell_count() const { return nodes.empty() ? 0 : nodes.size() - 1; }
    double spacing(std::size_t i) const { return nodes[i + 1] - nodes[i]; }

    /// Empty when well-formed, otherwise one message per violated invariant.
    std::vector<std::string> validate() const;
};

/// Sampled radial profile u(r) on a RadialGrid together with its slope u'(r).
/// Well-formed profiles have u <= 0, u(1) = 0, u' >= 0 and u'(0) = 0; use
/// validate() to check data coming from outside the library.
struct RadialProfile {
    RadialGrid grid;
    std::vector<double> values;
    std::vector<double> slopes;

    std::size_t size() const { return values.size(); }

    /// Cubic Hermite evaluation between nodes.
    double value_at(double r) const;
    /// Derivative of the same Hermite interpolant.
    double slope_at(double r) const;

    /// Second derivative estimate at node i from the value samples:
    /// centered 3-point divided differences, one-sided at the endpoints.
    /// Exact for quadratic data, O(h^2) otherwise.
    double second_difference(std::size_t i) const;

    std::vector<std::string> validate() const;

    bool is_zero() const;
};

/// u(r) = (r^2 + eps)^(1/2) - (1 + eps)^(1/2), the smooth convex
/// regularization of the cone r - 1; slopes stored analytically.
/// Throws std::invalid_argument for eps <= 0.
RadialProfile smoothed_cone(double epsilon, const RadialGrid& grid);

/// u(r) = (r^2 - 1)/2; the profile with identity Hessian.
RadialProfile quadratic_profile(const RadialGrid& grid);

/// u(r) = r - 1 sampled directly (slope 0 pinned at r = 0).  Borderline
/// test profile; not admissible at the origin node.
RadialProfile cone_profile(const RadialGrid& grid);

} // namespace hesskit
