#pragma once

#include <cstddef>
#include <vector>

namespace susp {

/// Gauss-Legendre rule mapped to [0, 1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Returns the n-point Gauss-Legendre rule on [0, 1].  Nodes are found by
/// Newton iteration on P_n starting from the Chebyshev approximation; the
/// rules for a given n are computed once and cached.
const QuadratureRule& gauss_legendre(std::size_t n);

/// Integrates f over [0, 1] with the n-point rule.
template <typename F>
double integrate_01(const F& f, std::size_t n) {
    const QuadratureRule& rule = gauss_legendre(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(rule.nodes[i]);
    return sum;
}

} // namespace susp
