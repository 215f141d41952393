#include "susp/quadrature.hpp"

#include "susp/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace susp {
namespace {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
void legendre(std::size_t n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    if (n == 0) {
        p = p0;
        dp = 0.0;
        return;
    }
    for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

QuadratureRule build_rule(std::size_t n) {
    if (n == 0) throw Error("gauss_legendre", "node count must be positive");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        // Chebyshev initial guess on (-1, 1).
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double p = 0.0, dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            legendre(n, x, p, dp);
            const double dx = -p / dp;
            x += dx;
            if (std::abs(dx) < 1e-15) break;
        }
        legendre(n, x, p, dp);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Map from [-1, 1] to [0, 1]; keep nodes ascending.
        rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
        rule.nodes[i] = 0.5 * (1.0 - x);
        rule.weights[n - 1 - i] = 0.5 * w;
        rule.weights[i] = 0.5 * w;
    }
    return rule;
}

} // namespace

const QuadratureRule& gauss_legendre(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, QuadratureRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

} // namespace susp
