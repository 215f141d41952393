#include "susp/faa_di_bruno.hpp"

#include "susp/errors.hpp"

namespace susp {
namespace {

std::int64_t factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t p = 1;
    for (int i = 0; i < exp; ++i) p *= base;
    return p;
}

void enumerate(int r, int part, int remaining, std::vector<int>& k,
               std::vector<ChainRuleTerm>& out) {
    if (part > r) {
        if (remaining == 0) {
            std::int64_t denom = 1;
            for (int i = 1; i <= r; ++i) denom *= factorial(k[i - 1]) * ipow(factorial(i), k[i - 1]);
            out.push_back({k, factorial(r) / denom});
        }
        return;
    }
    for (int count = 0; count * part <= remaining; ++count) {
        k[part - 1] = count;
        enumerate(r, part + 1, remaining - count * part, k, out);
    }
    k[part - 1] = 0;
}

} // namespace

std::vector<ChainRuleTerm> faa_di_bruno_table(int r) {
    if (r < 1 || r > 8)
        throw UnsupportedOrderError("faa_di_bruno_table", "order must be in 1..8");
    std::vector<ChainRuleTerm> out;
    std::vector<int> k(r, 0);
    enumerate(r, 1, r, k, out);
    return out;
}

std::int64_t bell_number(int r) {
    std::int64_t sum = 0;
    for (const ChainRuleTerm& term : faa_di_bruno_table(r)) sum += term.coefficient;
    return sum;
}

} // namespace susp
