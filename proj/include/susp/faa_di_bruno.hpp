#pragma once

#include <cstdint>
#include <vector>

namespace susp {

/// One term of the higher-order chain rule for d^r/dt^r f(g(t)): the
/// multiplicity vector k = (k_1, ..., k_r) with sum(i * k_i) = r selects the
/// product f^(k_1+...+k_r) * prod_i (g^(i))^{k_i} with plain derivatives of
/// g; `coefficient` counts the set partitions of {1..r} whose block-size
/// profile is k, namely r! / (k_1! ... k_r! * (1!)^{k_1} ... (r!)^{k_r}).
struct ChainRuleTerm {
    std::vector<int> multiplicities;
    std::int64_t coefficient = 0;
};

/// All terms for derivative order r (1 <= r <= 8), in lexicographic order
/// of the multiplicity vector.  Coefficients are exact: 64-bit integer
/// arithmetic covers r <= 8 with room to spare.
std::vector<ChainRuleTerm> faa_di_bruno_table(int r);

/// Sum of the coefficients for order r: the number of set partitions of an
/// r-element set.
std::int64_t bell_number(int r);

} // namespace susp
