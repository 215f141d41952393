#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "susp/errors.hpp"
#include "susp/faa_di_bruno.hpp"

using namespace susp;

namespace {

// Independent oracle #1: enumerate the set partitions of {1..r} outright
// and histogram their block-size profiles.  The table's coefficients must
// reproduce these counts exactly.
void enumerate_partitions(int r, int next, std::vector<int>& block_sizes,
                          std::map<std::vector<int>, std::int64_t>& histogram) {
    if (next == r) {
        std::vector<int> profile(r, 0);
        for (int s : block_sizes) profile[s - 1] += 1;
        histogram[profile] += 1;
        return;
    }
    for (std::size_t b = 0; b < block_sizes.size(); ++b) {
        block_sizes[b] += 1;
        enumerate_partitions(r, next + 1, block_sizes, histogram);
        block_sizes[b] -= 1;
    }
    block_sizes.push_back(1);
    enumerate_partitions(r, next + 1, block_sizes, histogram);
    block_sizes.pop_back();
}

std::map<std::vector<int>, std::int64_t> partition_histogram(int r) {
    std::map<std::vector<int>, std::int64_t> histogram;
    std::vector<int> block_sizes;
    enumerate_partitions(r, 0, block_sizes, histogram);
    return histogram;
}

// Independent oracle #2: truncated power series.  Derivatives of
// exp(sin t) at t = 0 computed by composing the series directly, with no
// combinatorics involved.
constexpr int kSeriesLen = 9;
using Series = std::array<double, kSeriesLen>;

Series series_multiply(const Series& a, const Series& b) {
    Series out{};
    for (int i = 0; i < kSeriesLen; ++i)
        for (int j = 0; i + j < kSeriesLen; ++j) out[i + j] += a[i] * b[j];
    return out;
}

Series sin_series() {
    Series s{};
    s[1] = 1.0;
    s[3] = -1.0 / 6.0;
    s[5] = 1.0 / 120.0;
    s[7] = -1.0 / 5040.0;
    return s;
}

Series exp_of(const Series& s) {
    Series out{};
    out[0] = 1.0;
    Series power{};
    power[0] = 1.0;
    double factorial = 1.0;
    for (int n = 1; n < kSeriesLen; ++n) {
        power = series_multiply(power, s);
        factorial *= n;
        for (int i = 0; i < kSeriesLen; ++i) out[i] += power[i] / factorial;
    }
    return out;
}

} // namespace

TEST_CASE("coefficients match a direct set-partition enumeration") {
    for (int r = 1; r <= 6; ++r) {
        std::map<std::vector<int>, std::int64_t> expected = partition_histogram(r);
        std::vector<ChainRuleTerm> table = faa_di_bruno_table(r);
        REQUIRE(table.size() == expected.size());
        for (const ChainRuleTerm& term : table) {
            auto it = expected.find(term.multiplicities);
            REQUIRE(it != expected.end());
            CHECK(term.coefficient == it->second);
        }
    }
}

TEST_CASE("bell numbers and coefficient sums agree") {
    const std::int64_t known[] = {1, 2, 5, 15, 52, 203, 877, 4140};
    for (int r = 1; r <= 8; ++r) {
        CHECK(bell_number(r) == known[r - 1]);
        std::int64_t sum = 0;
        for (const ChainRuleTerm& term : faa_di_bruno_table(r)) sum += term.coefficient;
        CHECK(sum == known[r - 1]);
    }
}

TEST_CASE("every term satisfies the order constraint, sorted and unique") {
    for (int r = 1; r <= 8; ++r) {
        std::vector<ChainRuleTerm> table = faa_di_bruno_table(r);
        std::vector<std::vector<int>> keys;
        for (const ChainRuleTerm& term : table) {
            REQUIRE(term.multiplicities.size() == static_cast<std::size_t>(r));
            int weighted = 0;
            for (int i = 0; i < r; ++i) weighted += (i + 1) * term.multiplicities[i];
            CHECK(weighted == r);
            CHECK(term.coefficient > 0);
            keys.push_back(term.multiplicities);
        }
        CHECK(std::is_sorted(keys.begin(), keys.end()));
        CHECK(std::adjacent_find(keys.begin(), keys.end()) == keys.end());
    }
}

TEST_CASE("small tables frozen by hand") {
    std::vector<ChainRuleTerm> t3 = faa_di_bruno_table(3);
    REQUIRE(t3.size() == 3);
    // profiles of the partitions of {1,2,3}: three singletons, one pair plus
    // a singleton (three ways), one triple
    std::map<std::vector<int>, std::int64_t> got;
    for (const ChainRuleTerm& term : t3) got[term.multiplicities] = term.coefficient;
    CHECK(got[{3, 0, 0}] == 1);
    CHECK(got[{1, 1, 0}] == 3);
    CHECK(got[{0, 0, 1}] == 1);

    std::vector<ChainRuleTerm> t4 = faa_di_bruno_table(4);
    REQUIRE(t4.size() == 5);
    got.clear();
    for (const ChainRuleTerm& term : t4) got[term.multiplicities] = term.coefficient;
    CHECK(got[{4, 0, 0, 0}] == 1);
    CHECK(got[{2, 1, 0, 0}] == 6);
    CHECK(got[{0, 2, 0, 0}] == 3);
    CHECK(got[{1, 0, 1, 0}] == 4);
    CHECK(got[{0, 0, 0, 1}] == 1);
}

TEST_CASE("chain rule reproduces series-composition derivatives") {
    // d^r/dt^r exp(sin t) at t = 0 two ways: via the table (set-partition
    // combinatorics) and via truncated power series composition.
    Series composed = exp_of(sin_series());
    Series g = sin_series();
    // the table terms pair with plain derivatives: g^(i)(0) = i! * g[i]
    std::array<double, kSeriesLen> gd{};
    double fact = 1.0;
    for (int i = 1; i < kSeriesLen; ++i) {
        fact *= i;
        gd[i] = g[i] * fact;
    }
    double factorial = 1.0;
    for (int r = 1; r <= 8; ++r) {
        factorial *= r;
        double via_table = 0.0;
        for (const ChainRuleTerm& term : faa_di_bruno_table(r)) {
            // f = exp, so every f^(m)(g(0)) = 1
            double product = 1.0;
            for (int i = 0; i < r; ++i)
                for (int k = 0; k < term.multiplicities[i]; ++k) product *= gd[i + 1];
            via_table += static_cast<double>(term.coefficient) * product;
        }
        double via_series = composed[r] * factorial;
        CHECK(std::abs(via_table - via_series) < 1e-12 * std::max(1.0, std::abs(via_series)));
    }
}

TEST_CASE("orders outside 1..8 are rejected") {
    CHECK_THROWS_AS(faa_di_bruno_table(0), UnsupportedOrderError);
    CHECK_THROWS_AS(faa_di_bruno_table(9), UnsupportedOrderError);
    CHECK_THROWS_AS(bell_number(0), UnsupportedOrderError);
    CHECK_THROWS_AS(bell_number(9), UnsupportedOrderError);
}
