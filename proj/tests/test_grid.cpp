#include <doctest.h>

#include <cmath>
#include <set>

#include "susp/errors.hpp"
#include "susp/grid.hpp"

using namespace susp;

TEST_CASE("grid points fill the ball and stay inside it") {
    GridDomain dom = make_grid(2, Vec{0.0, 0.0}, 1.0, 11);
    std::vector<Vec> pts = grid_points(dom);
    // 11x11 lattice on the bounding square, minus the corners outside the ball
    CHECK(pts.size() > 60);
    CHECK(pts.size() < 121);
    for (const Vec& p : pts) {
        CHECK(norm2(p) <= 1.0 + 1e-12);
    }
    // lattice includes the center and the axis extremes
    bool has_center = false, has_right = false;
    for (const Vec& p : pts) {
        if (norm2(p) == 0.0) has_center = true;
        if (std::abs(p[0] - 1.0) < 1e-14 && std::abs(p[1]) < 1e-14) has_right = true;
    }
    CHECK(has_center);
    CHECK(has_right);
}

TEST_CASE("grid respects an off-origin center") {
    GridDomain dom = make_grid(2, Vec{2.0, -1.0}, 0.5, 5);
    for (const Vec& p : grid_points(dom)) {
        CHECK(norm2(sub(p, Vec{2.0, -1.0})) <= 0.5 + 1e-12);
    }
}

TEST_CASE("C^0 norm picks the max over the ball") {
    GridDomain dom = make_grid(2, Vec{0.0, 0.0}, 1.0, 21);
    double n0 = cs_norm_scalar([](const Vec& p) { return p[0] * p[0] + p[1] * p[1]; }, dom, 0);
    CHECK(n0 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("C^1 norm of a linear map is its largest coefficient") {
    GridDomain dom = make_grid(2, Vec{0.0, 0.0}, 1.0, 11);
    auto f = [](const Vec& p) { return Vec{3.0 * p[0] - p[1], 0.5 * p[1]}; };
    // componentwise sup|f| on the lattice is 3.0, at (1,0) and (0.8,-0.6);
    // the first partials are 3 everywhere, so both contributions agree and
    // central differences of a linear map carry no truncation error.
    double n1 = cs_norm(f, dom, 1);
    CHECK(n1 == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("C^2 norm sees pure second derivatives and cross terms") {
    GridDomain dom = make_grid(2, Vec{0.0, 0.0}, 1.0, 11);
    // f = 4*x*y: sup|f| = 2, first partials up to 4, d2/dxdy = 4 everywhere
    double n2 = cs_norm_scalar([](const Vec& p) { return 4.0 * p[0] * p[1]; }, dom, 2);
    CHECK(n2 == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("C^3 norm of a cubic is exact for central differences") {
    GridDomain dom = make_grid(1, Vec{0.0}, 1.0, 11);
    // f = x^3: third derivative 6, second 6x (sup 6), first 3x^2 (sup 3)
    double n3 = cs_norm_scalar([](const Vec& p) { return p[0] * p[0] * p[0]; }, dom, 3);
    CHECK(n3 == doctest::Approx(6.0).epsilon(1e-5));
}

TEST_CASE("higher order requests and bad steps are rejected") {
    GridDomain dom = make_grid(2, Vec{0.0, 0.0}, 1.0, 11);
    auto f = [](const Vec& p) { return Vec{p[0]}; };
    CHECK_THROWS_AS(cs_norm(f, dom, 4), ResolutionError);
    CHECK_THROWS_AS(cs_norm(f, dom, -1), ResolutionError);
    GridDomain coarse = make_grid(2, Vec{0.0, 0.0}, 1.0, 11, 0.5);
    CHECK_THROWS_AS(cs_norm(f, coarse, 1), ResolutionError);
}

TEST_CASE("multi indices enumerate every order once") {
    std::vector<std::vector<int>> idx = multi_indices(2, 3);
    // zero index + orders 1..3 over two variables: 1 + 2 + 3 + 4 = 10
    CHECK(idx.size() == 10);
    std::set<std::vector<int>> seen(idx.begin(), idx.end());
    CHECK(seen.size() == idx.size());
    CHECK(idx.front() == std::vector<int>{0, 0});
    for (const auto& sigma : idx) {
        int total = 0;
        for (int k : sigma) total += k;
        CHECK(total <= 3);
    }

    CHECK(multi_indices(3, 2).size() == 10); // 1 + 3 + 6
    CHECK(multi_indices(1, 3).size() == 4);
}

TEST_CASE("norm evaluation is deterministic") {
    GridDomain dom = make_grid(3, Vec{0.1, 0.0, -0.2}, 0.8, 7);
    auto f = [](const Vec& p) { return Vec{std::sin(p[0] * p[1]) + p[2], std::cos(p[2])}; };
    double a = cs_norm(f, dom, 2);
    double b = cs_norm(f, dom, 2);
    CHECK(a == b);
}
