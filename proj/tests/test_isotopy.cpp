#include <doctest.h>

#include <cmath>

#include "susp/errors.hpp"
#include "susp/isotopy.hpp"

using namespace susp;

namespace {

IsotopyFamily cubic_family(double eps = 0.05) { return IsotopyFamily(make_cubic(2, eps)); }

// Max entry of Dg^T J Dg - J with Dg from central differences; zero for a
// symplectic map.
double symplectic_defect(const IsotopyFamily& iso, double alpha, const Vec& z, double h) {
    auto g = [&iso, alpha](const Vec& p) { return iso.eval(alpha, p); };
    Mat dg = fd_jacobian(g, z, h);
    Mat form = dg.transposed().multiply(symplectic_J(z.size()).multiply(dg));
    Mat ref = symplectic_J(z.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < form.rows(); ++i)
        for (std::size_t j = 0; j < form.cols(); ++j)
            worst = std::max(worst, std::abs(form(i, j) - ref(i, j)));
    return worst;
}

} // namespace

TEST_CASE("construction enforces the contraction margin") {
    CHECK_THROWS_AS(IsotopyFamily(make_linear_shear(2, 0.55)), ContractionViolationError);
    CHECK_NOTHROW(IsotopyFamily(make_linear_shear(2, 0.45)));
}

TEST_CASE("identity end is exact, endpoint end is frozen") {
    IsotopyFamily iso = cubic_family();
    Vec z{0.3, -0.2};
    CHECK(norm_inf(sub(iso.eval(0.0, z), z)) == 0.0);
    CHECK(norm_inf(sub(iso.eval(-2.0, z), z)) == 0.0);

    Vec end = iso.eval(iso.xi(), z);
    Vec endpoint = map_from_generator(iso.perturbation(), z);
    CHECK(norm_inf(sub(end, endpoint)) < 1e-12);
    // past xi the rise profile is exactly 1, so the image is bitwise stable
    Vec later = iso.eval(0.75, z);
    Vec muchlater = iso.eval(10.0, z);
    CHECK(norm_inf(sub(later, end)) == 0.0);
    CHECK(norm_inf(sub(muchlater, end)) == 0.0);
}

TEST_CASE("rise accessor matches profile semantics") {
    IsotopyFamily iso = cubic_family();
    CHECK(iso.ell(0.0) == 0.0);
    CHECK(iso.ell(iso.xi()) == 1.0);
    CHECK(iso.ell(0.25) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(iso.ell(-0.3, 1) == 0.0);
    CHECK(iso.ell(0.8, 1) == 0.0);
    CHECK(iso.ell(0.25, 1) > 0.0);
}

TEST_CASE("inverse really inverts, both ways") {
    IsotopyFamily iso = cubic_family();
    for (double alpha : {0.1, 0.25, 0.4, 1.0}) {
        for (const Vec& z : {Vec{0.3, -0.2}, Vec{-0.45, 0.1}, Vec{0.05, 0.48}}) {
            Vec round = iso.inverse(alpha, iso.eval(alpha, z));
            CHECK(norm_inf(sub(round, z)) < 1e-12);
            Vec round2 = iso.eval(alpha, iso.inverse(alpha, z));
            CHECK(norm_inf(sub(round2, z)) < 1e-12);
        }
    }
}

TEST_CASE("shear slices have the closed form at every alpha") {
    const double eps = 0.1;
    IsotopyFamily iso(make_linear_shear(2, eps));
    for (double alpha : {0.1, 0.2, 0.35, 0.5}) {
        const double l = iso.ell(alpha);
        for (const Vec& z : {Vec{1.0, 1.0}, Vec{-0.3, 0.8}}) {
            Vec image = iso.eval(alpha, z);
            CHECK(std::abs(image[0] - z[0] / (1.0 + l * eps)) < 1e-13);
            CHECK(std::abs(image[1] - z[1] * (1.0 + l * eps)) < 1e-13);
        }
    }
}

TEST_CASE("velocity matches an alpha finite difference") {
    IsotopyFamily iso = cubic_family();
    const double h = 1e-6;
    for (double alpha : {0.12, 0.25, 0.38}) {
        for (const Vec& z : {Vec{0.3, -0.2}, Vec{-0.1, 0.42}}) {
            Vec fd = scale(sub(iso.eval(alpha + h, z), iso.eval(alpha - h, z)), 1.0 / (2.0 * h));
            Vec v = iso.velocity(alpha, z);
            CHECK(norm_inf(sub(fd, v)) < 5e-8);
        }
    }
}

TEST_CASE("velocity and field vanish exactly where the rise is flat") {
    IsotopyFamily iso = cubic_family();
    Vec z{0.3, -0.2};
    CHECK(norm_inf(iso.velocity(-0.1, z)) == 0.0);
    CHECK(norm_inf(iso.velocity(0.7, z)) == 0.0);
    CHECK(norm_inf(iso.field(-0.1, z)) == 0.0);
    CHECK(norm_inf(iso.field(0.9, z)) == 0.0);
}

TEST_CASE("field is the velocity seen from the moving slice") {
    IsotopyFamily iso = cubic_family();
    for (double alpha : {0.15, 0.3}) {
        for (const Vec& z : {Vec{0.25, 0.1}, Vec{-0.35, -0.15}}) {
            Vec lhs = iso.field(alpha, iso.eval(alpha, z));
            Vec rhs = iso.velocity(alpha, z);
            CHECK(norm_inf(sub(lhs, rhs)) < 1e-11);
        }
    }
}

TEST_CASE("shear field closed form") {
    const double eps = 0.1;
    IsotopyFamily iso(make_linear_shear(2, eps));
    for (double alpha : {0.15, 0.3, 0.45}) {
        const double l = iso.ell(alpha);
        const double lp = iso.ell(alpha, 1);
        const double factor = lp * eps / (1.0 + l * eps);
        for (const Vec& z : {Vec{0.7, -0.4}, Vec{-0.2, 0.9}}) {
            Vec x = iso.field(alpha, z);
            CHECK(std::abs(x[0] - (-factor * z[0])) < 1e-12);
            CHECK(std::abs(x[1] - factor * z[1]) < 1e-12);
        }
    }
}

TEST_CASE("every slice is symplectic to finite-difference accuracy") {
    IsotopyFamily iso = cubic_family();
    for (double alpha : {0.1, 0.25, 0.4, 1.0}) {
        for (const Vec& z : {Vec{0.3, -0.2}, Vec{-0.15, 0.33}, Vec{0.42, 0.4}}) {
            CHECK(symplectic_defect(iso, alpha, z, 1e-5) < 1e-6);
        }
    }
}

TEST_CASE("compact support passes through the isotopy") {
    IsotopyFamily iso = cubic_family();
    Vec z{1.1, 0.4}; // outside the unit ball
    for (double alpha : {0.2, 0.5}) {
        CHECK(norm_inf(sub(iso.eval(alpha, z), z)) == 0.0);
        CHECK(norm_inf(iso.field(alpha, z)) == 0.0);
    }
}

TEST_CASE("higher-dimensional slices stay consistent") {
    IsotopyFamily iso(make_cubic(3, 0.04));
    Vec z{0.2, -0.1, 0.15, 0.25};
    Vec round = iso.inverse(0.3, iso.eval(0.3, z));
    CHECK(norm_inf(sub(round, z)) < 1e-12);
    CHECK(symplectic_defect(iso, 0.3, z, 1e-5) < 1e-6);
}
