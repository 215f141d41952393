#pragma once

#include <boost/container/static_vector.hpp>

#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>

namespace susp {

/// Phase-space dimension cap: the generic code paths support d <= 4 degrees
/// of freedom, i.e. states of length 2d <= 8.
inline constexpr std::size_t kMaxDim = 8;

/// Stack-allocated vector for states and section points.  All hot loops
/// (quadrature nodes, Newton iterations, integrator stages) run on these,
/// so no heap traffic occurs per evaluation.
using Vec = boost::container::static_vector<double, kMaxDim>;

inline Vec zeros(std::size_t n) {
    Vec v;
    v.resize(n, 0.0);
    return v;
}

inline Vec add(const Vec& a, const Vec& b) {
    assert(a.size() == b.size());
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    assert(a.size() == b.size());
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline Vec scale(const Vec& a, double s) {
    Vec r = a;
    for (double& x : r) x *= s;
    return r;
}

inline double dot(const Vec& a, const Vec& b) {
    assert(a.size() == b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(const Vec& a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

/// Standard symplectic rotation on R^{2m} with coordinates (x_1..x_m,
/// y_1..y_m): J(x, y) = (y, -x).
inline Vec apply_J(const Vec& z) {
    assert(z.size() % 2 == 0);
    const std::size_t m = z.size() / 2;
    Vec r = zeros(z.size());
    for (std::size_t i = 0; i < m; ++i) {
        r[i] = z[m + i];
        r[m + i] = -z[i];
    }
    return r;
}

/// Inverse of apply_J (equals -J since J^2 = -id).
inline Vec apply_J_inv(const Vec& z) {
    assert(z.size() % 2 == 0);
    const std::size_t m = z.size() / 2;
    Vec r = zeros(z.size());
    for (std::size_t i = 0; i < m; ++i) {
        r[i] = -z[m + i];
        r[m + i] = z[i];
    }
    return r;
}

/// Dense row-major matrix with the same fixed capacity as Vec.  Large
/// enough for Jacobians of section maps (up to 6x6) and suspended fields
/// (up to 8x8).
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
        assert(rows <= kMaxDim && cols <= kMaxDim);
        data_.fill(0.0);
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    double operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    Vec apply(const Vec& v) const {
        assert(v.size() == cols_);
        Vec r = zeros(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
            r[i] = s;
        }
        return r;
    }

    Mat multiply(const Mat& other) const {
        assert(cols_ == other.rows_);
        Mat r(rows_, other.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const double a = (*this)(i, k);
                if (a == 0.0) continue;
                for (std::size_t j = 0; j < other.cols_; ++j) r(i, j) += a * other(k, j);
            }
        return r;
    }

    Mat transposed() const {
        Mat r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    double max_abs() const {
        double m = 0.0;
        for (std::size_t i = 0; i < rows_ * cols_; ++i) m = std::max(m, std::abs(data_[i]));
        return m;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::array<double, kMaxDim * kMaxDim> data_{};
};

/// Symplectic form matrix J on R^{2m}.
inline Mat symplectic_J(std::size_t two_m) {
    assert(two_m % 2 == 0);
    const std::size_t m = two_m / 2;
    Mat j(two_m, two_m);
    for (std::size_t i = 0; i < m; ++i) {
        j(i, m + i) = 1.0;
        j(m + i, i) = -1.0;
    }
    return j;
}

/// Solves A x = b by Gaussian elimination with partial pivoting.  The
/// systems here are tiny (n <= 8), so a dense in-place solve is both the
/// simplest and the fastest option.
bool solve_linear(Mat a, Vec b, Vec& x);

} // namespace susp
