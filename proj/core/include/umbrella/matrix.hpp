#pragma once

#include <array>
#include <stdexcept>

#include "umbrella/rational.hpp"

namespace umbrella {

template <class T, int N>
struct Mat {
    std::array<std::array<T, N>, N> a{};

    static Mat identity() {
        Mat m;
        for (int i = 0; i < N; ++i) m.a[i][i] = T(1);
        return m;
    }
    static Mat zero() { return Mat{}; }

    T& operator()(int i, int j) { return a[i][j]; }
    const T& operator()(int i, int j) const { return a[i][j]; }

    friend Mat operator*(const Mat& x, const Mat& y) {
        Mat r;
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) {
                if (x.a[i][k] == T(0)) continue;
                for (int j = 0; j < N; ++j) r.a[i][j] += x.a[i][k] * y.a[k][j];
            }
        return r;
    }
    friend Mat operator+(const Mat& x, const Mat& y) {
        Mat r;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) r.a[i][j] = x.a[i][j] + y.a[i][j];
        return r;
    }
    friend Mat operator-(const Mat& x, const Mat& y) {
        Mat r;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) r.a[i][j] = x.a[i][j] - y.a[i][j];
        return r;
    }
    friend bool operator==(const Mat& x, const Mat& y) { return x.a == y.a; }

    Mat transpose() const {
        Mat r;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) r.a[i][j] = a[j][i];
        return r;
    }
};

using Mat2Q = Mat<Rational, 2>;
using Mat4Q = Mat<Rational, 4>;
using Mat2D = Mat<double, 2>;
using Mat4D = Mat<double, 4>;

inline Rational det2(const Mat2Q& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

inline Mat2Q inverse2(const Mat2Q& m) {
    Rational d = det2(m);
    if (d.is_zero()) throw std::domain_error("singular 2x2 matrix");
    Mat2Q r;
    r(0, 0) = m(1, 1) / d;
    r(0, 1) = -m(0, 1) / d;
    r(1, 0) = -m(1, 0) / d;
    r(1, 1) = m(0, 0) / d;
    return r;
}

/// Gauss-Jordan inverse over the rationals.
template <int N>
Mat<Rational, N> inverse(const Mat<Rational, N>& m) {
    Mat<Rational, N> a = m, inv = Mat<Rational, N>::identity();
    for (int col = 0; col < N; ++col) {
        int piv = -1;
        for (int r = col; r < N; ++r)
            if (!a(r, col).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::domain_error("singular matrix");
        std::swap(a.a[col], a.a[piv]);
        std::swap(inv.a[col], inv.a[piv]);
        Rational p = a(col, col);
        for (int j = 0; j < N; ++j) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (int r = 0; r < N; ++r) {
            if (r == col || a(r, col).is_zero()) continue;
            Rational f = a(r, col);
            for (int j = 0; j < N; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

template <int N>
Mat<double, N> to_double(const Mat<Rational, N>& m) {
    Mat<double, N> r;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) r(i, j) = m(i, j).to_double();
    return r;
}

}  // namespace umbrella
