#pragma once

#include "svo/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace svo {

using Vec = std::vector<Rational>;
using Matrix = std::vector<Vec>;

namespace detail {

// Splitmix64 step; the deterministic randomness source for every seeded
// sampler in the project.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rational dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("add: length mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("sub: length mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scale(const Rational& t, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = t * a[i];
    return r;
}

inline Vec neg(const Vec& a) { return scale(Rational(-1), a); }

inline bool is_zero(const Vec& a) {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

inline Vec zero_vec(std::size_t n) { return Vec(n); }

inline int lex_compare(const Vec& a, const Vec& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] < b[i]) return -1;
        if (b[i] < a[i]) return 1;
    }
    if (a.size() < b.size()) return -1;
    if (b.size() < a.size()) return 1;
    return 0;
}

inline std::string vec_str(const Vec& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ", ";
        s += a[i].str();
    }
    s += ")";
    return s;
}

inline Vec concat(const Vec& a, const Vec& b) {
    Vec r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

// Fraction-free style Gaussian elimination on exact rationals. These helpers
// back cone validation (simplicial inverses, rank checks) and the test-side
// brute-force LP oracle.

inline std::size_t matrix_rank(Matrix m) {
    const std::size_t rows = m.size();
    if (rows == 0) return 0;
    const std::size_t cols = m[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        const Rational inv = Rational(1) / m[rank][col];
        for (std::size_t j = col; j < cols; ++j) m[rank][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][col].is_zero()) continue;
            const Rational f = m[i][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

// Solves the square system M x = rhs; nullopt when M is singular.
inline std::optional<Vec> solve_square(Matrix m, Vec rhs) {
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i)
        if (m[i].size() != n) throw DimensionMismatch("solve_square: not square");
    if (rhs.size() != n) throw DimensionMismatch("solve_square: rhs length");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero()) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        const Rational inv = Rational(1) / m[col][col];
        for (std::size_t j = col; j < n; ++j) m[col][j] *= inv;
        rhs[col] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col].is_zero()) continue;
            const Rational f = m[i][col];
            for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
            rhs[i] -= f * rhs[col];
        }
    }
    return rhs;
}

// Inverse of a square matrix; nullopt when singular.
inline std::optional<Matrix> invert(const Matrix& m) {
    const std::size_t n = m.size();
    Matrix work = m;
    Matrix inv(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw DimensionMismatch("invert: not square");
        inv[i][i] = Rational(1);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && work[pivot][col].is_zero()) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(work[col], work[pivot]);
        std::swap(inv[col], inv[pivot]);
        const Rational f = Rational(1) / work[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            work[col][j] *= f;
            inv[col][j] *= f;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || work[i][col].is_zero()) continue;
            const Rational g = work[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                work[i][j] -= g * work[col][j];
                inv[i][j] -= g * inv[col][j];
            }
        }
    }
    return inv;
}

}  // namespace svo
