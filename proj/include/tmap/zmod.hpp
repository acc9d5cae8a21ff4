// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace tmap
{
bool is_prime(uint64_t n);

/// Arithmetic modulo a word-sized prime.
struct Zmod
{
    uint32_t m = 2;

    uint32_t add(uint32_t a, uint32_t b) const
    {
        uint64_t s = uint64_t{a} + b;
        return static_cast<uint32_t>(s >= m ? s - m : s);
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + (m - b); }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : m - a; }
    uint32_t mul(uint32_t a, uint32_t b) const
    {
        return static_cast<uint32_t>(uint64_t{a} * b % m);
    }
    uint32_t pow(uint32_t a, uint64_t e) const;
    uint32_t inv(uint32_t a) const;
    uint32_t reduce(int64_t x) const
    {
        int64_t r = x % static_cast<int64_t>(m);
        return static_cast<uint32_t>(r < 0 ? r + m : r);
    }
};

using Vec = std::vector<uint32_t>;

/// Dense row-major matrix over Z/m.
struct Mat
{
    size_t rows = 0, cols = 0;
    std::vector<uint32_t> a;

    Mat() = default;
    Mat(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0) {}

    uint32_t& operator()(size_t i, size_t j) { return a[i * cols + j]; }
    uint32_t operator()(size_t i, size_t j) const { return a[i * cols + j]; }
    bool operator==(const Mat&) const = default;

    static Mat identity(size_t n);
};

Mat mat_mul(const Zmod& z, const Mat& x, const Mat& y);
Mat mat_add(const Zmod& z, const Mat& x, const Mat& y);
Mat mat_scale(const Zmod& z, const Mat& x, uint32_t c);
Vec mat_vec(const Zmod& z, const Mat& x, const Vec& v);
Mat transpose(const Mat& x);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<size_t> rref(const Zmod& z, Mat& x);
size_t rank(const Zmod& z, Mat x);
std::optional<Mat> inverse(const Zmod& z, const Mat& x);
/// Basis of the right kernel {v : x v = 0}.
std::vector<Vec> nullspace(const Zmod& z, const Mat& x);
/// Some solution of x v = b, if one exists.
std::optional<Vec> solve(const Zmod& z, const Mat& x, const Vec& b);
}  // namespace tmap
